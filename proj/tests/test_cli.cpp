#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qcut/cli.hpp"
#include "qcut/demos.hpp"
#include "qcut/error.hpp"
#include "qcut/io.hpp"
#include "support.hpp"

using namespace qcut;
using qcut::testing::Rng;

namespace {

namespace fs = std::filesystem;

const std::string kData = QCUT_TEST_DATA;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "qcut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qcut_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

bool same_cut(const Cut& a, const Cut& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, NormCut>)
          return x.M == y.M && x.m == y.m && x.p == y.p && x.q == y.q && x.h == y.h && x.k == y.k;
        else if constexpr (std::is_same_v<T, QuadraticCut>)
          return x.E == y.E && x.a == y.a && x.f == y.f && x.gamma_t == y.gamma_t;
        else if constexpr (std::is_same_v<T, LinearCut>)
          return x.g == y.g && x.h == y.h && x.k == y.k && x.sense == y.sense;
        else
          return true;
      },
      a);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("cuts survive a JSON round trip") {
    Rng rng(4);
    const Mat M{{1.0 / 3.0, 0.1}, {-2e-17, 7.0}};
    const std::vector<Cut> cuts{
        NormCut{M, Vec{0.1, 1.0 / 7.0}, 2.0, Vec{std::sqrt(3.0) - 2.0, 1e300}, 0.3, -2.0},
        QuadraticCut{M, rng.normal_vec(2), rng.normal(), 1.0 / 3.0},
        LinearCut{rng.normal_vec(3), 0.0, std::acos(-1.0), Sense::GreaterEq},
        LinearCut{Vec{1}, 1.0, 4.0, Sense::LessEq},
        NoCut{},
        EmptyHull{}};
    for (const Cut& c : cuts) {
      const Json j = Json::parse(dump(to_json(c)));
      CHECK(same_cut(cut_from_json(j), c));
    }
    const CutFile file{{cuts[0], CaseLabel::ConeConic}, {{"operation", "test"}}};
    const CutFile back = cut_file_from_json(Json::parse(dump(to_json(file))));
    CHECK(back.result.label == CaseLabel::ConeConic);
    CHECK(back.provenance == file.provenance);
    CHECK(same_cut(back.result.cut, file.result.cut));
  }

  TEST_CASE("instance schema") {
    const Instance inst = instance_from_json(read_json_file(kData + "/paraboloid_general.json"));
    CHECK(inst.body.family == Family::Paraboloid);
    CHECK(inst.split->pi_hat == 0.5);
    const Instance back = instance_from_json(to_json(inst));
    CHECK(back.body.B == inst.body.B);
    CHECK(back.split->pi == inst.split->pi);

    CHECK(code_of([] { instance_from_json(Json::parse(R"({"split": {"pi": [1], "pi0": 0, "pi1": 1}})")); }) ==
          ErrorCode::InvalidInput);
    CHECK(code_of([] { instance_from_json(Json::parse(R"({"body": {"family": "torus", "n": 1}})")); }) ==
          ErrorCode::InvalidInput);
    CHECK(code_of([] {
            instance_from_json(Json::parse(R"({"body": {"family": "cone", "n": 2}, "split": {"pi": [1], "pi0": 0, "pi1": 1}})"));
          }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { instance_from_json(Json::parse(R"({"body": {"family": "cone", "n": 1}})")); }) ==
          ErrorCode::InvalidInput);
    CHECK(code_of([] { cut_from_json(Json::parse(R"({"kind": "norm", "M": [[1]]})")); }) == ErrorCode::InvalidInput);
  }

  TEST_CASE("cut then verify") {
    const fs::path cut = scratch("ellipsoid.cut.json");
    const auto made = call({"cut", "-i", kData + "/ellipsoid_example.json", "-o", cut.string()});
    REQUIRE(made.code == 0);
    const CutFile file = cut_file_from_json(read_json_file(cut.string()));
    CHECK(file.result.label == CaseLabel::EllipsoidProper);
    CHECK(file.provenance["operation"] == "split_cut");

    const auto ok = call({"verify", "-i", kData + "/ellipsoid_example.json", "-c", cut.string(), "--seed", "7", "-n", "2000"});
    CHECK(ok.code == 0);
    CHECK(Json::parse(ok.out)["pass"] == true);

    CutFile weak = file;
    std::get<NormCut>(weak.result.cut).k = 1.9;
    const fs::path bad = scratch("weak.cut.json");
    std::ofstream(bad) << dump(to_json(weak));
    const auto fail = call({"verify", "-i", kData + "/ellipsoid_example.json", "-c", bad.string(), "--seed", "7"});
    CHECK(fail.code == 1);
    CHECK(Json::parse(fail.out)["max_violation"].get<double>() > 0.0);
  }

  TEST_CASE("input errors exit with 2") {
    CHECK(call({"cut", "-i", kData + "/bad_interval.json"}).code == 2);
    CHECK(call({"cut", "-i", kData + "/does_not_exist.json"}).code == 2);
    const fs::path junk = scratch("junk.json");
    std::ofstream(junk) << "{ not json";
    const auto r = call({"cut", "-i", junk.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find('\n') == r.err.size() - 1);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"cut"}).code == 2);
    CHECK(call({"verify", "-i", kData + "/ellipsoid_example.json", "-c", junk.string()}).code == 2);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("outputs are deterministic") {
    const auto a = call({"cut", "-i", kData + "/paraboloid_general.json"});
    const auto b = call({"cut", "-i", kData + "/paraboloid_general.json"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const fs::path cut = scratch("pg.cut.json");
    std::ofstream(cut) << a.out;
    const auto v1 = call({"verify", "-i", kData + "/paraboloid_general.json", "-c", cut.string(), "--seed", "11"});
    const auto v2 = call({"verify", "-i", kData + "/paraboloid_general.json", "-c", cut.string(), "--seed", "11"});
    CHECK(v1.code == 0);
    CHECK(v1.out == v2.out);

    ::setenv("QCUT_SEED", "11", 1);
    const auto v3 = call({"verify", "-i", kData + "/paraboloid_general.json", "-c", cut.string()});
    ::setenv("QCUT_SEED", "seven", 1);
    const auto v4 = call({"verify", "-i", kData + "/paraboloid_general.json", "-c", cut.string()});
    ::unsetenv("QCUT_SEED");
    CHECK(v3.out == v1.out);
    CHECK(v4.code == 2);
  }

  TEST_CASE("oracle subcommand") {
    const auto r = call({"oracle", "-i", kData + "/ellipsoid_example.json", "--grid", "200"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["mismatches"] == 0);
    CHECK(call({"oracle", "-i", kData + "/cone_1d.json", "--grid", "200"}).code == 0);
    CHECK(call({"oracle", "-i", kData + "/svp_ball.json"}).code == 2);
  }

  TEST_CASE("min-max of convex quadratics") {
    const ConvexQuadratic a{Mat{{1}}, Vec{0}, 0.0}, b{Mat{{1}}, Vec{-4}, 4.0};
    const ConvexQuadratic line[] = {a, b};
    CHECK(minimize_max(line, Vec{5}, 10.0).value == doctest::Approx(1.0).epsilon(1e-9));
    const ConvexQuadratic c{Mat::identity(2), Vec{0, 0}, 0.0}, d{Mat::identity(2), Vec{-4, 0}, 4.0};
    const ConvexQuadratic plane[] = {c, d};
    const auto res = minimize_max(plane, Vec{3, 3}, 10.0);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(res.lower <= res.value);
    CHECK(std::abs(res.x[0] - 1.0) < 1e-4);
  }

  TEST_CASE("closest vector demo") {
    const CvpReport half = demo_cvp(Mat::identity(2), Vec{0.5, 0.5});
    REQUIRE(half.per_coordinate.size() == 2);
    for (double b : half.per_coordinate) CHECK(b == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(half.combined >= 0.25 - 1e-9);
    CHECK(half.combined <= 0.5);
    CHECK(half.relaxation == 0.0);

    const CvpReport whole = demo_cvp(Mat::identity(2), Vec{1, -2});
    CHECK(whole.cuts.empty());
    CHECK(whole.combined == 0.0);

    const CvpReport skew = demo_cvp(Mat::diag(Vec{1, 3}), Vec{0.5, 0.5});
    CHECK(skew.per_coordinate[0] == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(skew.per_coordinate[1] == doctest::Approx(2.25).epsilon(1e-8));

    // single split bound: min over the two hyperplanes of the squared distance in the body metric
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
      const std::size_t n = 2 + k % 2;
      const Mat B = rng.matrix(n);
      const Vec c = rng.normal_vec(n, 2.0);
      const CvpReport r = demo_cvp(B, c);
      const Mat binv_t = transpose(inverse(B));
      for (std::size_t i = 0; i < r.coordinates.size(); ++i) {
        const std::size_t j = r.coordinates[i];
        const double nu = norm_sq(binv_t * Vec::unit(n, j));
        const double u0 = std::floor(c[j]) - c[j], u1 = std::ceil(c[j]) - c[j];
        const double expect = std::min(u0 * u0, u1 * u1) / nu;
        CHECK(std::abs(r.per_coordinate[i] - expect) <= 1e-6 * std::max(1.0, expect));
        CHECK(r.combined >= r.per_coordinate[i] - 1e-6);
      }
    }
    CHECK(code_of([] { demo_cvp(Mat{{1, 2}, {2, 4}}, Vec{0.5, 0.5}); }) == ErrorCode::Singular);

    const auto cli = call({"demo", "cvp", "-i", kData + "/lattice_cvp.json"});
    CHECK(cli.code == 0);
    CHECK(Json::parse(cli.out)["combined"].get<double>() == doctest::Approx(0.25).epsilon(1e-8));
  }

  TEST_CASE("shortest vector demo") {
    const SvpReport unit = demo_svp(Mat::identity(2));
    CHECK(unit.futile);
    CHECK(unit.split_cuts > 0);
    CHECK(unit.split_bound == 0.0);
    CHECK(unit.radius == 1.0);
    CHECK(unit.bound == 1.0);

    const SvpReport stretched = demo_svp(Mat::diag(Vec{1, 2}), 1.0);
    CHECK(stretched.futile);
    CHECK(stretched.bound == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(10);
    for (int k = 0; k < 4; ++k) {
      const Mat B = rng.matrix(2 + k % 2);
      const SvpReport r = demo_svp(B);
      CHECK(r.futile);
      CHECK(r.split_bound == doctest::Approx(0.0));
      CHECK(r.bound == doctest::Approx(r.radius * r.radius).epsilon(1e-8));
      CHECK(r.radius == doctest::Approx(std::sqrt(min_eigenvalue(transpose(B) * B))));
    }

    const auto cli = call({"demo", "svp", "-i", kData + "/lattice_svp.json"});
    CHECK(cli.code == 0);
    CHECK(Json::parse(cli.out)["bound"] == 1.0);
  }
}
