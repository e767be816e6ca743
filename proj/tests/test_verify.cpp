#include <cmath>

#include "doctest.h"
#include "qcut/error.hpp"
#include "qcut/splitcuts.hpp"
#include "qcut/verify.hpp"
#include "support.hpp"

using namespace qcut;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

const ConvexBody kDisk = ConvexBody::ellipsoid(Mat::identity(2), Vec{0, 0}, 2.0);
const SplitDisjunction kStrip{Vec{1, 0}, 0.0, 0.0, 1.0};

NormCut disk_cut(double k) { return NormCut{Mat{{0, 0}, {0, 1}}, Vec{0, 0}, 2.0, Vec{std::sqrt(3.0) - 2.0, 0}, 0.0, k}; }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("body sampling") {
    const auto unit = ConvexBody::ellipsoid(Mat::identity(2), Vec{0, 0}, 1.0);
    SampleConfig cfg;
    cfg.seed = 7;
    cfg.count = 100;
    cfg.box = {{-1, 1}, {-1, 1}};
    const auto pts = sample_body(unit, cfg);
    CHECK(pts.size() == 100);
    for (const Point& p : pts) CHECK(norm2(p.x) <= 1.0);
    const auto again = sample_body(unit, cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].x == again[i].x);

    const auto par = ConvexBody::paraboloid(Mat::identity(2), Vec{0, 0});
    cfg.t_cap = 4.0;
    cfg.box = {{-3, 3}, {-3, 3}};
    for (const Point& p : sample_body(par, cfg)) {
      CHECK(norm_sq(p.x) <= p.t + 1e-12);
      CHECK(p.t <= 4.0);
    }

    cfg.box = {{5, 6}, {5, 6}};
    CHECK(code_of([&] { sample_body(unit, cfg); }) == ErrorCode::EmptySample);
  }

  TEST_CASE("validity reports") {
    const Forbidden region = kStrip;
    const auto cfg = default_sample_config(kDisk, &region, 7, 2000);
    const auto good = check_validity(kDisk, region, Cut{disk_cut(2.0)}, cfg);
    CHECK(good.pass);
    CHECK(good.checked >= 1000);
    CHECK(good.max_violation <= 1e-9);

    const auto bad = check_validity(kDisk, region, Cut{disk_cut(1.9)}, cfg);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_violation > 0.05);
    CHECK(bad.max_violation <= 0.1 + 1e-9);

    CHECK(check_validity(kDisk, region, Cut{NoCut{}}, cfg).pass);

    const auto again = check_validity(kDisk, region, Cut{disk_cut(1.9)}, cfg);
    CHECK(again.max_violation == bad.max_violation);
    CHECK(again.worst_point.x == bad.worst_point.x);
  }

  TEST_CASE("forbidden membership") {
    CHECK(in_forbidden_interior(Forbidden{kStrip}, {Vec{0.5, 9}, 0}));
    CHECK_FALSE(in_forbidden_interior(Forbidden{kStrip}, {Vec{1.0, 9}, 0}));
    const QuadraticForbidden ball{Mat::identity(1), Vec{0}, -1.0, 0.0};
    CHECK(in_forbidden_interior(Forbidden{ball}, {Vec{0.5}, 0.0}));
    CHECK_FALSE(in_forbidden_interior(Forbidden{ball}, {Vec{1.0}, 0.0}));
    const EllipsoidExterior ext{Mat::identity(2), Vec{0, 0}, 1.0};
    CHECK(in_forbidden_interior(Forbidden{ext}, {Vec{2, 0}, 0}));
    CHECK_FALSE(in_forbidden_interior(Forbidden{ext}, {Vec{0.5, 0}, 0}));
  }

  TEST_CASE("hull oracle on the disk") {
    const Window w{-2.1, 2.1, -2.1, 2.1};
    const auto oracle = hull_oracle_2d(kDisk, Forbidden{kStrip}, 400, 400, w);
    CHECK_FALSE(oracle.contains(0.5, 1.99));
    CHECK(oracle.contains(0.5, 1.8));
    CHECK(oracle.contains(-1.0, 0.0));
    const double h = 4.2 / 399.0;
    for (const auto& v : oracle.vertices()) {
      CHECK(eval_body(kDisk, {Vec{v[0], v[1]}, 0}) <= 2.0 * h);
      CHECK_FALSE(in_forbidden_interior(Forbidden{kStrip}, {Vec{v[0], v[1]}, 0}));
    }

    const auto full = hull_oracle_2d(kDisk, Forbidden{SplitDisjunction{Vec{1, 0}, 0, 10, 11}}, 200, 200, w);
    CHECK(full.contains(0.0, 1.95));
    CHECK(full.contains(1.3, 1.3));
    CHECK_FALSE(full.contains(1.5, 1.5));

    const auto none = hull_oracle_2d(kDisk, Forbidden{SplitDisjunction{Vec{1, 0}, 0, -3, 3}}, 100, 100, w);
    CHECK(none.empty());
    CHECK_FALSE(none.contains(0, 0));

    const auto ball3 = ConvexBody::ellipsoid(Mat::identity(3), Vec{0, 0, 0}, 1.0);
    CHECK(code_of([&] { hull_oracle_2d(ball3, Forbidden{kStrip}, 10, 10, w); }) == ErrorCode::DimUnsupported);
  }

  TEST_CASE("oracle comparison on the disk") {
    OracleGrid grid{default_window(kDisk)};
    grid.points = 300;
    const auto exact = compare_to_oracle(kDisk, Forbidden{kStrip}, Cut{disk_cut(2.0)}, grid);
    CHECK(exact.mismatches() == 0);
    CHECK(exact.compared == 300 * 300);
    const auto loose = compare_to_oracle(kDisk, Forbidden{kStrip}, Cut{disk_cut(2.2)}, grid);
    CHECK(loose.too_big > 0);
    CHECK(loose.too_small == 0);
    const auto tight = compare_to_oracle(kDisk, Forbidden{kStrip}, Cut{disk_cut(1.8)}, grid);
    CHECK(tight.too_small > 0);
    CHECK(tight.too_big == 0);
  }

  TEST_CASE("oracle comparison on an epigraph") {
    const auto par = ConvexBody::paraboloid(Mat::identity(1), Vec{0});
    const SplitDisjunction s{Vec{1}, 0.0, -0.5, 1.0};
    OracleGrid grid{Window{-2, 2, 0, 4}};
    grid.points = 300;
    grid.margin_left = grid.margin_right = grid.margin_top = 300;
    const auto res = split_cut(par, s);
    CHECK(compare_to_oracle(par, Forbidden{s}, res.cut, grid).mismatches() == 0);
    const auto loose = compare_to_oracle(par, Forbidden{s}, Cut{NoCut{}}, grid);
    CHECK(loose.too_big > 0);
  }
}
