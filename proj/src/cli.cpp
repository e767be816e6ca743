#include "qcut/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcut/demos.hpp"
#include "qcut/error.hpp"
#include "qcut/interscuts.hpp"
#include "qcut/io.hpp"
#include "qcut/splitcuts.hpp"
#include "qcut/verify.hpp"

namespace qcut {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string cut;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 2000;
  std::size_t grid = 300;
  double tol = 1e-7;
  double radius = 0.0;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("QCUT_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidInput, "QCUT_SEED must be an unsigned integer");
  }
  return 1;
}

void emit(const Options& o, const Json& j, std::ostream& out) {
  const std::string text = dump(j);
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + o.output + "'");
  f << text;
}

CutFile make_cut(const Instance& inst) {
  CutFile file;
  if (inst.split) {
    file.result = split_cut(inst.body, *inst.split);
    file.provenance = {{"operation", "split_cut"}, {"parameters", to_json(inst)}};
    return file;
  }
  const auto& f = *inst.forbidden;
  if (inst.body.family != Family::Paraboloid)
    throw Error(ErrorCode::UnsupportedCombination, "quadratic forbidden regions need a paraboloid body");
  file.result = {intersection_cut_quadratic(inst.body.B, inst.body.c, f.A, f.d, f.q, f.gamma),
                 CaseLabel::IntersectionQuadratic};
  file.provenance = {{"operation", "intersection_cut_quadratic"}, {"parameters", to_json(inst)}};
  return file;
}

int do_cut(const Options& o, std::ostream& out) {
  const Instance inst = instance_from_json(read_json_file(o.input));
  emit(o, to_json(make_cut(inst)), out);
  return 0;
}

int do_verify(const Options& o, std::ostream& out) {
  const Instance inst = instance_from_json(read_json_file(o.input));
  const CutFile cut = cut_file_from_json(read_json_file(o.cut));
  const Forbidden region = inst.region();
  const SampleConfig cfg = default_sample_config(inst.body, &region, resolve_seed(o), o.samples);
  const VerifyReport report = check_validity(inst.body, region, cut.result.cut, cfg, o.tol);
  Json j = to_json(report);
  j["seed"] = cfg.seed;
  j["samples"] = cfg.count;
  j["tol"] = o.tol;
  emit(o, j, out);
  return report.pass ? 0 : 1;
}

int do_oracle(const Options& o, std::ostream& out) {
  const Instance inst = instance_from_json(read_json_file(o.input));
  const CutFile cut = o.cut.empty() ? make_cut(inst) : cut_file_from_json(read_json_file(o.cut));
  OracleGrid grid{default_window(inst.body)};
  grid.points = o.grid;
  if (inst.body.epigraphical()) grid.margin_left = grid.margin_right = grid.margin_top = o.grid;
  const OracleComparison cmp = compare_to_oracle(inst.body, inst.region(), cut.result.cut, grid);
  Json j = to_json(cmp);
  j["grid"] = o.grid;
  j["window"] = {grid.window.x0, grid.window.x1, grid.window.y0, grid.window.y1};
  j["case"] = std::string(to_string(cut.result.label));
  emit(o, j, out);
  return cmp.mismatches() == 0 ? 0 : 1;
}

int do_cvp(const Options& o, std::ostream& out) {
  const Json in = read_json_file(o.input);
  if (!in.contains("B") || !in.contains("c")) throw Error(ErrorCode::InvalidInput, "cvp input needs 'B' and 'c'");
  const CvpReport r = demo_cvp(mat_from_json(in["B"]), vec_from_json(in["c"]));
  Json cuts = Json::array();
  for (std::size_t i = 0; i < r.cuts.size(); ++i) {
    Json c = to_json(r.cuts[i].cut);
    c["case"] = std::string(to_string(r.cuts[i].label));
    c["coordinate"] = r.coordinates[i];
    c["bound"] = r.per_coordinate[i];
    cuts.push_back(std::move(c));
  }
  emit(o, {{"relaxation", r.relaxation}, {"combined", r.combined}, {"cuts", cuts}}, out);
  return 0;
}

int do_svp(const Options& o, std::ostream& out) {
  const Json in = read_json_file(o.input);
  if (!in.contains("B")) throw Error(ErrorCode::InvalidInput, "svp input needs 'B'");
  const SvpReport r = demo_svp(mat_from_json(in["B"]), o.radius);
  emit(o,
       {{"split_cuts", r.split_cuts},
        {"futile", r.futile},
        {"split_bound", r.split_bound},
        {"radius", r.radius},
        {"cut", to_json(r.cut)},
        {"bound", r.bound}},
       out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split and intersection cuts for convex quadratic sets"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) { sub->add_option("-i,--input", o.input, "input JSON")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "output path (default stdout)"); };

  auto* cut = app.add_subcommand("cut", "compute the cut for an instance");
  input(cut);
  output(cut);

  auto* verify = app.add_subcommand("verify", "sample the instance and check a cut");
  input(verify);
  output(verify);
  verify->add_option("-c,--cut", o.cut, "cut JSON")->required();
  verify->add_option("--seed", o.seed, "sampling seed (falls back to QCUT_SEED)");
  verify->add_option("-n,--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
  verify->add_option("--tol", o.tol, "violation tolerance")->check(CLI::NonNegativeNumber);

  auto* oracle = app.add_subcommand("oracle", "compare a cut with the brute-force 2D hull");
  input(oracle);
  output(oracle);
  oracle->add_option("-c,--cut", o.cut, "cut JSON (default: compute it)");
  oracle->add_option("--grid", o.grid, "grid points per axis")->check(CLI::Range(2, 5000));

  auto* demo = app.add_subcommand("demo", "lattice demonstrations");
  demo->require_subcommand(1);
  auto* cvp = demo->add_subcommand("cvp", "closest vector bounds from elementary splits");
  input(cvp);
  output(cvp);
  auto* svp = demo->add_subcommand("svp", "shortest vector bounds");
  input(svp);
  output(svp);
  svp->add_option("--radius", o.radius, "lattice-free ball radius (default: smallest singular value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cut) return do_cut(o, out);
    if (*verify) return do_verify(o, out);
    if (*oracle) return do_oracle(o, out);
    if (*cvp) return do_cvp(o, out);
    if (*svp) return do_svp(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace qcut
