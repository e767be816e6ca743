#include "qcut/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcut/error.hpp"

namespace qcut {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) schema(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string("'") + what + "' must be a string");
  return j.get<std::string>();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Forbidden Instance::region() const {
  if (split) return *split;
  if (forbidden) return *forbidden;
  schema("instance has neither a split nor a forbidden region");
}

Json to_json(const Vec& v) { return Json(v.values()); }

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(Json(std::vector<double>(m.row(i).begin(), m.row(i).end())));
  return rows;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) schema("expected an array of numbers");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = number(j[i], "vector entry");
  return v;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema("expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) schema("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = number(j[i][k], "matrix entry");
  }
  return m;
}

Json to_json(const ConvexBody& body) {
  Json j{{"family", std::string(to_string(body.family))}, {"n", body.n}};
  switch (body.family) {
    case Family::PCone:
    case Family::PBall:
      j["p"] = body.p;
      break;
    default:
      j["B"] = to_json(body.B);
  }
  j["c"] = to_json(body.c);
  if (body.family == Family::Ellipsoid || body.family == Family::SquaredEllipsoid || body.family == Family::PBall)
    j["r"] = body.r;
  if (body.family == Family::Hyperboloid) j["l"] = body.l;
  return j;
}

ConvexBody body_from_json(const Json& j) {
  ConvexBody body;
  body.family = family_from_string(text(field(j, "family"), "family"));
  if (j.contains("B")) body.B = mat_from_json(j["B"]);
  if (j.contains("c")) body.c = vec_from_json(j["c"]);
  std::size_t n = 0;
  if (j.contains("n")) {
    const Json& jn = j["n"];
    if (!jn.is_number_integer() || jn.get<long long>() < 1) schema("'n' must be a positive integer");
    n = jn.get<std::size_t>();
  } else if (!body.c.empty()) {
    n = body.c.size();
  } else if (body.B.rows() > 0) {
    n = body.B.rows();
  } else {
    schema("body needs 'n', 'B' or 'c'");
  }
  if (n > kMaxDim) schema("dimension must be at most 64");
  body.n = n;
  if (body.B.rows() == 0) body.B = Mat::identity(n);
  if (body.c.empty()) body.c = Vec(n);
  body.r = number_or(j, "r", 1.0);
  body.l = number_or(j, "l", 1.0);
  body.p = number_or(j, "p", 2.0);
  body.validate();
  return body;
}

Json to_json(const SplitDisjunction& s) {
  return {{"pi", to_json(s.pi)}, {"pi_hat", s.pi_hat}, {"pi0", s.pi0}, {"pi1", s.pi1}};
}

SplitDisjunction split_from_json(const Json& j) {
  SplitDisjunction s;
  s.pi = vec_from_json(field(j, "pi"));
  s.pi_hat = number_or(j, "pi_hat", 0.0);
  s.pi0 = number(field(j, "pi0"), "pi0");
  s.pi1 = number(field(j, "pi1"), "pi1");
  s.validate();
  return s;
}

Json to_json(const QuadraticForbidden& f) {
  return {{"kind", "quadratic"}, {"A", to_json(f.A)}, {"d", to_json(f.d)}, {"q", f.q}, {"gamma", f.gamma}};
}

QuadraticForbidden forbidden_from_json(const Json& j) {
  if (text(field(j, "kind"), "kind") != "quadratic") schema("only quadratic forbidden regions are supported");
  QuadraticForbidden f{mat_from_json(field(j, "A")), vec_from_json(field(j, "d")), number(field(j, "q"), "q"),
                       number_or(j, "gamma", 0.0)};
  if (f.A.cols() != f.d.size()) schema("A and d disagree in dimension");
  if (!(f.gamma >= 0.0)) schema("gamma must be nonnegative");
  return f;
}

Json to_json(const Instance& inst) {
  Json j{{"body", to_json(inst.body)}};
  if (inst.split) j["split"] = to_json(*inst.split);
  if (inst.forbidden) j["forbidden"] = to_json(*inst.forbidden);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.body = body_from_json(field(j, "body"));
  if (j.contains("split")) inst.split = split_from_json(j["split"]);
  if (j.contains("forbidden")) inst.forbidden = forbidden_from_json(j["forbidden"]);
  if (inst.split.has_value() == inst.forbidden.has_value()) schema("instance needs exactly one of 'split' and 'forbidden'");
  if (inst.split && inst.split->pi.size() != inst.body.n) schema("split dimension differs from the body");
  if (inst.forbidden && inst.forbidden->d.size() != inst.body.n) schema("forbidden dimension differs from the body");
  return inst;
}

Json to_json(const Cut& cut) {
  return std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NormCut>)
          return {{"kind", "norm"}, {"M", to_json(c.M)}, {"m", to_json(c.m)}, {"p", c.p},
                  {"q", to_json(c.q)}, {"h", c.h},        {"k", c.k}};
        else if constexpr (std::is_same_v<T, QuadraticCut>)
          return {{"kind", "quadratic"}, {"E", to_json(c.E)}, {"a", to_json(c.a)}, {"f", c.f}, {"gamma_t", c.gamma_t}};
        else if constexpr (std::is_same_v<T, LinearCut>)
          return {{"kind", "linear"}, {"g", to_json(c.g)}, {"h", c.h}, {"k", c.k},
                  {"sense", c.sense == Sense::LessEq ? "le" : "ge"}};
        else if constexpr (std::is_same_v<T, NoCut>)
          return {{"kind", "none"}};
        else
          return {{"kind", "empty"}};
      },
      cut);
}

Cut cut_from_json(const Json& j) {
  const std::string kind = text(field(j, "kind"), "kind");
  if (kind == "norm") {
    NormCut c{mat_from_json(field(j, "M")), vec_from_json(field(j, "m")), number(field(j, "p"), "p"),
              vec_from_json(field(j, "q")), number(field(j, "h"), "h"),   number(field(j, "k"), "k")};
    if (c.M.rows() != c.m.size() || c.M.cols() != c.q.size()) schema("norm cut dimensions disagree");
    if (!(c.p >= 1.0)) schema("norm cut needs p >= 1");
    return c;
  }
  if (kind == "quadratic") {
    QuadraticCut c{mat_from_json(field(j, "E")), vec_from_json(field(j, "a")), number(field(j, "f"), "f"),
                   number(field(j, "gamma_t"), "gamma_t")};
    if (!c.E.square() || c.E.rows() != c.a.size()) schema("quadratic cut dimensions disagree");
    return c;
  }
  if (kind == "linear") {
    const std::string sense = text(field(j, "sense"), "sense");
    if (sense != "le" && sense != "ge") schema("sense must be 'le' or 'ge'");
    return LinearCut{vec_from_json(field(j, "g")), number(field(j, "h"), "h"), number(field(j, "k"), "k"),
                     sense == "le" ? Sense::LessEq : Sense::GreaterEq};
  }
  if (kind == "none") return NoCut{};
  if (kind == "empty") return EmptyHull{};
  schema("unknown cut kind '" + kind + "'");
}

Json to_json(const CutFile& file) {
  Json j = to_json(file.result.cut);
  j["case"] = std::string(to_string(file.result.label));
  j["provenance"] = file.provenance;
  return j;
}

CutFile cut_file_from_json(const Json& j) {
  CutFile file;
  file.result.cut = cut_from_json(j);
  file.result.label = case_from_string(text(field(j, "case"), "case"));
  if (j.contains("provenance")) file.provenance = j["provenance"];
  return file;
}

Json to_json(const Point& p) { return {{"x", to_json(p.x)}, {"t", p.t}}; }

Json to_json(const VerifyReport& r) {
  Json j{{"checked", r.checked}, {"max_violation", finite_or_null(r.max_violation)}, {"pass", r.pass}};
  j["worst_point"] = r.worst_point.x.empty() ? Json(nullptr) : to_json(r.worst_point);
  return j;
}

Json to_json(const OracleComparison& c) {
  return {{"compared", c.compared},
          {"too_big", c.too_big},
          {"too_small", c.too_small},
          {"near_boundary", c.near_boundary},
          {"mismatches", c.mismatches()}};
}

Json to_json(const FriendsCertificate& c) {
  return {{"p0", to_json(c.p0)},
          {"p1", to_json(c.p1)},
          {"alpha", c.alpha},
          {"side0", std::string(to_string(c.side0))},
          {"side1", std::string(to_string(c.side1))}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    schema("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qcut
