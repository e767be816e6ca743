#include "qcut/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qcut/error.hpp"

namespace qcut {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilies{{
    {Family::Paraboloid, "paraboloid"},
    {Family::Cone, "cone"},
    {Family::Ellipsoid, "ellipsoid"},
    {Family::SquaredEllipsoid, "squared_ellipsoid"},
    {Family::Hyperboloid, "hyperboloid"},
    {Family::PCone, "pcone"},
    {Family::PBall, "pball"},
}};

constexpr std::array<std::pair<CaseLabel, std::string_view>, 27> kCases{{
    {CaseLabel::ParaboloidSimple, "paraboloid_simple"},
    {CaseLabel::ParaboloidNoCut, "paraboloid_no_cut"},
    {CaseLabel::ParaboloidLinearHi, "paraboloid_linear_hi"},
    {CaseLabel::ParaboloidLinearLo, "paraboloid_linear_lo"},
    {CaseLabel::ParaboloidConic, "paraboloid_conic"},
    {CaseLabel::ConeSimple, "cone_simple"},
    {CaseLabel::ConeSimpleNoCut, "cone_simple_no_cut"},
    {CaseLabel::ConeNoCut, "cone_no_cut"},
    {CaseLabel::ConeLinearLo, "cone_linear_lo"},
    {CaseLabel::ConeLinearHi, "cone_linear_hi"},
    {CaseLabel::ConeConic, "cone_conic"},
    {CaseLabel::EllipsoidProper, "ellipsoid_proper"},
    {CaseLabel::EllipsoidCGAbove, "ellipsoid_cg_above"},
    {CaseLabel::EllipsoidCGBelow, "ellipsoid_cg_below"},
    {CaseLabel::EllipsoidNoCut, "ellipsoid_no_cut"},
    {CaseLabel::EllipsoidEmpty, "ellipsoid_empty"},
    {CaseLabel::HyperSymmetric, "hyper_symmetric"},
    {CaseLabel::HyperAsymmetric, "hyper_asymmetric"},
    {CaseLabel::PConeProper, "pcone_proper"},
    {CaseLabel::PConeNoCut, "pcone_no_cut"},
    {CaseLabel::PBallProper, "pball_proper"},
    {CaseLabel::IntersectionQuadratic, "intersection_quadratic"},
    {CaseLabel::Aggregation, "aggregation"},
    {CaseLabel::AggregationNoCut, "aggregation_no_cut"},
    {CaseLabel::AggregationEmpty, "aggregation_empty"},
    {CaseLabel::Concentric, "concentric"},
    {CaseLabel::ConcentricNoCut, "concentric_no_cut"},
}};

template <class Table, class Key>
auto lookup_name(const Table& table, Key key) {
  for (const auto& [k, name] : table)
    if (k == key) return name;
  return std::string_view{"unknown"};
}

template <class Table>
auto lookup_key(const Table& table, std::string_view name, const char* what) {
  for (const auto& [k, s] : table)
    if (s == name) return k;
  throw Error(ErrorCode::InvalidInput, std::string("unknown ") + what + " '" + std::string(name) + "'");
}

bool finite_all(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string_view to_string(Family f) { return lookup_name(kFamilies, f); }
Family family_from_string(std::string_view s) { return lookup_key(kFamilies, s, "family"); }

bool is_epigraphical(Family f) {
  switch (f) {
    case Family::Paraboloid:
    case Family::Cone:
    case Family::Hyperboloid:
    case Family::PCone:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(CaseLabel c) { return lookup_name(kCases, c); }
CaseLabel case_from_string(std::string_view s) { return lookup_key(kCases, s, "case label"); }

std::string_view to_string(SplitSide s) {
  switch (s) {
    case SplitSide::Below: return "below";
    case SplitSide::Inside: return "inside";
    case SplitSide::Above: return "above";
  }
  return "unknown";
}

ConvexBody ConvexBody::paraboloid(Mat B, Vec c) {
  ConvexBody b{Family::Paraboloid, c.size(), std::move(B), std::move(c)};
  b.validate();
  return b;
}

ConvexBody ConvexBody::cone(Mat B, Vec c) {
  ConvexBody b{Family::Cone, c.size(), std::move(B), std::move(c)};
  b.validate();
  return b;
}

ConvexBody ConvexBody::ellipsoid(Mat B, Vec c, double r) {
  ConvexBody b{Family::Ellipsoid, c.size(), std::move(B), std::move(c), r};
  b.validate();
  return b;
}

ConvexBody ConvexBody::squared_ellipsoid(Mat B, Vec c, double r) {
  ConvexBody b{Family::SquaredEllipsoid, c.size(), std::move(B), std::move(c), r};
  b.validate();
  return b;
}

ConvexBody ConvexBody::hyperboloid(std::size_t n, double l) {
  return hyperboloid(Mat::identity(n), Vec(n), l);
}

ConvexBody ConvexBody::hyperboloid(Mat B, Vec c, double l) {
  ConvexBody b{Family::Hyperboloid, c.size(), std::move(B), std::move(c)};
  b.l = l;
  b.validate();
  return b;
}

ConvexBody ConvexBody::p_cone(std::size_t n, double p, Vec c) {
  if (c.empty()) c = Vec(n);
  ConvexBody b{Family::PCone, n, Mat::identity(n), std::move(c)};
  b.p = p;
  b.validate();
  return b;
}

ConvexBody ConvexBody::p_ball(std::size_t n, double p, double r, Vec c) {
  if (c.empty()) c = Vec(n);
  ConvexBody b{Family::PBall, n, Mat::identity(n), std::move(c), r};
  b.p = p;
  b.validate();
  return b;
}

void ConvexBody::validate() const {
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  if (c.size() != n) throw Error(ErrorCode::DimMismatch, "center has wrong dimension");
  if (B.rows() != n || B.cols() != n) throw Error(ErrorCode::DimMismatch, "B must be n x n");
  if (!finite_all(c)) throw Error(ErrorCode::InvalidInput, "center is not finite");
  for (std::size_t i = 0; i < n; ++i)
    for (double v : B.row(i))
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "B is not finite");
  switch (family) {
    case Family::Ellipsoid:
    case Family::SquaredEllipsoid:
    case Family::PBall:
      if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
      break;
    case Family::Hyperboloid:
      if (!(l != 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidInput, "l must be nonzero");
      break;
    default:
      break;
  }
  if (family == Family::PCone || family == Family::PBall) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidInput, "p must be >= 1");
    if (!(B == Mat::identity(n))) throw Error(ErrorCode::InvalidInput, "p-norm bodies use B = I");
  }
  (void)inverse(B);  // throws Singular
}

double eval_body(const ConvexBody& body, const Point& pt) {
  if (pt.x.size() != body.n) throw Error(ErrorCode::DimMismatch, "point dimension does not match body");
  const Vec y = body.family == Family::PCone || body.family == Family::PBall ? pt.x - body.c
                                                                              : body.B * (pt.x - body.c);
  switch (body.family) {
    case Family::Paraboloid: return norm_sq(y) - pt.t;
    case Family::Cone: return norm2(y) - pt.t;
    case Family::Ellipsoid: return norm2(y) - body.r;
    case Family::SquaredEllipsoid: return norm_sq(y) - body.r;
    case Family::Hyperboloid: return std::hypot(norm2(y), body.l) - pt.t;
    case Family::PCone: return norm_p(y.span(), body.p) - pt.t;
    case Family::PBall: return norm_p(y.span(), body.p) - body.r;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double SplitDisjunction::value(const Point& pt) const {
  if (pt.x.size() != pi.size()) throw Error(ErrorCode::DimMismatch, "point dimension does not match split");
  return dot(pi, pt.x) + pi_hat * pt.t;
}

void SplitDisjunction::validate() const {
  if (pi.empty() || pi.size() > kMaxDim) throw Error(ErrorCode::InvalidInput, "split dimension must be in 1..64");
  if (!std::isfinite(pi0) || !std::isfinite(pi1) || !std::isfinite(pi_hat) || !finite_all(pi))
    throw Error(ErrorCode::InvalidInput, "split data is not finite");
  if (!(pi0 < pi1)) throw Error(ErrorCode::InvalidInput, "split requires pi0 < pi1");
  if (max_abs(pi) == 0.0 && pi_hat == 0.0) throw Error(ErrorCode::InvalidInput, "split normal is zero");
}

double scaled_tol(double base, double a, double b) {
  return base * std::max({1.0, std::abs(a), std::abs(b)});
}

SplitSide split_position(const SplitDisjunction& split, const Point& pt, double tol) {
  const double v = split.value(pt);
  const double eps = scaled_tol(tol, split.pi0, split.pi1);
  if (v <= split.pi0 + eps && v < split.pi1 - eps) return SplitSide::Below;
  if (v >= split.pi1 - eps) return SplitSide::Above;
  return SplitSide::Inside;
}

double eval_cut(const Cut& cut, const Point& pt) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NormCut>) {
          const Vec lhs = c.M * pt.x + c.m;
          return norm_p(lhs.span(), c.p) - (dot(c.q, pt.x) + c.h * pt.t + c.k);
        } else if constexpr (std::is_same_v<T, QuadraticCut>) {
          return quad_form(c.E, pt.x) + dot(c.a, pt.x) + c.f - c.gamma_t * pt.t;
        } else if constexpr (std::is_same_v<T, LinearCut>) {
          const double v = dot(c.g, pt.x) + c.h * pt.t;
          return c.sense == Sense::LessEq ? v - c.k : c.k - v;
        } else if constexpr (std::is_same_v<T, NoCut>) {
          return -inf;
        } else {
          return inf;
        }
      },
      cut);
}

}  // namespace qcut
