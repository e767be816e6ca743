#include "qcut/splitcuts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qcut/error.hpp"

namespace qcut {

namespace {

void check_interval(double pi0, double pi1) {
  if (!std::isfinite(pi0) || !std::isfinite(pi1) || !(pi0 < pi1))
    throw Error(ErrorCode::InvalidInput, "split interval requires pi0 < pi1");
}

void check_axis(std::size_t n, std::size_t axis) {
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  if (axis >= n) throw Error(ErrorCode::DimMismatch, "axis out of range");
}

double tie_tol(double pi0, double pi1) { return scaled_tol(1e-9, pi0, pi1); }

// Unit-normal projector pair for a nonzero direction.
struct Projectors {
  Mat par;
  Mat perp;
  double nu;
};

Projectors projectors(const Vec& pi) {
  const double nu = norm_sq(pi);
  if (nu == 0.0) throw Error(ErrorCode::ZeroVector, "split normal is zero");
  Mat par = par_matrix(pi);
  Mat perp = Mat::identity(pi.size()) - par;
  return {std::move(par), std::move(perp), nu};
}

// Builds | (P_perp + a P) y + (b / nu) pi | <= t in y space.
NormCut homogeneous_norm_cut(const Vec& pi, double a, double b, double p = 2.0) {
  const Projectors pr = projectors(pi);
  const std::size_t n = pi.size();
  return NormCut{pr.perp + a * pr.par, (b / pr.nu) * pi, p, Vec(n), 1.0, 0.0};
}

Mat insert_columns(const Mat& m, std::span<const std::size_t> kept, std::size_t total) {
  Mat out(m.rows(), total);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) out(i, kept[j]) = m(i, j);
  return out;
}

Vec insert_entries(const Vec& v, std::span<const std::size_t> kept, std::size_t total) {
  Vec out(total);
  for (std::size_t j = 0; j < kept.size(); ++j) out[kept[j]] = v[j];
  return out;
}

struct AxisSplit {
  std::size_t axis;
  double lo;
  double hi;
};

// Reads pi = sigma e_k and returns the interval on y_k = x_k - c_k.
std::optional<AxisSplit> axis_split(const SplitDisjunction& split, const Vec& c) {
  std::size_t axis = split.pi.size();
  for (std::size_t i = 0; i < split.pi.size(); ++i) {
    if (split.pi[i] == 0.0) continue;
    if (axis != split.pi.size()) return std::nullopt;
    axis = i;
  }
  if (axis == split.pi.size()) return std::nullopt;
  const double sigma = split.pi[axis];
  double lo = (split.pi0 - sigma * c[axis]) / sigma;
  double hi = (split.pi1 - sigma * c[axis]) / sigma;
  if (lo > hi) std::swap(lo, hi);
  return AxisSplit{axis, lo, hi};
}

}  // namespace

Secant secant_coeffs(double f0, double f1, double pi0, double pi1) {
  check_interval(pi0, pi1);
  const double w = pi1 - pi0;
  if (w < 1e-12 * std::max({1.0, std::abs(pi0), std::abs(pi1)}))
    throw Error(ErrorCode::DegenerateInterval, "interval too short for interpolation");
  return {(f1 - f0) / w, (pi1 * f0 - pi0 * f1) / w};
}

Secant homogeneous_coeffs(double pi0, double pi1) {
  check_interval(pi0, pi1);
  if (!(pi0 < 0.0 && 0.0 < pi1)) throw Error(ErrorCode::ZeroNotInterior, "0 must lie strictly inside (pi0, pi1)");
  const double w = pi1 - pi0;
  return {(pi0 + pi1) / w, -2.0 * pi1 * pi0 / w};
}

StandardSplit standardize(const Mat& B, const Vec& c, const SplitDisjunction& split) {
  if (split.pi.size() != c.size()) throw Error(ErrorCode::DimMismatch, "split and body dimensions differ");
  const Mat binv_t = transpose(inverse(B));
  const double shift = dot(split.pi, c);
  return {binv_t * split.pi, split.pi_hat, split.pi0 - shift, split.pi1 - shift};
}

ConicCoeffs paraboloid_conic_coeffs(double nu, double pi_hat, double pi0, double pi1) {
  const double r0 = std::sqrt(std::max(0.0, nu + 4.0 * pi0 * pi_hat));
  const double r1 = std::sqrt(std::max(0.0, nu + 4.0 * pi1 * pi_hat));
  const double f = std::sqrt(std::max(0.0, nu + 2.0 * (pi0 + pi1) * pi_hat - r0 * r1));
  const double w = pi1 - pi0;
  const double c = f / (std::numbers::sqrt2 * w * pi_hat);
  const double e = (nu + r0 * r1) * f / (4.0 * std::numbers::sqrt2 * w * pi_hat * pi_hat);
  return {1.0, nu / (2.0 * pi_hat), c, c * pi_hat, e, f};
}

ConicCoeffs cone_conic_coeffs(double nu, double pi_hat, double pi0, double pi1) {
  const double gap = nu - pi_hat * pi_hat;
  const double w = pi1 - pi0;
  const double f = std::sqrt(gap * (nu * w * w - (pi0 + pi1) * (pi0 + pi1) * pi_hat * pi_hat));
  return {(pi0 + pi1) * gap / f,
          -2.0 * pi0 * pi1 * nu / f,
          -4.0 * pi0 * pi1 * pi_hat / (w * f),
          f / (w * gap),
          2.0 * pi0 * pi1 * (pi0 + pi1) * pi_hat / (w * f),
          f};
}

Secant hyperboloid_coeffs(double l, double nu, double pi0, double pi1) {
  const double lift = l * l * nu;
  if (std::abs(std::abs(pi0) - std::abs(pi1)) <= tie_tol(pi0, pi1)) {
    // the smaller end keeps the cut valid when the ends differ within tolerance
    return {0.0, std::sqrt(lift + std::min(pi0 * pi0, pi1 * pi1))};
  }
  const double root = std::sqrt((lift + pi0 * pi0) * (lift + pi1 * pi1));
  const double a = std::sqrt(std::max(0.0, 2.0 * lift + pi0 * pi0 + pi1 * pi1 - 2.0 * root)) / (pi1 - pi0);
  return {a, (lift - pi0 * pi1 + root) / (pi0 + pi1) * a};
}

CutResult split_cut_p_cone(std::size_t n, std::size_t axis, double p, double pi0, double pi1) {
  check_axis(n, axis);
  check_interval(pi0, pi1);
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidInput, "p must be >= 1");
  const double tol = tie_tol(pi0, pi1);
  if (pi0 >= -tol || pi1 <= tol) return {NoCut{}, CaseLabel::PConeNoCut};
  const Secant h = homogeneous_coeffs(pi0, pi1);
  Mat M = Mat::identity(n);
  M(axis, axis) = h.a;
  return {NormCut{std::move(M), h.b * Vec::unit(n, axis), p, Vec(n), 1.0, 0.0}, CaseLabel::PConeProper};
}

CutResult split_cut_p_ball(std::size_t n, std::size_t axis, double p, double r, double pi0, double pi1) {
  check_axis(n, axis);
  check_interval(pi0, pi1);
  if (!(p >= 1.0) || !(r > 0.0)) throw Error(ErrorCode::InvalidInput, "p-ball needs p >= 1 and r > 0");
  const double slack = scaled_tol(1e-9, r, 0.0);
  if (std::abs(pi0) > r + slack || std::abs(pi1) > r + slack)
    throw Error(ErrorCode::SliceOutsideBall, "split hyperplane misses the ball");
  const double rp = std::pow(r, p);
  auto f = [&](double u) { return -std::pow(std::max(0.0, rp - std::pow(std::abs(u), p)), 1.0 / p); };
  const Secant s = secant_coeffs(f(pi0), f(pi1), pi0, pi1);
  Mat M = Mat::identity(n);
  M(axis, axis) = 0.0;
  return {NormCut{std::move(M), Vec(n), p, -s.a * Vec::unit(n, axis), 0.0, -s.b}, CaseLabel::PBallProper};
}

CutResult split_cut_paraboloid_simple(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1) {
  check_interval(pi0, pi1);
  const StandardSplit st = standardize(B, c, {pi, 0.0, pi0, pi1});
  const Projectors pr = projectors(st.pi);
  const double a = (st.pi0 + st.pi1) / pr.nu;
  const double b = -st.pi0 * st.pi1 / pr.nu;
  QuadraticCut y_cut{pr.perp, a * st.pi, b, 1.0};
  return {lift_affine(y_cut, B, c), CaseLabel::ParaboloidSimple};
}

CutResult split_cut_cone_simple(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1) {
  check_interval(pi0, pi1);
  const StandardSplit st = standardize(B, c, {pi, 0.0, pi0, pi1});
  if (max_abs(st.pi) == 0.0) throw Error(ErrorCode::ZeroVector, "split normal is zero");
  const double tol = tie_tol(pi0, pi1);
  if (st.pi0 >= -tol || st.pi1 <= tol) return {NoCut{}, CaseLabel::ConeSimpleNoCut};
  const Secant h = homogeneous_coeffs(st.pi0, st.pi1);
  return {lift_affine(homogeneous_norm_cut(st.pi, h.a, h.b), B, c), CaseLabel::ConeSimple};
}

CutResult split_cut_ellipsoid(const Mat& B, const Vec& c, double r, const Vec& pi, double pi0, double pi1) {
  check_interval(pi0, pi1);
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
  const StandardSplit st = standardize(B, c, {pi, 0.0, pi0, pi1});
  const Projectors pr = projectors(st.pi);
  const double reach = r * std::sqrt(pr.nu);  // pi.y ranges over [-reach, reach]
  const double tol = tie_tol(pi0, pi1);
  const double u0 = st.pi0, u1 = st.pi1;

  if (u1 <= -reach + tol || u0 >= reach - tol) return {NoCut{}, CaseLabel::EllipsoidNoCut};
  const bool low_in = u0 >= -reach - tol;
  const bool high_in = u1 <= reach + tol;
  if (!low_in && !high_in) return {EmptyHull{}, CaseLabel::EllipsoidEmpty};
  if (!low_in) return {LinearCut{pi, 0.0, pi1, Sense::GreaterEq}, CaseLabel::EllipsoidCGAbove};
  if (!high_in) return {LinearCut{pi, 0.0, pi0, Sense::LessEq}, CaseLabel::EllipsoidCGBelow};

  auto f = [&](double u) { return -std::sqrt(std::max(0.0, r * r - u * u / pr.nu)); };
  const double f0 = f(u0), f1 = f(u1);
  const double a = (f0 - f1) / (u1 - u0);
  const double b = (u1 * f0 - u0 * f1) / (u1 - u0);
  // |P_perp y| <= a pi.y - b
  NormCut y_cut{pr.perp, Vec(pi.size()), 2.0, a * st.pi, 0.0, -b};
  return {lift_affine(y_cut, B, c), CaseLabel::EllipsoidProper};
}

CutResult split_cut_paraboloid_general(const Vec& pi, double pi_hat, double pi0, double pi1) {
  check_interval(pi0, pi1);
  const std::size_t n = pi.size();
  if (pi_hat == 0.0) return split_cut_paraboloid_simple(Mat::identity(n), Vec(n), pi, pi0, pi1);
  const double nu = norm_sq(pi);
  const double vertex = -nu / (4.0 * pi_hat);  // minimum of pi.x + pi_hat t over the paraboloid
  const double tol = tie_tol(pi0, pi1);

  if (pi_hat > 0.0) {
    if (pi1 <= vertex + tol) return {NoCut{}, CaseLabel::ParaboloidNoCut};
    if (pi0 < vertex - tol) return {LinearCut{pi, pi_hat, pi1, Sense::GreaterEq}, CaseLabel::ParaboloidLinearHi};
  } else {
    if (pi0 >= vertex - tol) return {NoCut{}, CaseLabel::ParaboloidNoCut};
    if (pi1 > vertex + tol) return {LinearCut{pi, pi_hat, pi0, Sense::LessEq}, CaseLabel::ParaboloidLinearLo};
  }

  const ConicCoeffs k = paraboloid_conic_coeffs(nu, pi_hat, pi0, pi1);
  // P_perp x + ((pi.x + b)/nu) pi collapses to x + pi/(2 pi_hat)
  NormCut cut{Mat::identity(n), (0.5 / pi_hat) * pi, 2.0, k.c * pi, k.d, k.e};
  return {std::move(cut), CaseLabel::ParaboloidConic};
}

CutResult split_cut_cone_general(const Vec& pi, double pi_hat, double pi0, double pi1) {
  check_interval(pi0, pi1);
  const std::size_t n = pi.size();
  if (pi_hat == 0.0) return split_cut_cone_simple(Mat::identity(n), Vec(n), pi, pi0, pi1);
  const double tol = tie_tol(pi0, pi1);
  if (pi0 >= -tol || pi1 <= tol) return {NoCut{}, CaseLabel::ConeNoCut};
  const double nu = norm_sq(pi);
  const double gap = nu - pi_hat * pi_hat;
  if (gap <= 0.0) {
    if (pi_hat < 0.0) return {LinearCut{pi, pi_hat, pi0, Sense::LessEq}, CaseLabel::ConeLinearLo};
    return {LinearCut{pi, pi_hat, pi1, Sense::GreaterEq}, CaseLabel::ConeLinearHi};
  }
  const ConicCoeffs k = cone_conic_coeffs(nu, pi_hat, pi0, pi1);
  NormCut cut = homogeneous_norm_cut(pi, k.a, k.b);
  cut.q = k.c * pi;
  cut.h = k.d;
  cut.k = k.e;
  return {std::move(cut), CaseLabel::ConeConic};
}

CutResult split_cut_hyperboloid(double l, const Vec& pi, double pi0, double pi1) {
  check_interval(pi0, pi1);
  if (!(l != 0.0)) throw Error(ErrorCode::InvalidInput, "l must be nonzero");
  const double nu = norm_sq(pi);
  if (nu == 0.0) throw Error(ErrorCode::ZeroVector, "split normal is zero");
  const Secant h = hyperboloid_coeffs(l, nu, pi0, pi1);
  return {homogeneous_norm_cut(pi, h.a, h.b), h.a == 0.0 ? CaseLabel::HyperSymmetric : CaseLabel::HyperAsymmetric};
}

Cut lift_affine(const Cut& cut, const Mat& B, const Vec& c) {
  if (!B.square() || B.rows() != c.size()) throw Error(ErrorCode::DimMismatch, "lift needs n x n B and n-vector c");
  (void)inverse(B);
  const Vec shift = B * c;
  const Mat bt = transpose(B);
  return std::visit(
      [&](const auto& k) -> Cut {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NormCut>) {
          if (k.M.cols() != c.size() || k.q.size() != c.size())
            throw Error(ErrorCode::DimMismatch, "cut and transform dimensions differ");
          return NormCut{k.M * B, k.m - k.M * shift, k.p, bt * k.q, k.h, k.k - dot(k.q, shift)};
        } else if constexpr (std::is_same_v<T, QuadraticCut>) {
          if (k.E.cols() != c.size() || k.a.size() != c.size())
            throw Error(ErrorCode::DimMismatch, "cut and transform dimensions differ");
          const Vec es = k.E * shift;
          const Vec et = transpose(k.E) * shift;
          return QuadraticCut{bt * k.E * B, bt * k.a - bt * (es + et), dot(shift, es) - dot(k.a, shift) + k.f,
                              k.gamma_t};
        } else if constexpr (std::is_same_v<T, LinearCut>) {
          if (k.g.size() != c.size()) throw Error(ErrorCode::DimMismatch, "cut and transform dimensions differ");
          return LinearCut{bt * k.g, k.h, k.k + dot(k.g, shift), k.sense};
        } else {
          return k;
        }
      },
      cut);
}

CutResult split_cut(const ConvexBody& body, const SplitDisjunction& split) {
  body.validate();
  split.validate();
  if (split.pi.size() != body.n) throw Error(ErrorCode::DimMismatch, "split and body dimensions differ");

  auto standard = [&](auto&& op) {
    const StandardSplit st = standardize(body.B, body.c, split);
    CutResult res = op(st);
    res.cut = lift_affine(res.cut, body.B, body.c);
    return res;
  };
  auto needs_flat = [&] {
    if (split.pi_hat != 0.0)
      throw Error(ErrorCode::UnsupportedCombination,
                  std::string("split with a t component is not available for ") + std::string(to_string(body.family)));
  };

  switch (body.family) {
    case Family::Paraboloid:
      if (split.pi_hat == 0.0) return split_cut_paraboloid_simple(body.B, body.c, split.pi, split.pi0, split.pi1);
      return standard([](const StandardSplit& st) {
        return split_cut_paraboloid_general(st.pi, st.pi_hat, st.pi0, st.pi1);
      });
    case Family::Cone:
      if (split.pi_hat == 0.0) return split_cut_cone_simple(body.B, body.c, split.pi, split.pi0, split.pi1);
      return standard(
          [](const StandardSplit& st) { return split_cut_cone_general(st.pi, st.pi_hat, st.pi0, st.pi1); });
    case Family::Ellipsoid:
      needs_flat();
      return split_cut_ellipsoid(body.B, body.c, body.r, split.pi, split.pi0, split.pi1);
    case Family::SquaredEllipsoid:
      needs_flat();
      return split_cut_ellipsoid(body.B, body.c, std::sqrt(body.r), split.pi, split.pi0, split.pi1);
    case Family::Hyperboloid:
      needs_flat();
      return standard([&](const StandardSplit& st) { return split_cut_hyperboloid(body.l, st.pi, st.pi0, st.pi1); });
    case Family::PCone: {
      needs_flat();
      const auto ax = axis_split(split, body.c);
      if (!ax) {
        if (body.p == 2.0) return split_cut_cone_simple(body.B, body.c, split.pi, split.pi0, split.pi1);
        throw Error(ErrorCode::UnsupportedCombination, "p-cone splits must be elementary");
      }
      CutResult res = split_cut_p_cone(body.n, ax->axis, body.p, ax->lo, ax->hi);
      res.cut = lift_affine(res.cut, body.B, body.c);
      return res;
    }
    case Family::PBall: {
      needs_flat();
      const auto ax = axis_split(split, body.c);
      const double slack = scaled_tol(1e-9, body.r, 0.0);
      const bool inside = ax && std::abs(ax->lo) <= body.r + slack && std::abs(ax->hi) <= body.r + slack;
      if (body.p == 2.0 && !inside)
        return split_cut_ellipsoid(body.B, body.c, body.r, split.pi, split.pi0, split.pi1);
      if (!ax) throw Error(ErrorCode::UnsupportedCombination, "p-ball splits must be elementary");
      CutResult res = split_cut_p_ball(body.n, ax->axis, body.p, body.r, ax->lo, ax->hi);
      res.cut = lift_affine(res.cut, body.B, body.c);
      return res;
    }
  }
  throw Error(ErrorCode::UnsupportedCombination, "unknown family");
}

CutResult split_cut_cylinder(const ConvexBody& base, std::span<const std::size_t> free_coords,
                             const SplitDisjunction& split) {
  const std::size_t total = base.n + free_coords.size();
  if (split.pi.size() != total) throw Error(ErrorCode::DimMismatch, "split and cylinder dimensions differ");
  std::vector<bool> is_free(total, false);
  for (std::size_t k : free_coords) {
    if (k >= total || is_free[k]) throw Error(ErrorCode::InvalidInput, "bad free coordinate list");
    is_free[k] = true;
  }
  std::vector<std::size_t> kept;
  Vec reduced(base.n);
  for (std::size_t i = 0; i < total; ++i) {
    if (is_free[i]) {
      if (std::abs(split.pi[i]) > 1e-12 * std::max(1.0, max_abs(split.pi)))
        throw Error(ErrorCode::UnsupportedCombination, "split normal must vanish on the free directions");
      continue;
    }
    reduced[kept.size()] = split.pi[i];
    kept.push_back(i);
  }
  CutResult res = split_cut(base, {reduced, split.pi_hat, split.pi0, split.pi1});
  res.cut = std::visit(
      [&](const auto& k) -> Cut {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NormCut>) {
          return NormCut{insert_columns(k.M, kept, total), k.m, k.p, insert_entries(k.q, kept, total), k.h, k.k};
        } else if constexpr (std::is_same_v<T, QuadraticCut>) {
          Mat E(total, total);
          for (std::size_t i = 0; i < kept.size(); ++i)
            for (std::size_t j = 0; j < kept.size(); ++j) E(kept[i], kept[j]) = k.E(i, j);
          return QuadraticCut{std::move(E), insert_entries(k.a, kept, total), k.f, k.gamma_t};
        } else if constexpr (std::is_same_v<T, LinearCut>) {
          return LinearCut{insert_entries(k.g, kept, total), k.h, k.k, k.sense};
        } else {
          return k;
        }
      },
      res.cut);
  return res;
}

SeparableSplitCut::SeparableSplitCut(Outer g, Inner f, Vec pi, double pi0, double pi1)
    : g_(std::move(g)), f_(std::move(f)), pi_(std::move(pi)), nu_(norm_sq(pi_)),
      line_(secant_coeffs(f_(pi0), f_(pi1), pi0, pi1)) {
  if (nu_ == 0.0) throw Error(ErrorCode::ZeroVector, "split normal is zero");
}

double SeparableSplitCut::body(const Point& pt) const {
  return g_(project_perp(pi_, pt.x)) + f_(dot(pi_, pt.x)) - pt.t;
}

double SeparableSplitCut::cut(const Point& pt) const {
  return g_(project_perp(pi_, pt.x)) + line_.a * dot(pi_, pt.x) + line_.b - pt.t;
}

}  // namespace qcut
