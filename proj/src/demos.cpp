#include "qcut/demos.hpp"

#include <algorithm>
#include <cmath>

#include "qcut/error.hpp"
#include "qcut/interscuts.hpp"
#include "qcut/splitcuts.hpp"

namespace qcut {

double ConvexQuadratic::operator()(const Vec& x) const { return quad_form(Q, x) + dot(lin, x) + cnst; }

Vec ConvexQuadratic::gradient(const Vec& x) const { return Q * x + transpose(Q) * x + lin; }

ConvexQuadratic paraboloid_quadratic(const Mat& B, const Vec& c) {
  const Mat btb = transpose(B) * B;
  const Vec bc = B * c;
  return {btb, -2.0 * (transpose(B) * bc), dot(bc, bc)};
}

ConvexQuadratic cut_quadratic(const QuadraticCut& cut) {
  if (!(cut.gamma_t > 0.0)) throw Error(ErrorCode::InvalidInput, "cut must bound t from below");
  const double s = 1.0 / cut.gamma_t;
  return {s * cut.E, s * cut.a, s * cut.f};
}

namespace {

struct Active {
  double value;
  Vec grad;
};

Active evaluate(std::span<const ConvexQuadratic> fns, const Vec& x) {
  std::size_t best = 0;
  double top = fns[0](x);
  for (std::size_t i = 1; i < fns.size(); ++i) {
    const double v = fns[i](x);
    if (v > top) top = v, best = i;
  }
  return {top, fns[best].gradient(x)};
}

MinMaxResult minimize_line(std::span<const ConvexQuadratic> fns, double center, double radius, double tol) {
  double lo = center - radius, hi = center + radius;
  MinMaxResult out{Vec{center}, evaluate(fns, Vec{center}).value, -INFINITY};
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const Active a = evaluate(fns, Vec{mid});
    if (a.value < out.value) out = {Vec{mid}, a.value, out.lower};
    out.lower = std::max(out.lower, a.value - std::abs(a.grad[0]) * (hi - lo));
    if (a.grad[0] == 0.0) break;
    (a.grad[0] > 0.0 ? hi : lo) = mid;
    if (out.value - out.lower <= tol * std::max(1.0, std::abs(out.value))) break;
  }
  out.lower = std::min(out.lower, out.value);
  return out;
}

}  // namespace

MinMaxResult minimize_max(std::span<const ConvexQuadratic> fns, const Vec& center, double radius, double tol) {
  if (fns.empty()) throw Error(ErrorCode::InvalidInput, "nothing to minimize");
  const std::size_t n = center.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty center");
  if (!(radius > 0.0)) radius = 1e-9;
  if (n == 1) return minimize_line(fns, center[0], radius, tol);

  const double dn = double(n);
  Vec x = center;
  Mat P = (radius * radius) * Mat::identity(n);
  MinMaxResult out{x, evaluate(fns, x).value, -INFINITY};
  const std::size_t max_iter = 400 * n * n + 4000;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Active a = evaluate(fns, x);
    if (a.value < out.value) out.x = x, out.value = a.value;
    const Vec pg = P * a.grad;
    const double width = std::sqrt(std::max(0.0, dot(a.grad, pg)));
    out.lower = std::max(out.lower, a.value - width);
    if (width == 0.0) break;
    if (out.value - out.lower <= tol * std::max(1.0, std::abs(out.value))) break;
    const Vec step = pg / width;
    x -= step / (dn + 1.0);
    P = (dn * dn / (dn * dn - 1.0)) * (P - (2.0 / (dn + 1.0)) * Mat::outer(step, step));
    P = 0.5 * (P + transpose(P));
  }
  out.lower = std::min(out.lower, out.value);
  return out;
}

namespace {

double sigma_min(const Mat& B) { return std::sqrt(std::max(0.0, min_eigenvalue(transpose(B) * B))); }

// Radius of a ball around c that holds every x with |B(x - c)|^2 <= value.
double reach(const Mat& B, double value) {
  const double s = sigma_min(B);
  if (!(s > 0.0)) throw Error(ErrorCode::Singular, "lattice basis is singular");
  return 1.01 * std::sqrt(std::max(0.0, value)) / s + 1e-9;
}

double bound_over(const Mat& B, const Vec& c, std::span<const ConvexQuadratic> fns) {
  double start = 0.0;
  for (const auto& f : fns) start = std::max(start, f(c));
  return minimize_max(fns, c, reach(B, start)).value;
}

void check_basis(const Mat& B, std::size_t n) {
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  if (B.rows() != n || B.cols() != n) throw Error(ErrorCode::DimMismatch, "basis must be n x n");
  (void)inverse(B);
}

}  // namespace

double shortest_vector_lower_bound(const Mat& B) { return sigma_min(B); }

CvpReport demo_cvp(const Mat& B, const Vec& c) {
  const std::size_t n = c.size();
  check_basis(B, n);
  const ConvexBody body = ConvexBody::paraboloid(B, c);
  const ConvexQuadratic base = paraboloid_quadratic(B, c);

  CvpReport out;
  std::vector<ConvexQuadratic> all{base};
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = std::floor(c[k]), hi = std::ceil(c[k]);
    if (lo == hi) continue;
    CutResult res = split_cut(body, {Vec::unit(n, k), 0.0, lo, hi});
    const ConvexQuadratic h = cut_quadratic(std::get<QuadraticCut>(res.cut));
    const ConvexQuadratic pair[] = {base, h};
    out.per_coordinate.push_back(bound_over(B, c, pair));
    out.coordinates.push_back(k);
    out.cuts.push_back(std::move(res));
    all.push_back(h);
  }
  out.combined = all.size() == 1 ? 0.0 : bound_over(B, c, all);
  return out;
}

SvpReport demo_svp(const Mat& B, double radius) {
  const std::size_t n = B.rows();
  check_basis(B, n);
  const Vec origin(n);
  const ConvexBody body = ConvexBody::paraboloid(B, origin);
  const ConvexQuadratic base = paraboloid_quadratic(B, origin);

  SvpReport out;
  std::vector<Vec> normals;
  for (std::size_t i = 0; i < n; ++i) {
    normals.push_back(Vec::unit(n, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      normals.push_back(Vec::unit(n, i) + Vec::unit(n, j));
      normals.push_back(Vec::unit(n, i) - Vec::unit(n, j));
    }
  }
  std::vector<ConvexQuadratic> split_fns{base};
  for (const Vec& pi : normals)
    for (int k = -2; k <= 1; ++k) {
      const CutResult res = split_cut(body, {pi, 0.0, double(k), double(k + 1)});
      ++out.split_cuts;
      if (eval_cut(res.cut, {origin, 0.0}) > 1e-12) out.futile = false;
      if (const auto* q = std::get_if<QuadraticCut>(&res.cut)) split_fns.push_back(cut_quadratic(*q));
    }
  out.split_bound = minimize_max(split_fns, origin, reach(B, 1.0)).value;

  out.radius = radius > 0.0 ? radius : shortest_vector_lower_bound(B);
  out.cut = intersection_cut_quadratic(B, origin, B, origin, -out.radius * out.radius, 0.0);
  const ConvexQuadratic pair[] = {base, cut_quadratic(std::get<QuadraticCut>(out.cut))};
  out.bound = bound_over(B, origin, pair);
  return out;
}

}  // namespace qcut
