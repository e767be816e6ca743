#include "qcut/interscuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcut/error.hpp"
#include "qcut/splitcuts.hpp"

namespace qcut {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + transpose(m)); }

bool is_zero(const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (double v : m.row(i))
      if (v != 0.0) return false;
  return true;
}

void check_square(const Mat& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimMismatch, what);
}

// Constant cut 'value <= 0'.
Cut constant_cut(double value) {
  if (value <= 0.0) return NoCut{};
  return EmptyHull{};
}

}  // namespace

double Piece::operator()(double s) const {
  if (const auto* q = std::get_if<QuadraticPiece>(&g_)) return q->kappa * s * s;
  return std::get<Evaluator>(g_)(s);
}

double AggregationForm::F(const Vec& x) const {
  double acc = dot(m, x) + r;
  for (std::size_t i = 0; i < pieces.size(); ++i) acc += pieces[i](dot(directions[i], x));
  return acc;
}

double AggregationForm::G(const Vec& x) const {
  double acc = -dot(l, x) - q;
  for (std::size_t i = 0; i < pieces.size(); ++i) acc -= alpha[i] * pieces[i](dot(directions[i], x));
  return acc;
}

void AggregationForm::validate() const {
  const std::size_t n = dim();
  const std::size_t k = directions.size();
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  if (k == 0 || pieces.size() != k || alpha.size() != k)
    throw Error(ErrorCode::InvalidInput, "directions, pieces and weights must have the same length");
  if (l.size() != n) throw Error(ErrorCode::DimMismatch, "l has wrong dimension");
  for (const Vec& a : directions) {
    if (a.size() != n) throw Error(ErrorCode::DimMismatch, "direction has wrong dimension");
    if (max_abs(a) == 0.0) throw Error(ErrorCode::InvalidInput, "zero direction");
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (std::abs(dot(directions[i], directions[j])) > 1e-9 * norm2(directions[i]) * norm2(directions[j]))
        throw Error(ErrorCode::InvalidInput, "directions must be mutually orthogonal");
  for (std::size_t i = 0; i < k; ++i)
    if (pieces[i].quadratic() && pieces[i].kappa() < 0.0)
      throw Error(ErrorCode::InvalidInput, "quadratic pieces need kappa >= 0");
  const double top = alpha[k - 1];
  if (!(top > 0.0)) throw Error(ErrorCode::BadWeights, "the last weight must be positive");
  for (double a : alpha) {
    if (!(a >= 0.0)) throw Error(ErrorCode::BadWeights, "weights must be nonnegative");
    if (a > top * (1.0 + 1e-12)) throw Error(ErrorCode::BadWeights, "the last weight must be the largest");
  }
  if (!(1.0 + gamma / top > 0.0)) throw Error(ErrorCode::InvalidInput, "1 + gamma/alpha_n must be positive");
}

Aggregate::Aggregate(AggregationForm form, bool level_set) : form_(std::move(form)), level_set_(level_set) {
  form_.validate();
}

double Aggregate::operator()(const Vec& x) const {
  const std::size_t k = form_.pieces.size();
  const double top = form_.alpha[k - 1];
  double acc = dot(form_.m - form_.l / top, x) + form_.r - form_.q / top;
  for (std::size_t i = 0; i + 1 < k; ++i)
    acc += (1.0 - form_.alpha[i] / top) * form_.pieces[i](dot(form_.directions[i], x));
  if (level_set_) return acc;
  return acc / (1.0 + form_.gamma / top);
}

double Aggregate::t_slope() const {
  const double top = form_.alpha.back();
  const double lin = dot(form_.m - form_.l / top, form_.directions.back());
  if (level_set_) return lin;
  return lin / (1.0 + form_.gamma / top);
}

bool recession_ok(const AggregationForm& form) {
  form.validate();
  const Piece& last = form.pieces.back();
  if (last.quadratic()) return last.kappa() > 0.0;

  const Vec& an = form.directions.back();
  const double top = form.alpha.back();
  const double slope = dot(form.m - form.l / top, an) / (1.0 + form.gamma / top);
  const double drift = dot(form.l, an) + form.gamma * slope;
  const double stretch = norm_sq(an);
  auto phi = [&](double s) { return -top * last(s * stretch) - s * drift; };
  for (double sign : {1.0, -1.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8; ++k) {
      const double v = phi(sign * std::pow(10.0, k));
      if (std::isnan(v) || !(v < prev)) return false;
      prev = v;
    }
    if (!(prev < -1e6)) return false;
  }
  return true;
}

Aggregate aggregate_epigraph_function(const AggregationForm& form) {
  form.validate();
  if (!recession_ok(form)) throw Error(ErrorCode::RecessionFailure, "forbidden region fails the recession test");
  return Aggregate(form, false);
}

Cut aggregate_epigraph(const AggregationForm& form) {
  const Aggregate agg = aggregate_epigraph_function(form);
  for (const Piece& p : form.pieces)
    if (!p.quadratic()) throw Error(ErrorCode::UnsupportedCombination, "closed form needs quadratic pieces");
  const std::size_t n = form.dim();
  const std::size_t k = form.pieces.size();
  const double top = form.alpha.back();
  const double scale = 1.0 / (1.0 + form.gamma / top);
  Mat E(n, n);
  for (std::size_t i = 0; i + 1 < k; ++i)
    E += (scale * (1.0 - form.alpha[i] / top) * form.pieces[i].kappa()) *
         Mat::outer(form.directions[i], form.directions[i]);
  return QuadraticCut{std::move(E), scale * (form.m - form.l / top), scale * (form.r - form.q / top), 1.0};
}

Aggregate aggregate_levelset_function(const AggregationForm& form) {
  form.validate();
  if (form.gamma != 0.0) throw Error(ErrorCode::InvalidInput, "level-set aggregation needs gamma = 0");
  const double top = form.alpha.back();
  const Vec diff = form.l - top * form.m;
  if (max_abs(diff) > 1e-9 * std::max(1.0, max_abs(form.l)))
    throw Error(ErrorCode::InvalidInput, "level-set aggregation needs l = alpha_n m");
  return Aggregate(form, true);
}

Cut aggregate_levelset(const AggregationForm& form) {
  const Aggregate agg = aggregate_levelset_function(form);
  for (const Piece& p : form.pieces)
    if (!p.quadratic()) throw Error(ErrorCode::UnsupportedCombination, "closed form needs quadratic pieces");
  const std::size_t n = form.dim();
  const std::size_t k = form.pieces.size();
  const double top = form.alpha.back();
  Mat E(n, n);
  for (std::size_t i = 0; i + 1 < k; ++i)
    E += ((1.0 - form.alpha[i] / top) * form.pieces[i].kappa()) * Mat::outer(form.directions[i], form.directions[i]);
  const double f = form.r - form.q / top;
  if (is_zero(E)) return constant_cut(f);
  return QuadraticCut{std::move(E), Vec(n), f, 0.0};
}

Cut intersection_cut_quadratic(const Mat& B, const Vec& c, const Mat& A, const Vec& d, double q, double gamma) {
  const std::size_t n = c.size();
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  check_square(B, n, "B must be n x n");
  if (A.cols() != n || d.size() != n) throw Error(ErrorCode::DimMismatch, "A and d must match the body dimension");
  const Mat binv = inverse(B);
  const Mat ab = A * binv;
  const EigenDecomposition eig = eig_sym(symmetrize(transpose(ab) * ab));
  const double top = std::max(0.0, eig.values[n - 1]);

  const Vec u = B * (c - d);
  Mat H(n, n);
  Vec e(n);
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec v = eig.vectors.col(i);
    const double ai = std::max(0.0, eig.values[i]);
    const double proj = dot(v, u);
    if (i + 1 < n) H += (top - ai) * Mat::outer(v, v);
    e += (ai * proj) * v;
    w += ai * proj * proj;
  }
  const Mat bt = transpose(B);
  const Mat E = symmetrize(bt * H * B);
  const Vec bte = bt * e;
  const Vec a = -2.0 * bte - 2.0 * (E * c);
  const double f = quad_form(E, c) + 2.0 * dot(bte, c) - w - q;
  const double gt = top + gamma;
  if (is_zero(E) && gt == 0.0) return constant_cut(f);
  if (gt <= 0.0 && !is_zero(E))
    throw Error(ErrorCode::UnsupportedCombination, "alpha_n + gamma must be positive");
  return QuadraticCut{E, a, f, gt};
}

Cut concentric_ellipsoid_cut(const Mat& B, const Vec& c, double r1, double r2) {
  const std::size_t n = c.size();
  if (n == 0 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "dimension must be in 1..64");
  check_square(B, n, "B must be n x n");
  (void)inverse(B);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::InvalidInput, "radii must be positive");
  if (r2 > r1) return NoCut{};
  const Mat btb = symmetrize(transpose(B) * B);
  return QuadraticCut{btb, -2.0 * (btb * c), quad_form(btb, c) - r2, 0.0};
}

AggregationForm strip_aggregation_form(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1) {
  const StandardSplit st = standardize(B, c, {pi, 0.0, pi0, pi1});
  if (!(pi0 < pi1)) throw Error(ErrorCode::InvalidInput, "split requires pi0 < pi1");
  const double nu = norm_sq(st.pi);
  if (nu == 0.0) throw Error(ErrorCode::ZeroVector, "split normal is zero");
  const std::size_t n = c.size();

  AggregationForm form;
  form.directions = orthonormal_complement(st.pi);
  form.directions.push_back(st.pi / std::sqrt(nu));
  form.pieces.assign(n, QuadraticPiece{1.0});
  form.alpha = Vec(n);
  form.alpha[n - 1] = nu;
  form.m = Vec(n);
  // G(y) = -(pi.y - u0)(pi.y - u1)
  form.l = -(st.pi0 + st.pi1) * st.pi;
  form.q = st.pi0 * st.pi1;
  return form;
}

Cut strip_intersection_cut(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1) {
  return lift_affine(aggregate_epigraph(strip_aggregation_form(B, c, pi, pi0, pi1)), B, c);
}

double QuadForm::operator()(const Point& pt) const {
  return quad_form(Q, pt.x) + dot(lin, pt.x) + cnst - tcoef * pt.t;
}

QuadForm combine(const QuadForm& f, const QuadForm& g, double lambda) {
  return {(1.0 - lambda) * f.Q + lambda * g.Q, (1.0 - lambda) * f.lin + lambda * g.lin,
          (1.0 - lambda) * f.cnst + lambda * g.cnst, (1.0 - lambda) * f.tcoef + lambda * g.tcoef};
}

double max_convex_lambda(const Mat& qf, const Mat& qg) {
  if (!qf.square() || qf.rows() != qg.rows() || qf.cols() != qg.cols())
    throw Error(ErrorCode::DimMismatch, "forms must be square and of equal size");
  const double scale = std::max({1.0, frobenius(qf), frobenius(qg)});
  const double slack = -1e-12 * scale;
  if (min_eigenvalue(qf) < slack) throw Error(ErrorCode::InvalidInput, "first form must be convex");
  if (min_eigenvalue(qg) >= slack) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (min_eigenvalue((1.0 - mid) * qf + mid * qg) >= slack)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

QuadForm squared_norm_cut(const NormCut& cut) {
  if (cut.p != 2.0 || cut.h != 0.0)
    throw Error(ErrorCode::UnsupportedCombination, "squaring needs a two-norm cut without t");
  const Mat mt = transpose(cut.M);
  return {symmetrize(mt * cut.M) - Mat::outer(cut.q, cut.q), 2.0 * (mt * cut.m) - (2.0 * cut.k) * cut.q,
          dot(cut.m, cut.m) - cut.k * cut.k, 0.0};
}

std::optional<AggregationMatch> match_aggregation(const QuadForm& f, const QuadForm& g, const QuadForm& target,
                                                  double tol) {
  auto flatten = [](const QuadForm& h) {
    std::vector<double> out;
    for (std::size_t i = 0; i < h.Q.rows(); ++i)
      for (double v : h.Q.row(i)) out.push_back(v);
    out.insert(out.end(), h.lin.begin(), h.lin.end());
    out.push_back(h.cnst);
    out.push_back(h.tcoef);
    return Vec(std::move(out));
  };
  const Vec vf = flatten(f), vg = flatten(g), vt = flatten(target);
  if (vf.size() != vg.size() || vf.size() != vt.size()) throw Error(ErrorCode::DimMismatch, "forms differ in size");

  // lambda (g - f) - scale target = -f, solved by a two-column QR
  const Vec u = vg - vf;
  const Vec w = -vt;
  const Vec rhs = -vf;
  const double r11 = norm2(u);
  if (r11 == 0.0) return std::nullopt;
  const Vec q1 = u / r11;
  const double r12 = dot(q1, w);
  const Vec w2 = w - r12 * q1;
  const double r22 = norm2(w2);
  if (r22 <= 1e-14 * std::max(1.0, norm2(w))) return std::nullopt;
  const Vec q2 = w2 / r22;
  const double scale = dot(q2, rhs) / r22;
  const double lambda = (dot(q1, rhs) - r12 * scale) / r11;
  const double residual = norm2(lambda * u + scale * w - rhs) / std::max(1.0, norm2(rhs));
  if (residual > tol) return std::nullopt;
  return AggregationMatch{lambda, scale, residual};
}

}  // namespace qcut
