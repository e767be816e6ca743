#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qcut/model.hpp"

namespace qcut {

// g(s) = kappa s^2
struct QuadraticPiece {
  double kappa = 1.0;
};

// One convex univariate term g_i of F(x) = sum g_i(a_i.x) + m.x + r.
class Piece {
 public:
  using Evaluator = std::function<double(double)>;

  Piece(QuadraticPiece q) : g_(q) {}  // NOLINT(implicit)
  Piece(Evaluator f) : g_(std::move(f)) {}  // NOLINT(implicit)

  double operator()(double s) const;
  bool quadratic() const { return std::holds_alternative<QuadraticPiece>(g_); }
  double kappa() const { return std::get<QuadraticPiece>(g_).kappa; }

 private:
  std::variant<QuadraticPiece, Evaluator> g_;
};

// F(x) = sum g_i(a_i.x) + m.x + r and G(x) = -sum alpha_i g_i(a_i.x) - l.x - q.
// The forbidden region is {(x, t) : gamma t <= G(x)}; its interior is removed.
// The last direction carries the largest weight.
struct AggregationForm {
  std::vector<Vec> directions;
  std::vector<Piece> pieces;
  Vec alpha;
  Vec m;
  Vec l;
  double r = 0.0;
  double q = 0.0;
  double gamma = 0.0;

  std::size_t dim() const { return m.size(); }
  double F(const Vec& x) const;
  double G(const Vec& x) const;
  // Throws InvalidInput or BadWeights.
  void validate() const;
};

// The convex function H of the aggregated cut, usable with evaluator pieces.
class Aggregate {
 public:
  Aggregate(AggregationForm form, bool level_set);
  double operator()(const Vec& x) const;
  const AggregationForm& form() const { return form_; }
  bool level_set() const { return level_set_; }
  // Slope of H along the last direction, per unit step in that direction.
  double t_slope() const;

 private:
  AggregationForm form_;
  bool level_set_;
};

bool recession_ok(const AggregationForm& form);

// H(x) <= t with H = (F + G/alpha_n) / (1 + gamma/alpha_n). Quadratic pieces only.
Cut aggregate_epigraph(const AggregationForm& form);
Aggregate aggregate_epigraph_function(const AggregationForm& form);

// H(x) <= 0 with H = F + G/alpha_n; needs gamma = 0 and l = alpha_n m.
Cut aggregate_levelset(const AggregationForm& form);
Aggregate aggregate_levelset_function(const AggregationForm& form);

// Paraboloid |B(x-c)|^2 <= t with the set {gamma t + q <= -|A(x-d)|^2} removed.
Cut intersection_cut_quadratic(const Mat& B, const Vec& c, const Mat& A, const Vec& d, double q, double gamma);

// Ellipsoid |B(x-c)|^2 <= r1 with {|B(x-c)|^2 >= r2} removed.
Cut concentric_ellipsoid_cut(const Mat& B, const Vec& c, double r1, double r2);

// Aggregation encoding of a paraboloid |B(x-c)|^2 <= t with the open strip pi0 < pi.x < pi1
// removed, stated in y = B(x - c).
AggregationForm strip_aggregation_form(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1);
Cut strip_intersection_cut(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1);

// x.Q x + lin.x + cnst - tcoef t
struct QuadForm {
  Mat Q;
  Vec lin;
  double cnst = 0.0;
  double tcoef = 0.0;

  double operator()(const Point& pt) const;
};

QuadForm combine(const QuadForm& f, const QuadForm& g, double lambda);

// Largest lambda in [0, 1] keeping (1 - lambda) QF + lambda QG positive semidefinite.
double max_convex_lambda(const Mat& qf, const Mat& qg);

// |M x + m|^2 - (q.x + k)^2 for a two-norm cut without t.
QuadForm squared_norm_cut(const NormCut& cut);

struct AggregationMatch {
  double lambda;
  double scale;  // (1 - lambda) F + lambda G = scale * target
  double residual;
};

std::optional<AggregationMatch> match_aggregation(const QuadForm& f, const QuadForm& g, const QuadForm& target,
                                                  double tol = 1e-9);

}  // namespace qcut
