#pragma once

#include <span>
#include <vector>

#include "qcut/model.hpp"

namespace qcut {

// x.Q x + lin.x + cnst with Q positive semidefinite.
struct ConvexQuadratic {
  Mat Q;
  Vec lin;
  double cnst = 0.0;

  double operator()(const Vec& x) const;
  Vec gradient(const Vec& x) const;
};

// Quadratic of |B(x - c)|^2.
ConvexQuadratic paraboloid_quadratic(const Mat& B, const Vec& c);
// (x.E x + a.x + f) / gamma_t; needs gamma_t > 0.
ConvexQuadratic cut_quadratic(const QuadraticCut& cut);

struct MinMaxResult {
  Vec x;
  double value = 0.0;
  double lower = 0.0;  // certified lower bound
};

// Minimizes the pointwise maximum over the ball |x - center| <= radius with the
// central-cut ellipsoid method. Approximate to roughly tol.
MinMaxResult minimize_max(std::span<const ConvexQuadratic> fns, const Vec& center, double radius, double tol = 1e-10);

struct CvpReport {
  std::vector<CutResult> cuts;          // one per fractional coordinate
  std::vector<std::size_t> coordinates;  // coordinate of each cut
  std::vector<double> per_coordinate;   // bound from body plus that single cut
  double combined = 0.0;                // bound from body plus all cuts
  double relaxation = 0.0;              // bound without cuts
};

// min t over |B(x - c)|^2 <= t strengthened by the elementary splits around c.
CvpReport demo_cvp(const Mat& B, const Vec& c);

struct SvpReport {
  std::size_t split_cuts = 0;
  bool futile = true;       // the origin satisfied every split cut
  double split_bound = 0.0;
  double radius = 0.0;
  Cut cut;
  double bound = 0.0;
};

// Smallest singular value of B; a lower bound on the shortest nonzero lattice vector.
double shortest_vector_lower_bound(const Mat& B);

// radius <= 0 selects shortest_vector_lower_bound(B).
SvpReport demo_svp(const Mat& B, double radius = 0.0);

}  // namespace qcut
