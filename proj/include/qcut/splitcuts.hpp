#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "qcut/model.hpp"

namespace qcut {

// Line through (pi0, f0) and (pi1, f1): a u + b.
struct Secant {
  double a;
  double b;
};

Secant secant_coeffs(double f0, double f1, double pi0, double pi1);

// |a u + b| meets |u| at u = pi0 and u = pi1 and dominates it in between.
Secant homogeneous_coeffs(double pi0, double pi1);

// Split data expressed for y = B(x - c): pi -> B^{-T} pi, pi_i -> pi_i - pi.c.
struct StandardSplit {
  Vec pi;
  double pi_hat = 0.0;
  double pi0 = 0.0;
  double pi1 = 0.0;
};

StandardSplit standardize(const Mat& B, const Vec& c, const SplitDisjunction& split);

// |(P_perp + a P) x + (b/nu) pi| <= c pi.x + d t + e, for a split with normal (pi, pi_hat)
// and nu = |pi|^2. The paraboloid variant has a = 1 and b = nu / (2 pi_hat).
struct ConicCoeffs {
  double a, b, c, d, e, f;
};

ConicCoeffs paraboloid_conic_coeffs(double nu, double pi_hat, double pi0, double pi1);
ConicCoeffs cone_conic_coeffs(double nu, double pi_hat, double pi0, double pi1);
// a = 0 in the symmetric case.
Secant hyperboloid_coeffs(double l, double nu, double pi0, double pi1);

CutResult split_cut_p_cone(std::size_t n, std::size_t axis, double p, double pi0, double pi1);
CutResult split_cut_p_ball(std::size_t n, std::size_t axis, double p, double r, double pi0, double pi1);

CutResult split_cut_paraboloid_simple(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1);
CutResult split_cut_cone_simple(const Mat& B, const Vec& c, const Vec& pi, double pi0, double pi1);
CutResult split_cut_ellipsoid(const Mat& B, const Vec& c, double r, const Vec& pi, double pi0, double pi1);

// Standard bodies only (B = I, c = 0).
CutResult split_cut_paraboloid_general(const Vec& pi, double pi_hat, double pi0, double pi1);
CutResult split_cut_cone_general(const Vec& pi, double pi_hat, double pi0, double pi1);
CutResult split_cut_hyperboloid(double l, const Vec& pi, double pi0, double pi1);

// Rewrites a cut stated in y = B(x - c) as a cut in x.
Cut lift_affine(const Cut& cut, const Mat& B, const Vec& c);

CutResult split_cut(const ConvexBody& body, const SplitDisjunction& split);

// Body extended by free coordinates; the split must not touch them.
CutResult split_cut_cylinder(const ConvexBody& base, std::span<const std::size_t> free_coords,
                             const SplitDisjunction& split);

// Cut for {x : g(P x) + f(pi.x) <= t} with g positively homogeneous and convex,
// f convex. Evaluated only numerically.
class SeparableSplitCut {
 public:
  using Outer = std::function<double(const Vec&)>;
  using Inner = std::function<double(double)>;

  SeparableSplitCut(Outer g, Inner f, Vec pi, double pi0, double pi1);

  double body(const Point& pt) const;
  double cut(const Point& pt) const;
  double slope() const { return line_.a; }
  double intercept() const { return line_.b; }

 private:
  Outer g_;
  Inner f_;
  Vec pi_;
  double nu_;
  Secant line_;
};

}  // namespace qcut
