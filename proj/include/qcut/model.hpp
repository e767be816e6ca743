#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "qcut/linalg.hpp"

namespace qcut {

// Families of closed convex sets. Epigraphical families live in (x, t) space.
enum class Family {
  Paraboloid,        // |B(x-c)|^2 <= t
  Cone,              // |B(x-c)| <= t
  Ellipsoid,         // |B(x-c)| <= r
  SquaredEllipsoid,  // |B(x-c)|^2 <= r
  Hyperboloid,       // sqrt(|B(x-c)|^2 + l^2) <= t
  PCone,             // |x-c|_p <= t
  PBall,             // |x-c|_p <= r
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);
bool is_epigraphical(Family f);

struct Point {
  Vec x;
  double t = 0.0;
};

struct ConvexBody {
  Family family = Family::Paraboloid;
  std::size_t n = 0;
  Mat B;
  Vec c;
  double r = 1.0;
  double l = 1.0;
  double p = 2.0;

  static ConvexBody paraboloid(Mat B, Vec c);
  static ConvexBody cone(Mat B, Vec c);
  static ConvexBody ellipsoid(Mat B, Vec c, double r);
  static ConvexBody squared_ellipsoid(Mat B, Vec c, double r);
  static ConvexBody hyperboloid(std::size_t n, double l);
  static ConvexBody hyperboloid(Mat B, Vec c, double l);
  static ConvexBody p_cone(std::size_t n, double p, Vec c = {});
  static ConvexBody p_ball(std::size_t n, double p, double r, Vec c = {});

  bool epigraphical() const { return is_epigraphical(family); }
  // Throws InvalidInput, DimMismatch or Singular.
  void validate() const;
};

// Signed defect: <= 0 inside. Epigraphs use F(x) - t, level sets use the family's native form.
double eval_body(const ConvexBody& body, const Point& pt);

struct SplitDisjunction {
  Vec pi;
  double pi_hat = 0.0;
  double pi0 = 0.0;
  double pi1 = 1.0;

  double value(const Point& pt) const;
  void validate() const;
};

enum class SplitSide { Below, Inside, Above };

std::string_view to_string(SplitSide s);

double scaled_tol(double base, double a, double b);

SplitSide split_position(const SplitDisjunction& split, const Point& pt, double tol = 1e-9);

// |M x + m|_p <= q.x + h t + k
struct NormCut {
  Mat M;
  Vec m;
  double p = 2.0;
  Vec q;
  double h = 0.0;
  double k = 0.0;
};

// x.E x + a.x + f <= gamma_t t
struct QuadraticCut {
  Mat E;
  Vec a;
  double f = 0.0;
  double gamma_t = 0.0;
};

enum class Sense { LessEq, GreaterEq };

// g.x + h t (<= or >=) k
struct LinearCut {
  Vec g;
  double h = 0.0;
  double k = 0.0;
  Sense sense = Sense::LessEq;
};

struct NoCut {};
struct EmptyHull {};

using Cut = std::variant<NormCut, QuadraticCut, LinearCut, NoCut, EmptyHull>;

// Signed defect of the cut at pt: <= 0 when satisfied. NoCut is -inf, EmptyHull is +inf.
double eval_cut(const Cut& cut, const Point& pt);

enum class CaseLabel {
  ParaboloidSimple,
  ParaboloidNoCut,
  ParaboloidLinearHi,
  ParaboloidLinearLo,
  ParaboloidConic,
  ConeSimple,
  ConeSimpleNoCut,
  ConeNoCut,
  ConeLinearLo,
  ConeLinearHi,
  ConeConic,
  EllipsoidProper,
  EllipsoidCGAbove,
  EllipsoidCGBelow,
  EllipsoidNoCut,
  EllipsoidEmpty,
  HyperSymmetric,
  HyperAsymmetric,
  PConeProper,
  PConeNoCut,
  PBallProper,
  IntersectionQuadratic,
  Aggregation,
  AggregationNoCut,
  AggregationEmpty,
  Concentric,
  ConcentricNoCut,
};

std::string_view to_string(CaseLabel c);
CaseLabel case_from_string(std::string_view s);

struct CutResult {
  Cut cut;
  CaseLabel label;
};

}  // namespace qcut
