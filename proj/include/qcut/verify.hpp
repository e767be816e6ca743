#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qcut/interscuts.hpp"
#include "qcut/model.hpp"

namespace qcut {

// {(x, t) : gamma t + q <= -|A(x - d)|^2}
struct QuadraticForbidden {
  Mat A;
  Vec d;
  double q = 0.0;
  double gamma = 0.0;
};

// {x : |B(x - c)|^2 >= r2}
struct EllipsoidExterior {
  Mat B;
  Vec c;
  double r2 = 1.0;
};

// Region whose interior is removed from the body.
using Forbidden = std::variant<SplitDisjunction, QuadraticForbidden, EllipsoidExterior, AggregationForm>;

bool in_forbidden_interior(const Forbidden& region, const Point& pt);

struct SampleConfig {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::vector<std::pair<double, double>> box;  // one range per x coordinate
  double t_cap = 10.0;
  double boundary_fraction = 0.5;  // share of samples pushed onto the boundary
};

// Box around the body and the region, with t_cap at four times the largest boundary value.
SampleConfig default_sample_config(const ConvexBody& body, const Forbidden* region, std::uint64_t seed,
                                   std::size_t count);

// Deterministic for a fixed seed. Throws EmptySample if nothing is accepted.
std::vector<Point> sample_body(const ConvexBody& body, const SampleConfig& cfg);

using PointFn = std::function<double(const Point&)>;

// Points of body and cut lying strictly inside the forbidden region, half of them on the
// boundary of body and cut when cfg.boundary_fraction = 0.5.
std::vector<Point> sample_cut_region(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                                     const SampleConfig& cfg);

struct VerifyReport {
  std::size_t checked = 0;
  double max_violation = 0.0;
  Point worst_point;
  bool pass = true;
};

VerifyReport check_points(std::span<const Point> points, const Forbidden& region, const PointFn& cut, double tol);
VerifyReport check_validity(const ConvexBody& body, const Forbidden& region, const Cut& cut, const SampleConfig& cfg,
                            double tol = 1e-7);
VerifyReport check_validity(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                            const SampleConfig& cfg, double tol = 1e-7);

// Plane of a two-dimensional instance: (x1, x2) for level sets in R^2, (x, t) for epigraphs in R^1.
struct Window {
  double x0, x1, y0, y1;
};

Point plane_point(const ConvexBody& body, double a, double b);
Window default_window(const ConvexBody& body);

// Convex hull of the grid points of body minus the open region.
class HullOracle {
 public:
  HullOracle(Window w, double hx, double hy, std::vector<std::array<double, 2>> lattice_vertices);

  bool empty() const { return verts_.empty(); }
  bool contains(double a, double b) const;
  // Vertices in plane coordinates, counter-clockwise.
  std::vector<std::array<double, 2>> vertices() const;

  bool contains_lattice(double i, double j) const;

 private:
  Window w_;
  double hx_, hy_;
  std::vector<std::array<double, 2>> verts_;  // grid-index coordinates
};

HullOracle hull_oracle_2d(const ConvexBody& body, const Forbidden& region, std::size_t nx, std::size_t ny,
                          const Window& w);

struct OracleGrid {
  Window window;
  std::size_t points = 300;  // per axis
  double band = 2.0;         // in grid cells
  // Extra grid cells added around the window while collecting the oracle.
  std::size_t margin_left = 0, margin_right = 0, margin_bottom = 0, margin_top = 0;
};

struct OracleComparison {
  std::size_t compared = 0;
  std::size_t too_big = 0;    // inside body and cut, outside the hull
  std::size_t too_small = 0;  // inside the hull, cut away
  std::size_t near_boundary = 0;

  std::size_t mismatches() const { return too_big + too_small; }
};

OracleComparison compare_to_oracle(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                                   const OracleGrid& grid);
OracleComparison compare_to_oracle(const ConvexBody& body, const Forbidden& region, const Cut& cut,
                                   const OracleGrid& grid);

}  // namespace qcut
