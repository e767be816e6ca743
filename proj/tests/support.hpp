#pragma once

// Random instances and brute-force helpers shared by the unit and acceptance tests.

#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "qcut/linalg.hpp"
#include "qcut/model.hpp"

namespace qcut::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }
  double sign() { return coin() ? 1.0 : -1.0; }

  Vec normal_vec(std::size_t n, double scale = 1.0) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = scale * normal();
    return v;
  }

  Vec unit_vec(std::size_t n) {
    Vec v = normal_vec(n);
    return v / norm2(v);
  }

  // Well conditioned: I + small perturbation, scaled.
  Mat matrix(std::size_t n) {
    Mat m = Mat::identity(n);
    const double s = uniform(0.6, 1.6);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = s * (m(i, j) + 0.35 * normal() / std::sqrt(double(n)));
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Root of phi on [lo, hi] by bisection; phi(lo) and phi(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& phi, double lo, double hi) {
  double flo = phi(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phi(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// First sign change of phi scanning [lo, hi] in 'steps' pieces.
inline std::optional<double> find_root(const std::function<double(double)>& phi, double lo, double hi,
                                       int steps = 400) {
  double prev = phi(lo);
  double a = lo;
  for (int k = 1; k <= steps; ++k) {
    const double b = lo + (hi - lo) * k / steps;
    const double cur = phi(b);
    if (prev == 0.0) return a;
    if ((prev < 0.0) != (cur < 0.0)) return bisect(phi, a, b);
    prev = cur;
    a = b;
  }
  return std::nullopt;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

inline double max_abs_diff(const Vec& a, const Vec& b) { return max_abs(a - b); }

}  // namespace qcut::testing

namespace qcut::testing {

struct SplitInstance {
  ConvexBody body;
  SplitDisjunction split;
};

// Random body of the given family with a split that usually cuts through it.
// with_t asks for a split on (x, t); only paraboloids and cones honour it.
inline SplitInstance random_split_instance(Family family, std::size_t n, Rng& rng, bool with_t = false) {
  SplitInstance out;
  const Mat B = rng.matrix(n);
  const Vec c = rng.normal_vec(n);
  switch (family) {
    case Family::Paraboloid: out.body = ConvexBody::paraboloid(B, c); break;
    case Family::Cone: out.body = ConvexBody::cone(B, c); break;
    case Family::Ellipsoid: out.body = ConvexBody::ellipsoid(B, c, rng.uniform(0.5, 2.0)); break;
    case Family::SquaredEllipsoid: out.body = ConvexBody::squared_ellipsoid(B, c, rng.uniform(0.5, 3.0)); break;
    case Family::Hyperboloid: out.body = ConvexBody::hyperboloid(B, c, rng.uniform(0.3, 2.0)); break;
    case Family::PCone:
    case Family::PBall: {
      const double ps[] = {1.0, 1.5, 2.0, 3.0};
      const double p = ps[rng.integer(0, 3)];
      out.body = family == Family::PCone ? ConvexBody::p_cone(n, p, c) : ConvexBody::p_ball(n, p, rng.uniform(0.5, 2.0), c);
      const std::size_t axis = std::size_t(rng.integer(0, int(n) - 1));
      const double sigma = rng.sign() * rng.uniform(0.5, 2.0);
      const double r = out.body.r;
      double lo, hi;
      if (family == Family::PBall) {
        lo = rng.uniform(-0.9, 0.6) * r;
        hi = std::min(lo + rng.uniform(0.1, 0.8) * r, 0.95 * r);
      } else {
        lo = rng.uniform(-1.5, 0.5);
        hi = lo + rng.uniform(0.1, 1.5);
      }
      out.split.pi = sigma * Vec::unit(n, axis);
      const double base = sigma * c[axis];
      out.split.pi0 = base + (sigma > 0 ? sigma * lo : sigma * hi);
      out.split.pi1 = base + (sigma > 0 ? sigma * hi : sigma * lo);
      return out;
    }
  }
  SplitDisjunction& s = out.split;
  s.pi = rng.normal_vec(n);
  const bool t_ok = with_t && (family == Family::Paraboloid || family == Family::Cone);
  s.pi_hat = t_ok ? rng.sign() * rng.uniform(0.2, 1.5) : 0.0;
  const double len = norm2(s.pi);
  double mid = dot(s.pi, c) + rng.uniform(-0.8, 0.8) * len;
  if (t_ok) mid += s.pi_hat * rng.uniform(0.0, 2.0);
  const double half = rng.uniform(0.1, 1.0) * len;
  s.pi0 = mid - half;
  s.pi1 = mid + half;
  return out;
}

}  // namespace qcut::testing
