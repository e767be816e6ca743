#include "qcut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qcut/error.hpp"
#include "qcut/splitcuts.hpp"

namespace qcut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<std::array<double, 2>> monotone_chain(std::vector<std::array<double, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<std::array<double, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Half-widths of {x : |B(x - c)| <= rho} along each axis, per unit rho.
Vec axis_reach(const Mat& B) {
  const Mat binv = inverse(B);
  Vec out(B.rows());
  for (std::size_t i = 0; i < B.rows(); ++i) out[i] = norm_p(binv.row(i), 2.0);
  return out;
}

double box_max_of(const ConvexBody& body, const std::vector<std::pair<double, double>>& box) {
  const std::size_t n = box.size();
  if (n <= 10) {
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? box[i].second : box[i].first;
      best = std::max(best, eval_body(body, {x, 0.0}));
    }
    return best;
  }
  Vec far(n);
  for (std::size_t i = 0; i < n; ++i)
    far[i] = std::max(std::abs(box[i].first - body.c[i]), std::abs(box[i].second - body.c[i]));
  return eval_body(body, {body.c + norm2(far) * frobenius(body.B) * Vec::unit(n, 0), 0.0});
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Vec in_box(const std::vector<std::pair<double, double>>& box) {
    Vec x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) x[i] = uniform(box[i].first, box[i].second);
    return x;
  }

  Vec direction(std::size_t n) {
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = normal();
    return d;
  }

 private:
  std::mt19937_64 rng_;
};

// Last point of [from, from + hi dir] that passes member; from must pass.
template <class Member>
Vec push_to_boundary(const Vec& from, const Vec& dir, double hi, Member member) {
  double lo = 0.0;
  for (int i = 0; i < 60 && member(from + hi * dir); ++i) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (member(from + mid * dir))
      lo = mid;
    else
      hi = mid;
  }
  return from + lo * dir;
}

bool in_box(const Vec& x, const std::vector<std::pair<double, double>>& box) {
  for (std::size_t i = 0; i < box.size(); ++i)
    if (x[i] < box[i].first || x[i] > box[i].second) return false;
  return true;
}

void check_config(const ConvexBody& body, const SampleConfig& cfg) {
  if (cfg.box.size() != body.n) throw Error(ErrorCode::DimMismatch, "sampling box has wrong dimension");
  for (const auto& [lo, hi] : cfg.box)
    if (!(lo < hi)) throw Error(ErrorCode::InvalidInput, "sampling box ranges must be nonempty");
}

double box_diagonal(const std::vector<std::pair<double, double>>& box) {
  double acc = 0.0;
  for (const auto& [lo, hi] : box) acc += (hi - lo) * (hi - lo);
  return std::sqrt(acc);
}

}  // namespace

bool in_forbidden_interior(const Forbidden& region, const Point& pt) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SplitDisjunction>) {
          const double v = s.value(pt);
          return s.pi0 < v && v < s.pi1;
        } else if constexpr (std::is_same_v<T, QuadraticForbidden>) {
          return s.gamma * pt.t + s.q + norm_sq(s.A * (pt.x - s.d)) < 0.0;
        } else if constexpr (std::is_same_v<T, EllipsoidExterior>) {
          return norm_sq(s.B * (pt.x - s.c)) > s.r2;
        } else {
          return s.G(pt.x) > s.gamma * pt.t;
        }
      },
      region);
}

SampleConfig default_sample_config(const ConvexBody& body, const Forbidden* region, std::uint64_t seed,
                                   std::size_t count) {
  body.validate();
  SampleConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  const Vec reach = axis_reach(body.B);
  double rho = 1.0;
  switch (body.family) {
    case Family::Ellipsoid:
    case Family::PBall:
      rho = body.r;
      break;
    case Family::SquaredEllipsoid:
      rho = std::sqrt(body.r);
      break;
    default: {
      rho = 2.0;
      if (const auto* split = region ? std::get_if<SplitDisjunction>(region) : nullptr) {
        const StandardSplit st = standardize(body.B, body.c, *split);
        const double scale = std::max({norm2(st.pi), std::abs(st.pi_hat), 1e-12});
        rho += 2.0 * std::max(std::abs(st.pi0), std::abs(st.pi1)) / scale;
      } else if (const auto* quad = region ? std::get_if<QuadraticForbidden>(region) : nullptr) {
        rho += 2.0 * norm2(body.B * (quad->d - body.c)) + 2.0 * std::sqrt(std::abs(quad->q) + 1.0);
      }
    }
  }
  const double grow = body.epigraphical() ? 1.0 : 1.05;
  for (std::size_t i = 0; i < body.n; ++i)
    cfg.box.emplace_back(body.c[i] - grow * rho * reach[i], body.c[i] + grow * rho * reach[i]);
  if (body.epigraphical()) {
    cfg.t_cap = 4.0 * std::max(box_max_of(body, cfg.box), 1e-3);
    if (const auto* split = region ? std::get_if<SplitDisjunction>(region) : nullptr; split && split->pi_hat != 0.0)
      cfg.t_cap = std::max(cfg.t_cap, 4.0 * std::max(std::abs(split->pi0), std::abs(split->pi1)) / std::abs(split->pi_hat));
  }
  return cfg;
}

std::vector<Point> sample_body(const ConvexBody& body, const SampleConfig& cfg) {
  body.validate();
  check_config(body, cfg);
  Sampler rng(cfg.seed);
  std::vector<Point> out;
  out.reserve(cfg.count);
  const std::size_t attempts = cfg.count * 200 + 1000;
  for (std::size_t it = 0; it < attempts && out.size() < cfg.count; ++it) {
    Vec x = rng.in_box(cfg.box);
    if (body.epigraphical()) {
      const double f = eval_body(body, {x, 0.0});
      if (!(f <= cfg.t_cap)) continue;
      const double t = rng.coin(cfg.boundary_fraction) ? f : rng.uniform(f, cfg.t_cap);
      out.push_back({std::move(x), t});
    } else if (eval_body(body, {x, 0.0}) <= 0.0) {
      const Vec dir = x - body.c;
      if (rng.coin(cfg.boundary_fraction) && max_abs(dir) > 0.0) {
        Vec y = push_to_boundary(body.c, dir, 1.0, [&](const Vec& z) { return eval_body(body, {z, 0.0}) <= 0.0; });
        if (in_box(y, cfg.box)) x = std::move(y);
      }
      out.push_back({std::move(x), 0.0});
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptySample, "rejection sampling found no body points");
  return out;
}

std::vector<Point> sample_cut_region(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                                     const SampleConfig& cfg) {
  body.validate();
  check_config(body, cfg);
  Sampler rng(cfg.seed);
  std::vector<Point> out;
  out.reserve(cfg.count);
  auto member = [&](const Point& p) { return eval_body(body, p) <= 0.0 && cut(p) <= 0.0; };
  const double diag = box_diagonal(cfg.box);
  const std::size_t attempts = cfg.count * 400 + 1000;
  for (std::size_t it = 0; it < attempts && out.size() < cfg.count; ++it) {
    Vec x = rng.in_box(cfg.box);
    Point p{x, 0.0};
    if (body.epigraphical()) {
      const double f = eval_body(body, {x, 0.0});
      if (!(f <= cfg.t_cap)) continue;
      if (rng.coin(cfg.boundary_fraction)) {
        p.t = f;
        if (cut(p) > 0.0) {
          Point top{x, cfg.t_cap};
          if (cut(top) > 0.0) continue;
          double lo = f, hi = cfg.t_cap;
          for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (cut(Point{x, mid}) <= 0.0 ? hi : lo) = mid;
          }
          p.t = hi;
        }
      } else {
        p.t = rng.uniform(f, cfg.t_cap);
        if (cut(p) > 0.0) continue;
      }
    } else {
      if (!member(p)) continue;
      if (rng.coin(cfg.boundary_fraction)) {
        const Vec dir = rng.direction(body.n);
        p.x = push_to_boundary(p.x, dir / norm2(dir), diag, [&](const Vec& y) { return member({y, 0.0}); });
      }
    }
    if (in_forbidden_interior(region, p)) out.push_back(std::move(p));
  }
  return out;
}

VerifyReport check_points(std::span<const Point> points, const Forbidden& region, const PointFn& cut, double tol) {
  VerifyReport rep;
  rep.max_violation = -kInf;
  for (const Point& p : points) {
    if (in_forbidden_interior(region, p)) continue;
    ++rep.checked;
    const double v = cut(p);
    if (v > rep.max_violation || std::isnan(v)) {
      rep.max_violation = std::isnan(v) ? kInf : v;
      rep.worst_point = p;
    }
  }
  rep.pass = rep.max_violation <= tol;
  return rep;
}

VerifyReport check_validity(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                            const SampleConfig& cfg, double tol) {
  const std::vector<Point> pts = sample_body(body, cfg);
  return check_points(pts, region, cut, tol);
}

VerifyReport check_validity(const ConvexBody& body, const Forbidden& region, const Cut& cut, const SampleConfig& cfg,
                            double tol) {
  return check_validity(body, region, [&](const Point& p) { return eval_cut(cut, p); }, cfg, tol);
}

Point plane_point(const ConvexBody& body, double a, double b) {
  if (body.epigraphical() && body.n == 1) return {Vec{a}, b};
  if (!body.epigraphical() && body.n == 2) return {Vec{a, b}, 0.0};
  throw Error(ErrorCode::DimUnsupported, "oracle needs a level set in R^2 or an epigraph over R^1");
}

Window default_window(const ConvexBody& body) {
  (void)plane_point(body, 0.0, 0.0);
  const SampleConfig cfg = default_sample_config(body, nullptr, 1, 1);
  if (body.epigraphical()) return {cfg.box[0].first, cfg.box[0].second, 0.0, cfg.t_cap / 4.0};
  return {cfg.box[0].first, cfg.box[0].second, cfg.box[1].first, cfg.box[1].second};
}

HullOracle::HullOracle(Window w, double hx, double hy, std::vector<std::array<double, 2>> lattice_vertices)
    : w_(w), hx_(hx), hy_(hy), verts_(std::move(lattice_vertices)) {}

std::vector<std::array<double, 2>> HullOracle::vertices() const {
  std::vector<std::array<double, 2>> out;
  out.reserve(verts_.size());
  for (const auto& v : verts_) out.push_back({w_.x0 + v[0] * hx_, w_.y0 + v[1] * hy_});
  return out;
}

bool HullOracle::contains(double a, double b) const { return contains_lattice((a - w_.x0) / hx_, (b - w_.y0) / hy_); }

bool HullOracle::contains_lattice(double i, double j) const {
  constexpr double eps = 1e-9;
  const std::array<double, 2> p{i, j};
  const std::size_t m = verts_.size();
  if (m == 0) return false;
  if (m == 1) return std::abs(i - verts_[0][0]) <= eps && std::abs(j - verts_[0][1]) <= eps;
  if (m == 2) {
    const auto& a = verts_[0];
    const auto& b = verts_[1];
    if (std::abs(cross(a, b, p)) > eps * std::hypot(b[0] - a[0], b[1] - a[1])) return false;
    const double s = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) /
                     ((b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]));
    return s >= -eps && s <= 1.0 + eps;
  }
  const auto& o = verts_[0];
  if (cross(o, verts_[1], p) < -eps || cross(o, verts_[m - 1], p) > eps) return false;
  std::size_t lo = 1, hi = m - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cross(o, verts_[mid], p) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return cross(verts_[lo], verts_[lo + 1], p) >= -eps;
}

namespace {

// Grid points of body minus the open region, reduced to the extreme point of each column.
std::vector<std::array<double, 2>> collect(const ConvexBody& body, const Forbidden& region, const Window& w, double hx,
                                           double hy, long i_lo, long i_hi, long j_lo, long j_hi) {
  std::vector<std::array<double, 2>> pts;
  for (long i = i_lo; i <= i_hi; ++i) {
    long first = j_hi + 1, last = j_lo - 1;
    for (long j = j_lo; j <= j_hi; ++j) {
      const Point p = plane_point(body, w.x0 + i * hx, w.y0 + j * hy);
      if (eval_body(body, p) <= 0.0 && !in_forbidden_interior(region, p)) {
        first = std::min(first, j);
        last = std::max(last, j);
      }
    }
    if (first > last) continue;
    pts.push_back({double(i), double(first)});
    if (last != first) pts.push_back({double(i), double(last)});
  }
  return monotone_chain(std::move(pts));
}

}  // namespace

HullOracle hull_oracle_2d(const ConvexBody& body, const Forbidden& region, std::size_t nx, std::size_t ny,
                          const Window& w) {
  body.validate();
  (void)plane_point(body, 0.0, 0.0);
  if (nx < 2 || ny < 2 || !(w.x0 < w.x1) || !(w.y0 < w.y1)) throw Error(ErrorCode::InvalidInput, "bad oracle grid");
  const double hx = (w.x1 - w.x0) / double(nx - 1);
  const double hy = (w.y1 - w.y0) / double(ny - 1);
  return HullOracle(w, hx, hy, collect(body, region, w, hx, hy, 0, long(nx) - 1, 0, long(ny) - 1));
}

OracleComparison compare_to_oracle(const ConvexBody& body, const Forbidden& region, const PointFn& cut,
                                   const OracleGrid& grid) {
  body.validate();
  (void)plane_point(body, 0.0, 0.0);
  const Window& w = grid.window;
  if (grid.points < 2 || !(w.x0 < w.x1) || !(w.y0 < w.y1)) throw Error(ErrorCode::InvalidInput, "bad oracle grid");
  const long n = long(grid.points);
  const double hx = (w.x1 - w.x0) / double(n - 1);
  const double hy = (w.y1 - w.y0) / double(n - 1);
  const HullOracle oracle(w, hx, hy,
                          collect(body, region, w, hx, hy, -long(grid.margin_left), n - 1 + long(grid.margin_right),
                                  -long(grid.margin_bottom), n - 1 + long(grid.margin_top)));

  auto described = [&](double i, double j) {
    const Point p = plane_point(body, w.x0 + i * hx, w.y0 + j * hy);
    return eval_body(body, p) <= 0.0 && cut(p) <= 0.0;
  };
  auto settled = [&](double i, double j, bool desc, bool orac) {
    constexpr int kRays = 16;
    for (double radius : {grid.band, 0.5 * grid.band})
      for (int k = 0; k < kRays; ++k) {
        const double th = 2.0 * std::numbers::pi * k / kRays;
        const double a = i + radius * std::cos(th), b = j + radius * std::sin(th);
        if (described(a, b) != desc || oracle.contains_lattice(a, b) != orac) return false;
      }
    return true;
  };

  OracleComparison out;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      ++out.compared;
      const bool desc = described(double(i), double(j));
      const bool orac = oracle.contains_lattice(double(i), double(j));
      if (desc == orac) continue;
      if (!settled(double(i), double(j), desc, orac)) {
        ++out.near_boundary;
        continue;
      }
      if (desc)
        ++out.too_big;
      else
        ++out.too_small;
    }
  return out;
}

OracleComparison compare_to_oracle(const ConvexBody& body, const Forbidden& region, const Cut& cut,
                                   const OracleGrid& grid) {
  return compare_to_oracle(body, region, [&](const Point& p) { return eval_cut(cut, p); }, grid);
}

}  // namespace qcut
