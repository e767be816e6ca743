#include "qcut/certify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qcut/error.hpp"
#include "qcut/splitcuts.hpp"

namespace qcut {

namespace {

double point_scale(const Point& p) { return std::max({1.0, max_abs(p.x), std::abs(p.t)}); }

// Split data in the standardized frame y = B(x - c).
struct Frame {
  Vec pi;
  double pi_hat;
  double u0;
  double u1;
  double w;  // split value of the point
  double nu;
};

struct Friends {
  Point f0;
  Point f1;
};

// Moves from (y, t) along dir until the split value reaches u0 and u1.
Friends along(const Frame& fr, const Point& y, const Vec& dir_y, double dir_t) {
  const double delta = dot(fr.pi, dir_y) + fr.pi_hat * dir_t;
  if (!std::isfinite(delta) || std::abs(delta) <= 1e-300)
    throw Error(ErrorCode::NotInside, "friend ray is parallel to the split");
  auto at = [&](double u) {
    const double s = (u - fr.w) / delta;
    return Point{y.x + s * dir_y, y.t + s * dir_t};
  };
  return {at(fr.u0), at(fr.u1)};
}

// Level-set friends: scale the orthogonal part by f(u_i) / (alpha f0 + (1 - alpha) f1).
Friends level_friends(const Frame& fr, const Point& y, double f0, double f1) {
  const double alpha = (fr.u1 - fr.w) / (fr.u1 - fr.u0);
  const double den = alpha * f0 + (1.0 - alpha) * f1;
  const double b0 = den == 0.0 ? 1.0 : f0 / den;
  const double b1 = den == 0.0 ? 1.0 : f1 / den;
  const Vec perp = y.x - (fr.w / fr.nu) * fr.pi;
  return {Point{b0 * perp + (fr.u0 / fr.nu) * fr.pi, y.t}, Point{b1 * perp + (fr.u1 / fr.nu) * fr.pi, y.t}};
}

struct AxisFrame {
  std::size_t axis;
  double lo;
  double hi;
};

std::optional<AxisFrame> axis_frame(const SplitDisjunction& split, const Vec& c) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < split.pi.size(); ++i) {
    if (split.pi[i] == 0.0) continue;
    if (axis) return std::nullopt;
    axis = i;
  }
  if (!axis) return std::nullopt;
  const double s = split.pi[*axis];
  double lo = (split.pi0 - s * c[*axis]) / s;
  double hi = (split.pi1 - s * c[*axis]) / s;
  if (lo > hi) std::swap(lo, hi);
  return AxisFrame{*axis, lo, hi};
}

Friends build(const ConvexBody& body, const SplitDisjunction& split, CaseLabel label, Frame fr, const Point& y) {
  switch (label) {
    case CaseLabel::ParaboloidSimple:
      return along(fr, y, fr.pi, fr.u0 + fr.u1);

    case CaseLabel::ConeSimple:
    case CaseLabel::PConeProper: {
      const Secant h = homogeneous_coeffs(fr.u0, fr.u1);
      return along(fr, y, h.a * y.x + (h.b / fr.nu) * fr.pi, h.a * y.t);
    }

    case CaseLabel::HyperSymmetric:
    case CaseLabel::HyperAsymmetric: {
      const Secant h = hyperboloid_coeffs(body.l, fr.nu, fr.u0, fr.u1);
      return along(fr, y, h.a * y.x + (h.b / fr.nu) * fr.pi, h.a * y.t);
    }

    case CaseLabel::ConeSimpleNoCut:
    case CaseLabel::PConeNoCut:
    case CaseLabel::ConeNoCut:
      return along(fr, y, y.x, y.t);

    case CaseLabel::ParaboloidConic: {
      const ConicCoeffs k = paraboloid_conic_coeffs(fr.nu, fr.pi_hat, fr.u0, fr.u1);
      const Vec apex = (-0.5 / fr.pi_hat) * fr.pi;
      const double apex_t = (k.b * k.c - k.e) / k.d;
      return along(fr, y, y.x - apex, y.t - apex_t);
    }

    case CaseLabel::ConeConic: {
      const ConicCoeffs k = cone_conic_coeffs(fr.nu, fr.pi_hat, fr.u0, fr.u1);
      // a times the offset from the apex; finite as a tends to zero
      return along(fr, y, k.a * y.x + (k.b / fr.nu) * fr.pi, k.a * y.t - (k.b * k.c - k.a * k.e) / k.d);
    }

    case CaseLabel::EllipsoidProper: {
      const double r = body.family == Family::SquaredEllipsoid ? std::sqrt(body.r) : body.r;
      auto f = [&](double u) { return -std::sqrt(std::max(0.0, r * r - u * u / fr.nu)); };
      return level_friends(fr, y, f(fr.u0), f(fr.u1));
    }

    case CaseLabel::PBallProper: {
      const double rp = std::pow(body.r, body.p);
      auto f = [&](double u) { return -std::pow(std::max(0.0, rp - std::pow(std::abs(u), body.p)), 1.0 / body.p); };
      return level_friends(fr, y, f(fr.u0), f(fr.u1));
    }

    default:
      break;
  }
  (void)split;
  throw Error(ErrorCode::NotInside, std::string("no strip point survives a cut of case ") +
                                        std::string(to_string(label)));
}

}  // namespace

FriendsCertificate friends_split(const ConvexBody& body, const SplitDisjunction& split, const Point& point) {
  body.validate();
  split.validate();
  if (split.pi.size() != body.n || point.x.size() != body.n)
    throw Error(ErrorCode::DimMismatch, "point, split and body dimensions differ");

  const double v = split.value(point);
  const double eps = scaled_tol(1e-9, split.pi0, split.pi1);
  const double scale = point_scale(point);
  if (v < split.pi0 - eps || v > split.pi1 + eps) throw Error(ErrorCode::NotInside, "point is outside the strip");
  if (eval_body(body, point) > 1e-9 * scale) throw Error(ErrorCode::NotInside, "point is outside the body");
  if (std::abs(v - split.pi0) <= eps) return {point, point, 1.0, SplitSide::Below, SplitSide::Below};
  if (std::abs(v - split.pi1) <= eps) return {point, point, 0.0, SplitSide::Above, SplitSide::Above};

  const CutResult res = split_cut(body, split);
  if (eval_cut(res.cut, point) > 1e-9 * scale) throw Error(ErrorCode::CutViolated, "point violates the split cut");

  const bool p_family = body.family == Family::PCone || body.family == Family::PBall;
  const bool on_axis = res.label == CaseLabel::PConeProper || res.label == CaseLabel::PConeNoCut ||
                       res.label == CaseLabel::PBallProper;
  Point y{body.B * (point.x - body.c), point.t};
  Frame fr{};
  if (p_family && on_axis) {
    const auto ax = axis_frame(split, body.c);
    fr = {Vec::unit(body.n, ax->axis), 0.0, ax->lo, ax->hi, y.x[ax->axis], 1.0};
  } else {
    const StandardSplit st = standardize(body.B, body.c, split);
    fr = {st.pi, st.pi_hat, st.pi0, st.pi1, dot(st.pi, y.x) + st.pi_hat * y.t, norm_sq(st.pi)};
  }

  const Friends fy = build(body, split, res.label, fr, y);
  const Mat binv = inverse(body.B);
  FriendsCertificate cert{Point{binv * fy.f0.x + body.c, fy.f0.t}, Point{binv * fy.f1.x + body.c, fy.f1.t},
                          (fr.u1 - fr.w) / (fr.u1 - fr.u0)};
  if (split.value(cert.p0) > split.value(cert.p1)) {
    std::swap(cert.p0, cert.p1);
    cert.alpha = 1.0 - cert.alpha;
  }
  cert.side0 = split_position(split, cert.p0, 1e-8);
  cert.side1 = split_position(split, cert.p1, 1e-8);
  return cert;
}

FriendsCertificate friends_aggregation(const AggregationForm& form, const Point& point) {
  const Aggregate agg(form, false);
  if (point.x.size() != form.dim()) throw Error(ErrorCode::DimMismatch, "point dimension does not match form");
  const double scale = point_scale(point);
  const double excess = form.G(point.x) - form.gamma * point.t;
  if (!(excess > 0.0)) throw Error(ErrorCode::NotInForbidden, "point is not inside the forbidden region");
  if (form.F(point.x) > point.t + 1e-9 * scale) throw Error(ErrorCode::NotInside, "point is outside the body");
  if (agg(point.x) > point.t + 1e-9 * scale) throw Error(ErrorCode::CutViolated, "point violates the aggregated cut");

  const Vec& dir = form.directions.back();
  const double slope = agg.t_slope();
  auto phi = [&](double s) { return form.G(point.x + s * dir) - form.gamma * (point.t + s * slope); };

  auto crossing = [&](double sign) {
    double inside = 0.0;
    double outside = sign * 1e-6;
    while (!(phi(outside) <= 0.0)) {
      inside = outside;
      outside *= 2.0;
      if (std::abs(outside) > 1e6) throw Error(ErrorCode::BisectionFailure, "no boundary crossing within |s| <= 1e6");
    }
    for (int it = 0; it < 200 && std::abs(outside - inside) > 1e-15 * std::max(1.0, std::abs(outside)); ++it) {
      const double mid = 0.5 * (inside + outside);
      if (phi(mid) <= 0.0)
        outside = mid;
      else
        inside = mid;
    }
    return outside;
  };

  const double lo = crossing(-1.0);
  const double hi = crossing(1.0);
  FriendsCertificate cert;
  cert.p0 = {point.x + lo * dir, point.t + lo * slope};
  cert.p1 = {point.x + hi * dir, point.t + hi * slope};
  cert.alpha = hi / (hi - lo);
  return cert;
}

namespace {

void note(CertificateCheck& out, double defect, const char* what) {
  out.worst = std::max(out.worst, defect);
  if (defect > 0.0 && out.ok) {
    out.ok = false;
    out.failure = what;
  }
}

void check_combination(CertificateCheck& out, const Point& point, const FriendsCertificate& cert, double tol,
                       bool with_t) {
  note(out, std::max(-cert.alpha, cert.alpha - 1.0) - tol, "weight outside [0, 1]");
  const Vec mix = cert.alpha * cert.p0.x + (1.0 - cert.alpha) * cert.p1.x;
  note(out, max_abs(mix - point.x) - tol * std::max(1.0, max_abs(point.x)), "friends do not combine to the point");
  if (with_t) {
    const double tmix = cert.alpha * cert.p0.t + (1.0 - cert.alpha) * cert.p1.t;
    note(out, std::abs(tmix - point.t) - tol * std::max(1.0, std::abs(point.t)), "friend heights do not combine");
  }
}

}  // namespace

CertificateCheck check_certificate(const ConvexBody& body, const SplitDisjunction& split, const Point& point,
                                   const FriendsCertificate& cert, double tol) {
  CertificateCheck out;
  check_combination(out, point, cert, tol, body.epigraphical() || split.pi_hat != 0.0);
  const double eps = scaled_tol(tol, split.pi0, split.pi1);
  if (cert.alpha > 0.0) {
    note(out, eval_body(body, cert.p0) - tol * point_scale(cert.p0), "first friend outside the body");
    note(out, split.value(cert.p0) - split.pi0 - eps, "first friend inside the strip");
  }
  if (cert.alpha < 1.0) {
    note(out, eval_body(body, cert.p1) - tol * point_scale(cert.p1), "second friend outside the body");
    note(out, split.pi1 - split.value(cert.p1) - eps, "second friend inside the strip");
  }
  return out;
}

CertificateCheck check_certificate(const AggregationForm& form, const Point& point, const FriendsCertificate& cert,
                                   double tol) {
  CertificateCheck out;
  check_combination(out, point, cert, tol, true);
  for (const Point* p : {&cert.p0, &cert.p1}) {
    const double scale = point_scale(*p);
    note(out, form.F(p->x) - p->t - tol * scale, "friend outside the body");
    note(out, form.G(p->x) - form.gamma * p->t - tol * scale, "friend inside the forbidden region");
  }
  return out;
}

}  // namespace qcut
