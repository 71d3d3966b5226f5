#include "hecke/complex_geom.hpp"

#include <algorithm>
#include <cmath>

namespace hecke {

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  cplx x = a.value(), y = b.value();
  return 2.0 * std::abs(x - y) / std::sqrt((1.0 + std::norm(x)) * (1.0 + std::norm(y)));
}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
  cplx det = a * d - b * c;
  if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det)))
    throw std::invalid_argument("degenerate Moebius matrix");
  cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& z) {
  if (z.is_infinite()) {
    if (m.c() == 0.0) return SpherePoint::infinity();
    return m.a() / m.c();
  }
  cplx w = z.value();
  cplx den = m.c() * w + m.d();
  if (den == 0.0) return SpherePoint::infinity();
  return (m.a() * w + m.b()) / den;
}

MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
          m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

MoebiusMap moebius_inverse(const MoebiusMap& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

MoebiusMap moebius_power(const MoebiusMap& m, int k) {
  MoebiusMap base = k < 0 ? moebius_inverse(m) : m;
  MoebiusMap out;
  for (int i = 0; i < std::abs(k); ++i) out = moebius_compose(out, base);
  return out;
}

double moebius_distance(const MoebiusMap& m1, const MoebiusMap& m2) {
  auto diff = [&](double s) {
    return std::max({std::abs(m1.a() - s * m2.a()), std::abs(m1.b() - s * m2.b()),
                     std::abs(m1.c() - s * m2.c()), std::abs(m1.d() - s * m2.d())});
  };
  return std::min(diff(1.0), diff(-1.0));
}

MoebiusClass classify_moebius(const MoebiusMap& m) {
  MoebiusClass out;
  const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double scale = 1.0 + std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  const double eps = 1e-13 * scale;

  if (std::abs(b) < eps && std::abs(c) < eps && std::abs(a - d) < eps) {
    out.kind = MoebiusKind::Identity;
    return out;
  }

  const cplx tr = a + d;
  const cplx t2 = tr * tr;
  out.trace_sq_minus_4 = std::abs(t2 - 4.0);

  if (out.trace_sq_minus_4 < kParabolicTol) {
    out.kind = MoebiusKind::Parabolic;
    out.borderline = out.trace_sq_minus_4 > 1e-14 * scale * scale;
    if (std::abs(c) < eps)
      out.fixed_points.push_back(SpherePoint::infinity());
    else
      out.fixed_points.push_back((a - d) / (2.0 * c));
    return out;
  }

  if (std::abs(t2.imag()) <= 1e-12 * (1.0 + std::abs(t2)))
    out.kind = t2.real() < 4.0 ? MoebiusKind::Elliptic : MoebiusKind::Hyperbolic;
  else
    out.kind = MoebiusKind::Loxodromic;

  // c z^2 + (d - a) z - b = 0; its discriminant is tr^2 - 4 since det = 1.
  if (std::abs(c) < eps) {
    out.fixed_points.push_back(SpherePoint::infinity());
    out.fixed_points.push_back(b / (d - a));
  } else {
    cplx root = std::sqrt(t2 - 4.0);
    out.fixed_points.push_back((a - d + root) / (2.0 * c));
    out.fixed_points.push_back((a - d - root) / (2.0 * c));
  }
  return out;
}

double ccw_angle(cplx p, cplx q) {
  double t = std::arg(q / p);
  if (t <= 0.0) t += kTwoPi;
  return t;
}

double angle_0_2pi(cplx z) {
  double t = std::arg(z);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

OrthogonalCircle orthogonal_circle(const Geodesic& g) {
  const double delta = ccw_angle(g.p, g.q);
  const cplx mid = g.p * std::polar(1.0, delta / 2.0);
  OrthogonalCircle oc;
  if (std::abs(delta - kPi) < 1e-13) {
    oc.is_line = true;
    oc.center = mid;
    oc.radius = 0.0;
    return oc;
  }
  const double cs = std::cos(delta / 2.0);
  oc.center = mid / cs;
  oc.radius = std::abs(std::tan(delta / 2.0));
  return oc;
}

double geodesic_side(const Geodesic& g, cplx z) {
  const OrthogonalCircle oc = orthogonal_circle(g);
  if (oc.is_line) return (z * std::conj(oc.center)).real();
  const double s = oc.radius - std::abs(z - oc.center);
  // For arcs longer than a half turn the circle bulges away from the arc.
  return ccw_angle(g.p, g.q) < kPi ? s : -s;
}

cplx geodesic_point(const Geodesic& g, double t) {
  if (t == 0.0) return g.p;
  if (t == 1.0) return g.q;
  const OrthogonalCircle oc = orthogonal_circle(g);
  if (oc.is_line) return g.p + t * (g.q - g.p);
  const double ap = std::arg(g.p - oc.center);
  const double aq = std::arg(g.q - oc.center);
  const double diff = std::remainder(aq - ap, kTwoPi);
  return oc.center + std::polar(oc.radius, ap + t * diff);
}

}  // namespace hecke
