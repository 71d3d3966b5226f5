#include "hecke/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hecke/series.hpp"

namespace hecke {

namespace {

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

}  // namespace

cplx BlaschkeMap::operator()(cplx z) const {
  const cplx zd = ipow(z, d);
  return (zd + c) / (1.0 + c * zd);
}

cplx BlaschkeMap::derivative(cplx z) const {
  const cplx zd = ipow(z, d);
  const cplx den = 1.0 + c * zd;
  return static_cast<double>(d) * ipow(z, d - 1) * (1.0 - c * c) / (den * den);
}

std::vector<cplx> BlaschkeMap::preimages(cplx v) const {
  const cplx w = (v - c) / (1.0 - c * v);
  const double r = std::pow(std::abs(w), 1.0 / d);
  const double a = std::arg(w);
  std::vector<cplx> out;
  for (int k = 0; k < d; ++k) out.push_back(std::polar(r, (a + kTwoPi * k) / d));
  return out;
}

BlaschkeMap make_blaschke(int d) {
  if (d < 2) throw std::out_of_range("Blaschke degree must be at least 2");
  return {d, static_cast<double>(d - 1) / (d + 1)};
}

cplx blaschke_apply(const BlaschkeMap& B, cplx z) { return B(z); }

cplx NormalForm::u_of(cplx z) const {
  const cplx eta = std::log(z);
  return A / (eta * eta);
}

cplx NormalForm::z_attracting(cplx u) const { return std::exp(-std::sqrt(A / u)); }

cplx NormalForm::phi(cplx u) const { return u - kappa * std::log(u) + e / u; }

cplx NormalForm::phi_rep(cplx u) const { return u - kappa * std::log(-u) + e / u; }

cplx NormalForm::phi_rep_inverse(cplx target) const {
  cplx u = target + kappa * std::log(-target);
  for (int it = 0; it < 30; ++it) {
    const cplx f = phi_rep(u) - target;
    const cplx df = 1.0 - kappa / u - e / (u * u);
    const cplx step = f / df;
    u -= step;
    if (std::abs(step) <= 1e-15 * std::abs(u)) break;
  }
  return u;
}

NormalForm normal_form(const BlaschkeMap& B) {
  constexpr int order = 12;
  // f(zeta) = B(1 + zeta) - 1 = (1 - c) P / (1 + c + c P), P = (1 + zeta)^d - 1.
  Series P(order);
  double binom = 1.0;
  for (int k = 1; k <= B.d && k < order; ++k) {
    binom = binom * (B.d - k + 1) / k;
    P[k] = binom;
  }
  Series den = P * B.c;
  den[0] += 1.0 + B.c;
  const Series f = (P * (1.0 - B.c)) * den.reciprocal();
  const Series g = Series::log1p(order).compose(f.compose(Series::expm1(order)));

  NormalForm nf;
  for (int k = 0; k < order; ++k) nf.g.push_back(g[k]);
  const double a3 = g[3], g5 = g[5], g7 = g[7];
  nf.A = -1.0 / (2.0 * a3);
  nf.kappa = nf.A * nf.A * (3.0 * a3 * a3 - 2.0 * g5);
  nf.lambda = nf.A * nf.A * nf.A * (-2.0 * g7 + 6.0 * a3 * g5 - 4.0 * a3 * a3 * a3);
  nf.e = nf.lambda - nf.kappa * nf.kappa + nf.kappa / 2.0;
  return nf;
}

bool Petal::contains(cplx z) const {
  if (!(std::abs(z) < 1.0) || z == 0.0) return false;
  const cplx u = nf.u_of(z);
  return u.real() > fatou_threshold && std::abs(std::arg(u)) < theta0 / 2.0;
}

Petal build_petal(const BlaschkeMap& B, double theta0, double R) {
  if (!(theta0 > 0.0 && theta0 < kPi)) throw std::invalid_argument("petal angle must lie in (0, pi)");
  Petal P;
  P.nf = normal_form(B);
  P.theta0 = theta0;
  const double uc = P.nf.u_of(B.c).real();
  P.fatou_threshold = (R > 0.0) ? std::min(R, 0.95 * uc) : 0.95 * uc;
  const double Rt = P.fatou_threshold;

  // Boundary of {Re u > R} with the sector, walked from u = +inf e^{i theta0/2}.
  const double half = theta0 / 2.0;
  const double t_corner = Rt / std::cos(half);
  const double t_max = Rt * 1e8;
  constexpr int ray = 600, seg = 300;
  std::vector<cplx> us;
  for (int i = 0; i < ray; ++i) {
    double t = t_max * std::pow(t_corner / t_max, static_cast<double>(i) / ray);
    us.push_back(std::polar(t, half));
  }
  const cplx top(Rt, Rt * std::tan(half));
  for (int i = 0; i <= seg; ++i) us.push_back(top + (std::conj(top) - top) * (static_cast<double>(i) / seg));
  for (int i = 1; i <= ray; ++i) {
    double t = t_corner * std::pow(t_max / t_corner, static_cast<double>(i) / ray);
    us.push_back(std::polar(t, -half));
  }
  P.boundary.push_back(1.0);
  for (cplx u : us) P.boundary.push_back(P.nf.z_attracting(u));
  P.boundary.push_back(1.0);

  if (!P.contains(B.c)) throw PetalError("petal does not contain the critical value");
  if (P.contains(0.0)) throw PetalError("petal contains the critical point");

  // Forward invariance on a deterministic low-discrepancy sample.
  const double g1 = 0.6180339887498949, g2 = 0.7548776662466927;
  for (int k = 1; k <= 1000; ++k) {
    const double s = std::fmod(k * g1, 1.0), r = std::fmod(k * g2, 1.0);
    const double x = Rt * (1.0 + 1e-3) + 30.0 * s * s;
    const double y = (2.0 * r - 1.0) * 0.999 * x * std::tan(half);
    const cplx z = P.nf.z_attracting(cplx(x, y));
    if (P.contains(z) && !P.contains(B(z)))
      throw PetalError("petal is not forward invariant for these parameters");
  }
  return P;
}

namespace {

struct Tracer {
  const BlaschkeMap& B;
  double max_step;
  bool failed = false;

  cplx step(cplx vp, cplx wp, cplx vn, int depth, std::vector<cplx>& out) {
    const auto roots = B.preimages(vn);
    double r1 = std::numeric_limits<double>::infinity(), r2 = r1;
    cplx best;
    for (cplx w : roots) {
      const double e = std::abs(w - wp);
      if (e < r1) {
        r2 = r1;
        r1 = e;
        best = w;
      } else if (e < r2) {
        r2 = e;
      }
    }
    if ((r1 <= max_step && r1 < 0.25 * r2) || (depth > 0 && r1 < 1e-12)) {
      out.push_back(best);
      return best;
    }
    if (depth >= 30) {
      failed = true;
      out.push_back(best);
      return best;
    }
    const cplx vm = 0.5 * (vp + vn);
    const cplx wm = step(vp, wp, vm, depth + 1, out);
    return step(vm, wm, vn, depth + 1, out);
  }
};

}  // namespace

PreimageCurves pullback_curve(const BlaschkeMap& B, const std::vector<cplx>& curve, bool closed,
                              double max_step) {
  PreimageCurves res;
  if (curve.size() < 2) return res;
  std::vector<cplx> seeds = B.preimages(curve.front());
  std::vector<bool> used(seeds.size(), false);
  Tracer tr{B, max_step};

  for (size_t s = 0; s < seeds.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    std::vector<cplx> out{seeds[s]};
    cplx w = seeds[s];
    const int laps = closed ? B.d : 1;
    for (int lap = 0; lap < laps; ++lap) {
      for (size_t i = 1; i < curve.size(); ++i) {
        tr.failed = false;
        w = tr.step(curve[i - 1], w, curve[i], 0, out);
        if (tr.failed) res.failed_segments.push_back(i - 1);
      }
      if (!closed) break;
      if (std::abs(w - seeds[s]) < 1e-9) break;
      for (size_t k = 0; k < seeds.size(); ++k)
        if (std::abs(seeds[k] - w) < 1e-9) used[k] = true;
    }
    res.curves.push_back(std::move(out));
  }
  return res;
}

std::vector<PreimageCurves> petal_preimages(const BlaschkeMap& B, const Petal& P, int n) {
  if (n < 1) throw std::invalid_argument("preimage count must be at least 1");
  std::vector<PreimageCurves> levels;
  std::vector<std::vector<cplx>> current{P.boundary};
  for (int k = 1; k <= n; ++k) {
    PreimageCurves level;
    for (const auto& c : current) {
      PreimageCurves pc = pullback_curve(B, c, true);
      for (auto& cc : pc.curves) level.curves.push_back(std::move(cc));
      for (size_t f : pc.failed_segments) level.failed_segments.push_back(f);
    }
    current = level.curves;
    levels.push_back(std::move(level));
  }
  return levels;
}

cplx fatou_attracting(const BlaschkeMap& B, const Petal& P, cplx z, int N) {
  if (N < 1) throw std::invalid_argument("Fatou coordinate needs N >= 1");
  for (int k = 0; k < N; ++k) z = B(z);
  if (!P.contains(z)) throw PetalError("orbit has not entered the petal after N steps");
  return P.nf.phi(P.nf.u_of(z)) - static_cast<double>(N);
}

cplx fatou_attracting(const BlaschkeMap& B, cplx z, int N) {
  return fatou_attracting(B, build_petal(B), z, N);
}

DividingArcs dividing_arcs(const BlaschkeMap& B, double h, double L, int per_unit) {
  if (!(h > 0.0)) throw std::invalid_argument("dividing arcs need h > 0");
  if (per_unit < 1) throw std::invalid_argument("per_unit must be positive");
  const NormalForm nf = normal_form(B);

  // Inverse repelling Fatou coordinate: solve near the parabolic point, push forward.
  auto psi = [&](double x, double y, bool upper) {
    const int N = std::max(0, static_cast<int>(std::ceil(x + 1000.0)));
    const cplx u = nf.phi_rep_inverse(cplx(x - N, y));
    const cplx s = std::sqrt(nf.A / u);
    const cplx eta = ((s.imag() > 0) == upper) ? s : -s;
    if (eta.real() >= 0.0) throw PetalError("dividing arc leaves the disc (h too small)");
    cplx z = std::exp(eta);
    for (int k = 0; k < N; ++k) z = B(z);
    if (!(std::abs(z) < 1.0)) throw PetalError("dividing arc leaves the disc (h too small)");
    return z;
  };

  DividingArcs out;
  out.h = h;
  out.L = L;
  out.per_unit = per_unit;
  constexpr double x_deep = -1e6, x_join = -40.0;
  constexpr int deep = 2000;
  for (int i = 0; i < deep; ++i)
    out.x.push_back(-std::exp(std::log(-x_deep) + (std::log(-x_join) - std::log(-x_deep)) * i / deep));
  out.uniform_start = out.x.size();
  const int uniform = static_cast<int>(std::floor((L - x_join) * per_unit));
  for (int i = 0; i <= uniform; ++i) out.x.push_back(x_join + static_cast<double>(i) / per_unit);

  out.gamma_plus.push_back(1.0);
  out.gamma_minus.push_back(1.0);
  for (double x : out.x) {
    out.gamma_plus.push_back(psi(x, h, true));
    out.gamma_minus.push_back(psi(x, -h, false));
  }
  return out;
}

EscapeResult escape_to_petal(const BlaschkeMap& B, const Petal& P, cplx z, int max_iter) {
  for (int k = 0; k <= max_iter; ++k) {
    if (P.contains(z)) return {true, k};
    if (k < max_iter) z = B(z);
  }
  return {false, max_iter};
}

double polyline_distance(const std::vector<cplx>& poly, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    const cplx a = poly[i], b = poly[i + 1];
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  if (poly.size() == 1) best = std::abs(z - poly[0]);
  return best;
}

bool polygon_contains(const std::vector<cplx>& poly, cplx z) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const cplx a = poly[i], b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace hecke
