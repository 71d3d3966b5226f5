#include "hecke/quotients.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace hecke {

namespace {

struct MChoice {
  MoebiusMap M;
  bool flipped;
};

MChoice choose_M(int d) {
  const HeckeGroup g = build_hecke(d);
  const cplx p = g.sigma_fixed_point();
  const cplx one = 1.0;
  MoebiusMap m0(one, -p, -std::conj(p), one);
  const cplx lambda = cplx(0, -1) / m0(one);
  const MoebiusMap base(lambda, -lambda * p, -std::conj(p), one);
  const MoebiusMap flip(cplx(-1), 0.0, 0.0, one);

  auto passes = [&](const MoebiusMap& m) {
    if (std::abs(m(one) - cplx(0, -1)) > 1e-10) return false;
    if (std::abs(m(g.omega) - cplx(0, 1)) > 1e-10) return false;
    if (std::abs(m(p)) > 1e-12) return false;
    // Pi is on the left when its interior points are.
    for (int k = 0; k <= d; ++k) {
      cplx probe = 0.5 * std::polar(1.0, kTwoPi * k / (d + 1));
      if (m(probe).real() > 1e-12) return false;
    }
    return m(0.0).real() <= 1e-12;
  };
  const MoebiusMap flipped = moebius_compose(flip, base);
  const bool ok0 = passes(base), ok1 = passes(flipped);
  if (ok0 && ok1) throw std::logic_error("both orientations of M pass; ambiguous");
  if (ok0) return {base, false};
  if (ok1) return {flipped, true};
  throw std::logic_error("no orientation of M satisfies the normalisation");
}

}  // namespace

MoebiusMap build_M(int d) { return choose_M(d).M; }
bool build_M_flipped(int d) { return choose_M(d).flipped; }

QuotientMap make_theta1(int d) {
  if (d < kMinDegree || d > kMaxDegree) throw std::out_of_range("degree out of range");
  return {QuotientKind::Theta1, d, MoebiusMap::identity()};
}

QuotientMap make_theta2(int d) { return {QuotientKind::Theta2, d, build_M(d)}; }

cplx theta_apply(const QuotientMap& q, cplx z) {
  if (q.kind == QuotientKind::Theta1) {
    cplx r = 1.0;
    for (int k = 0; k <= q.d; ++k) r *= z;
    return r;
  }
  cplx w = q.M(z);
  return -w * w;
}

bool on_slit(cplx u) {
  return std::abs(u.imag()) <= kSlitBand && u.real() >= -kSlitBand && u.real() <= 1.0 + kSlitBand;
}

cplx theta_inverse_branch(const QuotientMap& q, cplx u, SlitPolicy policy) {
  if (q.kind == QuotientKind::Theta1) {
    if (u == 0.0) return 0.0;
    double a;
    if (on_slit(u)) {
      if (policy == SlitPolicy::Reject) throw SlitError("theta1 inverse branch: point on the slit");
      a = 0.0;
    } else {
      a = std::arg(u);
      if (a < 0.0) a += kTwoPi;
    }
    return std::polar(std::pow(std::abs(u), 1.0 / (q.d + 1)), a / (q.d + 1));
  }
  cplx w;
  if (u == 0.0) {
    w = 0.0;
  } else if (on_slit(u)) {
    if (policy == SlitPolicy::Reject) throw SlitError("theta2 inverse branch: point on the slit");
    w = cplx(0.0, std::sqrt(std::max(u.real(), 0.0)));
  } else {
    w = -std::sqrt(-u);
  }
  return moebius_inverse(q.M)(w);
}

PiecewiseMoebiusMap::PiecewiseMoebiusMap(ExternalKind kind, int d)
    : kind_(kind),
      group_(build_hecke(d)),
      theta_(kind == ExternalKind::Hecke ? make_theta2(d) : make_theta1(d)) {
  if (kind == ExternalKind::Hecke) {
    for (int j = 2; j <= d + 1; ++j) pieces_.push_back({j, group_.alpha_j(d + 2 - j)});
  } else {
    pieces_.push_back({1, group_.sigma});
  }
}

cplx PiecewiseMoebiusMap::operator()(cplx u) const {
  return kind_ == ExternalKind::Hecke ? hecke(u) : farey(u);
}

cplx PiecewiseMoebiusMap::hecke(cplx u) const {
  const int d = group_.d;
  if (std::abs(u - 1.0) <= 1e-12) return 1.0;
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("Hecke map: point outside the closed disc");
  if (on_slit(u)) throw DomainError("Hecke map: point in the interior of h2");
  const cplx z = theta_inverse_branch(theta_, u);
  int j = 0;
  if (std::abs(z) >= 1.0 - 1e-13) {
    // Half-open arcs [omega^(j-1), omega^j), counter-clockwise.
    j = static_cast<int>(std::floor(angle_0_2pi(z) * (d + 1) / kTwoPi)) + 1;
    j = std::clamp(j, 1, d + 1);
    if (j == 1) j = d + 1;
  } else {
    for (int k = 2; k <= d + 1 && j == 0; ++k)
      if (geodesic_side(group_.side(k), z) >= -1e-12) j = k;
    if (j == 0) throw DomainError("Hecke map: point in the interior of h2");
  }
  return theta_apply(theta_, group_.alpha_j(d + 2 - j)(z));
}

cplx PiecewiseMoebiusMap::farey(cplx u) const {
  if (std::abs(u - 1.0) <= 1e-12) return 1.0;
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("Farey map: point outside the closed disc");
  if (on_slit(u)) throw DomainError("Farey map: point in the interior of h1");
  const cplx z = theta_inverse_branch(theta_, u);
  if (geodesic_side(group_.side(1), z) < -1e-12)
    throw DomainError("Farey map: point in the interior of h1");
  return theta_apply(theta_, group_.sigma(z));
}

cplx PiecewiseMoebiusMap::germ(const MoebiusMap& gamma, cplx anchor, cplx u) const {
  cplx best;
  double dist = std::numeric_limits<double>::infinity();
  auto consider = [&](cplx z) {
    double e = std::abs(z - anchor);
    if (e < dist) {
      dist = e;
      best = z;
    }
  };
  if (theta_.kind == QuotientKind::Theta1) {
    const double r = std::pow(std::abs(u), 1.0 / (group_.d + 1));
    const double a = std::arg(u);
    for (int k = 0; k <= group_.d; ++k) consider(std::polar(r, (a + kTwoPi * k) / (group_.d + 1)));
  } else {
    const MoebiusMap mi = moebius_inverse(theta_.M);
    const cplx s = std::sqrt(-u);
    consider(mi(s));
    consider(mi(-s));
  }
  return theta_apply(theta_, gamma(best));
}

PiecewiseMoebiusMap::BranchGerm PiecewiseMoebiusMap::top_germ() const {
  if (kind_ == ExternalKind::Hecke) return {group_.alpha_j(group_.d), group_.omega};
  return {group_.sigma, 1.0};
}

PiecewiseMoebiusMap::BranchGerm PiecewiseMoebiusMap::bottom_germ() const {
  if (kind_ == ExternalKind::Hecke) return {group_.alpha_j(1), 1.0};
  return {group_.sigma, group_.omega};
}

std::vector<cplx> PiecewiseMoebiusMap::break_points() const {
  const int d = group_.d;
  const QuotientMap t2 = kind_ == ExternalKind::Hecke ? theta_ : make_theta2(d);
  std::vector<cplx> hb;
  for (int k = 1; k <= d; ++k) hb.push_back(theta_apply(t2, std::pow(group_.omega, k)));
  if (kind_ == ExternalKind::Hecke) {
    std::sort(hb.begin(), hb.end(),
              [](cplx x, cplx y) { return angle_0_2pi(x) < angle_0_2pi(y); });
    return hb;
  }
  // Pull the Hecke break points back through the conjugacy on the circle.
  const MoebiusMap mi = moebius_inverse(t2.M);
  const double sector = kTwoPi / (d + 1);
  std::vector<cplx> out;
  for (cplx b : hb) {
    const cplx s = std::sqrt(-b);
    for (cplx w : {s, -s}) {
      cplx z = mi(w);
      double a = angle_0_2pi(z);
      if (a > kTwoPi - 1e-12) a = 0.0;
      if (a <= sector + 1e-12) {
        out.push_back(std::polar(1.0, a * (d + 1)));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](cplx x, cplx y) { return angle_0_2pi(x) < angle_0_2pi(y); });
  return out;
}

cplx hecke_map(int d, cplx u) { return PiecewiseMoebiusMap(ExternalKind::Hecke, d)(u); }
cplx farey_map(int d, cplx u) { return PiecewiseMoebiusMap(ExternalKind::Farey, d)(u); }

cplx conjugacy_p(int d, cplx u) {
  if (std::abs(u - 1.0) <= 1e-12) return 1.0;
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("conjugacy: point outside the closed disc");
  cplx z;
  try {
    z = theta_inverse_branch(make_theta1(d), u);
  } catch (const SlitError&) {
    throw DomainError("conjugacy: point on the slit");
  }
  return theta_apply(make_theta2(d), z);
}

namespace {

// Solves the 3x3 complex normal equations by Gaussian elimination with pivoting.
std::array<cplx, 3> solve3(std::array<std::array<cplx, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = col + 1; r < 3; ++r) {
      cplx f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<cplx, 3> x;
  for (int r = 2; r >= 0; --r) {
    cplx s = m[r][3];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

}  // namespace

BranchFit fit_germ(const std::function<cplx(cplx)>& g, bool top) {
  constexpr int kRadii = 13;
  constexpr int kSamples = 20;
  BranchFit fit;
  std::vector<std::array<cplx, 3>> coeffs;
  for (int i = 0; i < kRadii; ++i) fit.radii.push_back(std::pow(10.0, -1.0 - 3.0 * i / (kRadii - 1)));

  std::vector<std::vector<cplx>> zetas, values;
  for (double r : fit.radii) {
    std::array<std::array<cplx, 4>, 3> ne{};
    std::vector<cplx> zs, ys;
    for (int m = 0; m < kSamples; ++m) {
      double phi = kPi * (m + 0.5) / kSamples;
      if (!top) phi = -phi;
      const cplx zeta = std::polar(r, phi);
      const cplx y = g(1.0 + zeta) - 1.0;
      zs.push_back(zeta);
      ys.push_back(y);
      // Basis e^{ik phi}; unknowns c_k r^k keep the system well scaled.
      std::array<cplx, 3> row;
      for (int k = 0; k < 3; ++k) row[k] = std::polar(1.0, (k + 1) * phi);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) ne[a][b] += std::conj(row[a]) * row[b];
        ne[a][3] += std::conj(row[a]) * y;
      }
    }
    auto x = solve3(ne);
    coeffs.push_back({x[0] / r, x[1] / (r * r), x[2] / (r * r * r)});
    zetas.push_back(std::move(zs));
    values.push_back(std::move(ys));
  }

  // Truncation error falls like r^2 and rounding grows like 1/r^2; 1e-3 balances them.
  size_t best = 0;
  for (size_t i = 0; i < fit.radii.size(); ++i)
    if (std::abs(std::log(fit.radii[i] / 1e-3)) < std::abs(std::log(fit.radii[best] / 1e-3)))
      best = i;
  fit.fit_radius = fit.radii[best];
  fit.c1 = coeffs[best][0];
  fit.c2 = coeffs[best][1];
  fit.c3 = coeffs[best][2];

  double worst = 0.0;
  for (size_t i = 0; i < fit.radii.size(); ++i) {
    double rem = 0.0;
    for (size_t m = 0; m < zetas[i].size(); ++m) {
      const cplx z = zetas[i][m];
      rem = std::max(rem, std::abs(values[i][m] - fit.c1 * z - fit.c2 * z * z));
    }
    fit.remainder.push_back(rem);
    worst = std::max(worst, rem);
  }
  if (worst < 1e-13) {
    fit.exact_quadratic = true;
    return fit;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(fit.radii.size());
  for (size_t i = 0; i < fit.radii.size(); ++i) {
    const double x = std::log(fit.radii[i]);
    const double y = std::log(fit.remainder[i] / (fit.radii[i] * fit.radii[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (size_t i = 1; i < fit.remainder.size(); ++i)
    if (!(fit.remainder[i] < fit.remainder[i - 1]))
      throw FitError("parabolic fit: cubic remainder does not decrease with the radius");
  if (std::abs(fit.slope - 1.0) > 0.15)
    throw FitError("parabolic fit: remainder is not cubic (slope " + std::to_string(fit.slope) + ")");
  return fit;
}

ParabolicAsymptotics parabolic_fit_germs(const std::function<cplx(cplx)>& top,
                                         const std::function<cplx(cplx)>& bottom) {
  ParabolicAsymptotics out;
  out.top = fit_germ(top, true);
  out.bottom = fit_germ(bottom, false);
  const cplx ta = cplx(0, 1) * out.top.c2;
  const cplx tb = cplx(0, -1) * out.bottom.c2;
  out.a = ta.real();
  out.b = tb.real();
  out.fit_residual = std::max(std::abs(ta.imag()), std::abs(tb.imag()));
  return out;
}

ParabolicAsymptotics parabolic_fit(const PiecewiseMoebiusMap& map) {
  const auto tg = map.top_germ();
  const auto bg = map.bottom_germ();
  return parabolic_fit_germs([&](cplx u) { return map.germ(tg.gamma, tg.anchor, u); },
                             [&](cplx u) { return map.germ(bg.gamma, bg.anchor, u); });
}

namespace {

double unwrap(const std::function<cplx(cplx)>& f, double t0, cplx f0, double t1, cplx f1,
              int depth) {
  const double step = std::arg(f1 / f0);
  if (std::abs(step) < 0.5 || depth > 40) return step;
  const double tm = 0.5 * (t0 + t1);
  const cplx fm = f(std::polar(1.0, tm));
  return unwrap(f, t0, f0, tm, fm, depth + 1) + unwrap(f, tm, fm, t1, f1, depth + 1);
}

}  // namespace

int circle_winding(const std::function<cplx(cplx)>& f, int samples) {
  double total = 0.0;
  double t0 = 0.0;
  cplx f0 = f(1.0);
  for (int k = 1; k <= samples; ++k) {
    const double t1 = kTwoPi * k / samples;
    const cplx f1 = f(std::polar(1.0, t1));
    total += unwrap(f, t0, f0, t1, f1, 0);
    t0 = t1;
    f0 = f1;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

std::vector<CircleFixedPoint> circle_fixed_points(const PiecewiseMoebiusMap& map, int n) {
  auto f = [&](cplx z) { return map(z); };
  auto lift_between = [&](double x0, double x1) {
    return unwrap(f, kTwoPi * x0, f(std::polar(1.0, kTwoPi * x0)), kTwoPi * x1,
                  f(std::polar(1.0, kTwoPi * x1)), 0) / kTwoPi;
  };
  auto deriv = [&](double x) {
    const double h = 1e-7;
    return std::abs(lift_between(x - h, x + h)) / (2 * h);
  };

  std::vector<CircleFixedPoint> out{{0.0, deriv(0.0)}};
  std::vector<double> g(n + 1);
  double lift = 0.0;
  g[0] = 0.0;
  for (int k = 1; k <= n; ++k) {
    lift += lift_between(static_cast<double>(k - 1) / n, static_cast<double>(k) / n);
    g[k] = lift - static_cast<double>(k) / n;
  }
  // The last interval ends at the parabolic point itself.
  for (int k = 0; k + 1 < n; ++k) {
    const double lo = std::floor(g[k]), hi = std::floor(g[k + 1]);
    if (lo == hi) continue;
    const double level = std::max(lo, hi);
    double a = static_cast<double>(k) / n, b = static_cast<double>(k + 1) / n;
    double ga = g[k] - level;
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (a + b);
      const double gm = g[k] + lift_between(static_cast<double>(k) / n, m) -
                        (m - static_cast<double>(k) / n) - level;
      if ((gm < 0) == (ga < 0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    const double x = 0.5 * (a + b);
    out.push_back({x, deriv(x)});
  }
  return out;
}

Monogon build_monogon(double eps, int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("monogon eps must be positive");
  if (eps >= 0.5) throw DomainError("monogon eps too large");
  if (n < 16) throw std::invalid_argument("monogon needs at least 16 samples");

  // Corners of the outline, walked counter-clockwise from 1 through the upper half.
  const cplx pu(1.0 - eps, eps), pl(1.0 - eps, -eps);
  const double l_wedge = std::abs(pu - 1.0);
  const double l_band = 1.0 - eps;
  const double l_cap = kPi * eps;
  const double total = 2 * l_wedge + 2 * l_band + l_cap;
  auto at = [&](double s) -> cplx {
    if (s < l_wedge) return 1.0 + (pu - 1.0) * (s / l_wedge);
    s -= l_wedge;
    if (s < l_band) return pu + (cplx(0, eps) - pu) * (s / l_band);
    s -= l_band;
    if (s < l_cap) return std::polar(eps, kPi / 2 + s / eps);
    s -= l_cap;
    if (s < l_band) return cplx(0, -eps) + (pl - cplx(0, -eps)) * (s / l_band);
    s -= l_band;
    return pl + (1.0 - pl) * std::min(s / l_wedge, 1.0);
  };
  Monogon m;
  for (int i = 0; i < n; ++i) m.samples.push_back(at(total * i / (n - 1)));
  m.samples.front() = 1.0;
  m.samples.back() = 1.0;
  for (size_t i = 1; i + 1 < m.samples.size(); ++i)
    if (std::abs(m.samples[i]) >= 1.0) throw DomainError("monogon eps too large: curve leaves the disc");
  return m;
}

cplx hecke_inverse_branch(const PiecewiseMoebiusMap& h, int j, cplx u) {
  const int d = h.d();
  if (j < 2 || j > d + 1) throw std::out_of_range("Hecke branch index out of range");
  const cplx z0 = theta_inverse_branch(h.theta(), u);
  const cplx z1 = moebius_inverse(h.group().alpha_j(d + 2 - j))(z0);
  return theta_apply(h.theta(), z1);
}

FareyLikeRestriction farey_like_restriction_hecke(int d, double eps, int n) {
  const PiecewiseMoebiusMap h(ExternalKind::Hecke, d);
  FareyLikeRestriction out;
  out.gamma = build_monogon(eps, n);
  const auto& s = out.gamma.samples;
  for (int j = 2; j <= d + 1; ++j) {
    const MoebiusMap ai = moebius_inverse(h.group().alpha_j(d + 2 - j));
    std::vector<cplx> arc;
    // Leaving 1 through Im > 0 pulls back to omega, returning through Im < 0 to 1.
    arc.push_back(theta_apply(h.theta(), ai(h.group().omega)));
    for (size_t i = 1; i + 1 < s.size(); ++i) arc.push_back(hecke_inverse_branch(h, j, s[i]));
    arc.push_back(theta_apply(h.theta(), ai(cplx(1.0))));
    out.preimage.push_back(std::move(arc));
  }
  return out;
}

namespace {

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_seg = [](cplx p, cplx q, cplx r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  return (d1 == 0 && on_seg(a, b, c)) || (d2 == 0 && on_seg(a, b, d)) ||
         (d3 == 0 && on_seg(c, d, a)) || (d4 == 0 && on_seg(c, d, b));
}

}  // namespace

int count_interior_components(const std::vector<std::vector<cplx>>& curves, double circle_tol) {
  struct Seg {
    cplx a, b;
    int run;
  };
  std::vector<Seg> segs;
  int runs = 0;
  for (const auto& c : curves) {
    bool open = false;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
      const bool inside = std::abs(c[i]) < 1.0 - circle_tol && std::abs(c[i + 1]) < 1.0 - circle_tol;
      if (!inside) {
        open = false;
        continue;
      }
      if (!open) {
        ++runs;
        open = true;
      }
      segs.push_back({c[i], c[i + 1], runs - 1});
    }
  }
  std::vector<int> parent(runs);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t k = i + 1; k < segs.size(); ++k) {
      if (segs[i].run == segs[k].run || find(segs[i].run) == find(segs[k].run)) continue;
      const Seg &s = segs[i], &t = segs[k];
      if (std::max(s.a.real(), s.b.real()) < std::min(t.a.real(), t.b.real()) ||
          std::max(t.a.real(), t.b.real()) < std::min(s.a.real(), s.b.real()) ||
          std::max(s.a.imag(), s.b.imag()) < std::min(t.a.imag(), t.b.imag()) ||
          std::max(t.a.imag(), t.b.imag()) < std::min(s.a.imag(), s.b.imag()))
        continue;
      if (segments_intersect(s.a, s.b, t.a, t.b)) parent[find(s.run)] = find(t.run);
    }
  }
  int count = 0;
  for (int r = 0; r < runs; ++r)
    if (find(r) == r) ++count;
  return count;
}

}  // namespace hecke
