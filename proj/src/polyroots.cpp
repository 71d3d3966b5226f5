#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hecke/correspondence.hpp"

namespace hecke {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  cplx p, dp;
  double bound;  // sum |a_k| |z|^k
};

Eval horner(const std::vector<cplx>& a, cplx z) {
  const int n = static_cast<int>(a.size()) - 1;
  cplx p = a[n], dp = 0.0;
  double bound = std::abs(a[n]);
  const double r = std::abs(z);
  for (int k = n - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + a[k];
    bound = bound * r + std::abs(a[k]);
  }
  return {p, dp, bound};
}

std::vector<cplx> initial_roots(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  double r = 0.0;
  for (int k = 0; k < n; ++k)
    if (a[k] != 0.0) r = std::max(r, std::pow(std::abs(a[k] / a[n]), 1.0 / (n - k)));
  if (r == 0.0) r = 1.0;
  std::vector<cplx> z(n);
  // the offset keeps the start off any symmetry axis of real polynomials
  for (int k = 0; k < n; ++k) z[k] = std::polar(r, kTwoPi * k / n + 0.4);
  return z;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// The centroid of an m-fold cluster is only eps^(1/m) accurate; the (m-1)-th
// derivative has a simple root there, which Newton resolves.
void refine_clusters(const std::vector<cplx>& a, ImageSet& roots) {
  for (auto& r : roots) {
    if (r.multiplicity < 2) continue;
    std::vector<cplx> d = a;
    for (int k = 1; k < r.multiplicity; ++k) {
      for (size_t j = 1; j < d.size(); ++j) d[j - 1] = static_cast<double>(j) * d[j];
      d.pop_back();
    }
    cplx w = r.z.value();
    const cplx w0 = w;
    for (int it = 0; it < 8; ++it) {
      const Eval e = horner(d, w);
      if (e.dp == 0.0) break;
      const cplx step = e.p / e.dp;
      w -= step;
      if (std::abs(step) <= 4 * kEps * std::abs(w)) break;
    }
    // a runaway step means the cluster was not a genuine multiple root
    if (std::abs(w - w0) < 1e-4 * std::max(1.0, std::abs(w0))) r.z = SpherePoint(w);
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

cplx Polynomial::operator()(cplx z) const { return horner(c, z).p; }

Polynomial Polynomial::derivative() const {
  if (c.size() <= 1) return Polynomial({0.0});
  std::vector<cplx> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return Polynomial(std::move(d));
}

double Polynomial::magnitude(double r) const {
  double s = 0.0;
  for (size_t k = c.size(); k-- > 0;) s = s * r + std::abs(c[k]);
  return s;
}

std::vector<SpherePoint> flatten(const ImageSet& s) {
  std::vector<SpherePoint> out;
  for (const auto& p : s)
    for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.z);
  return out;
}

int total_multiplicity(const ImageSet& s) {
  int m = 0;
  for (const auto& p : s) m += p.multiplicity;
  return m;
}

void aberth(const std::vector<cplx>& a, std::vector<cplx>& z, int max_iter) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 1) throw RootError("aberth: degree < 1");
  if (static_cast<int>(z.size()) != n) z = initial_roots(a);
  std::vector<char> done(n, 0);
  int remaining = n;
  for (int it = 0; it < max_iter && remaining > 0; ++it) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Eval e = horner(a, z[i]);
      if (std::abs(e.p) <= 16.0 * kEps * e.bound) {
        done[i] = 1;
        --remaining;
        continue;
      }
      const cplx ratio = e.p / e.dp;
      cplx s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx step = ratio / (1.0 - ratio * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
        step = cplx(1e-8 * (1.0 + std::abs(z[i])), 0.0);
      z[i] -= step;
    }
  }
}

ImageSet cluster_roots(const std::vector<cplx>& a, const std::vector<cplx>& z, double radius) {
  const int n = static_cast<int>(z.size());
  std::vector<double> incl(n, 0.0);
  for (int i = 0; i < n; ++i) {
    cplx prod = a.back();
    for (int j = 0; j < n; ++j)
      if (j != i) prod *= z[i] - z[j];
    const double r = n * std::abs(horner(a, z[i]).p) / std::abs(prod);
    // a meaningless disc (unconverged or exactly coincident roots) falls back to the radius
    incl[i] = std::isfinite(r) ? std::min(r, 1e-3 * std::max(1.0, std::abs(z[i]))) : 0.0;
  }
  Dsu dsu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = std::abs(z[i] - z[j]);
      const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (dist < incl[i] + incl[j] || dist < radius * scale) dsu.unite(i, j);
    }
  ImageSet out;
  std::vector<int> slot(n, -1);
  std::vector<cplx> sum;
  for (int i = 0; i < n; ++i) {
    const int r = dsu.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({SpherePoint(0.0), 0});
      sum.push_back(0.0);
    }
    sum[slot[r]] += z[i];
    ++out[slot[r]].multiplicity;
  }
  for (size_t k = 0; k < out.size(); ++k) out[k].z = sum[k] / static_cast<double>(out[k].multiplicity);
  return out;
}

namespace {

bool residuals_ok(const Polynomial& p, const ImageSet& roots, double tol) {
  const int n = p.degree();
  for (const auto& r : roots) {
    const cplx w = r.z.value();
    const double res = std::abs(p(w)) / (1.0 + std::pow(std::abs(w), n));
    if (!(res < tol)) return false;
  }
  return true;
}

}  // namespace

ImageSet poly_roots_warm(const Polynomial& p, std::vector<cplx>& warm, double tol) {
  const int n = p.degree();
  if (n < 2 || n > kMaxPolyDegree || p.c[0] == 0.0) return poly_roots(p, tol);
  if (static_cast<int>(warm.size()) == n) {
    std::vector<cplx> z = warm;
    aberth(p.c, z, AberthOptions{}.max_iter);
    ImageSet found = cluster_roots(p.c, z, AberthOptions{}.cluster_radius);
    refine_clusters(p.c, found);
    if (residuals_ok(p, found, tol)) {
      warm = std::move(z);
      return found;
    }
  }
  std::vector<cplx> z;
  aberth(p.c, z, AberthOptions{}.max_iter);
  ImageSet found = cluster_roots(p.c, z, AberthOptions{}.cluster_radius);
  refine_clusters(p.c, found);
  if (!residuals_ok(p, found, tol)) throw RootError("poly_roots: no convergence within the iteration cap");
  warm = std::move(z);
  return found;
}

ImageSet poly_roots(const Polynomial& p, double tol, const AberthOptions& opt) {
  const int n = p.degree();
  if (n < 1) throw RootError("poly_roots: degree < 1");
  if (n > kMaxPolyDegree) throw RootError("poly_roots: degree above the supported maximum");

  // exact zero roots are split off; Aberth converges only linearly onto them
  int zeros = 0;
  while (p.c[zeros] == 0.0) ++zeros;
  ImageSet out;
  if (zeros > 0) out.push_back({SpherePoint(0.0), zeros});
  if (zeros == n) return out;
  std::vector<cplx> a(p.c.begin() + zeros, p.c.end());

  if (a.size() == 2) {
    out.push_back({SpherePoint(-a[0] / a[1]), 1});
    return out;
  }
  std::vector<cplx> z;
  aberth(a, z, opt.max_iter);
  ImageSet found = cluster_roots(a, z, opt.cluster_radius);
  refine_clusters(a, found);
  if (!residuals_ok(p, found, tol)) throw RootError("poly_roots: no convergence within the iteration cap");
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

}  // namespace hecke
