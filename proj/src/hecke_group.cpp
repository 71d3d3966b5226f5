#include "hecke/hecke_group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace hecke {

GroupWord reduce_word(const GroupWord& w, int d) {
  // Normal form as a stack of syllables: 0 means sigma, k > 0 means rho^k.
  std::vector<int> st;
  auto push = [&](int syl) {
    if (syl == 0) {
      if (!st.empty() && st.back() == 0)
        st.pop_back();
      else
        st.push_back(0);
      return;
    }
    if (!st.empty() && st.back() > 0) {
      int k = (st.back() + syl) % (d + 1);
      st.pop_back();
      if (k != 0) st.push_back(k);
      return;
    }
    st.push_back(syl);
  };
  for (Letter l : w.letters) {
    if (l == Letter::Sigma)
      push(0);
    else if (l == Letter::Rho)
      push(1);
    else
      push(d);
  }
  GroupWord out;
  for (int syl : st) {
    if (syl == 0)
      out.letters.push_back(Letter::Sigma);
    else
      for (int i = 0; i < syl; ++i) out.letters.push_back(Letter::Rho);
  }
  return out;
}

cplx HeckeGroup::sigma_fixed_point() const {
  MoebiusClass mc = classify_moebius(sigma);
  for (const auto& p : mc.fixed_points)
    if (p.is_finite() && std::abs(p.value()) < 1.0) return p.value();
  throw std::logic_error("sigma has no fixed point in the disc");
}

HeckeGroup build_hecke(int d) {
  if (d < kMinDegree || d > kMaxDegree)
    throw std::out_of_range("degree d must lie in [2, 8], got " + std::to_string(d));
  HeckeGroup g;
  g.d = d;
  g.omega = std::polar(1.0, kTwoPi / (d + 1));
  const cplx w = g.omega;
  g.rho = MoebiusMap(w, 0.0, 0.0, 1.0);
  g.sigma = MoebiusMap(2.0 * w, -w * (1.0 + w), 1.0 + w, -2.0 * w);
  for (int j = 1; j <= d; ++j) {
    MoebiusMap rj = moebius_power(g.rho, j);
    g.alpha.push_back(moebius_compose(g.sigma, rj));
    g.beta.push_back(moebius_compose(rj, g.sigma));
  }
  for (int k = 0; k <= d; ++k) g.Pi.vertices.push_back(std::polar(1.0, kTwoPi * k / (d + 1)));
  for (int j = 1; j <= d + 1; ++j)
    g.C.push_back({g.Pi.vertices[j - 1], g.Pi.vertices[j % (d + 1)]});
  return g;
}

MoebiusMap word_matrix(const HeckeGroup& g, const GroupWord& w) {
  MoebiusMap m;
  for (Letter l : w.letters) {
    const MoebiusMap& f =
        l == Letter::Sigma ? g.sigma : (l == Letter::Rho ? g.rho : moebius_inverse(g.rho));
    m = moebius_compose(m, f);
  }
  return m;
}

cplx evaluate_word(const HeckeGroup& g, const GroupWord& w, cplx z) {
  // Apply the rightmost letter first.
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (*it == Letter::Sigma)
      z = g.sigma(z);
    else if (*it == Letter::Rho)
      z = g.omega * z;
    else
      z = std::conj(g.omega) * z;
  }
  return z;
}

namespace {

IdealPolygon image_polygon(const MoebiusMap& m, const IdealPolygon& base) {
  IdealPolygon p;
  for (cplx v : base.vertices) {
    cplx w = m(v);
    p.vertices.push_back(w / std::abs(w));
  }
  std::sort(p.vertices.begin(), p.vertices.end(),
            [](cplx x, cplx y) { return angle_0_2pi(x) < angle_0_2pi(y); });
  return p;
}

std::vector<long long> polygon_key(const IdealPolygon& p) {
  std::vector<long long> key;
  for (cplx v : p.vertices) {
    double a = angle_0_2pi(v);
    if (a > kTwoPi - 5e-9) a = 0.0;
    key.push_back(std::llround(a / 1e-8));
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::vector<IdealPolygon> tessellation(const HeckeGroup& g, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  std::vector<MoebiusMap> gens;
  for (int j = 0; j <= g.d; ++j) {
    MoebiusMap rj = moebius_power(g.rho, j);
    gens.push_back(moebius_compose(moebius_compose(rj, g.sigma), moebius_inverse(rj)));
  }

  struct Node {
    MoebiusMap m;
    int last;
    int len;
  };
  std::vector<IdealPolygon> out;
  std::set<std::vector<long long>> seen;
  std::deque<Node> queue{{MoebiusMap::identity(), -1, 0}};
  while (!queue.empty()) {
    Node n = queue.front();
    queue.pop_front();
    IdealPolygon p = image_polygon(n.m, g.Pi);
    if (!seen.insert(polygon_key(p)).second) continue;
    out.push_back(std::move(p));
    if (n.len == depth) continue;
    for (int j = 0; j <= g.d; ++j)
      if (j != n.last) queue.push_back({moebius_compose(n.m, gens[j]), j, n.len + 1});
  }
  return out;
}

bool fundamental_domain_contains(const HeckeGroup& g, cplx z) {
  constexpr double tol = 1e-12;
  if (std::abs(z) <= tol) return true;
  double a = std::arg(z);
  if (a < -tol) a += kTwoPi;
  if (a < -tol || a > kTwoPi / (g.d + 1) + tol) return false;
  return geodesic_side(g.side(1), z) <= tol;
}

int region_index(const HeckeGroup& g, cplx z) {
  for (int j = 1; j <= g.d + 1; ++j)
    if (geodesic_side(g.side(j), z) > 0.0) return j;
  return 0;
}

bool polygon_interior_contains(const IdealPolygon& poly, cplx z, double tol) {
  const auto& v = poly.vertices;
  for (size_t k = 0; k < v.size(); ++k)
    if (geodesic_side({v[k], v[(k + 1) % v.size()]}, z) >= -tol) return false;
  return true;
}

std::vector<std::vector<cplx>> polygon_edges(const IdealPolygon& poly, int samples_per_side) {
  std::vector<std::vector<cplx>> edges;
  const auto& v = poly.vertices;
  for (size_t k = 0; k < v.size(); ++k) {
    Geodesic gd{v[k], v[(k + 1) % v.size()]};
    std::vector<cplx> pts;
    for (int i = 0; i <= samples_per_side; ++i)
      pts.push_back(geodesic_point(gd, static_cast<double>(i) / samples_per_side));
    edges.push_back(std::move(pts));
  }
  return edges;
}

}  // namespace hecke
