#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include "hecke/correspondence.hpp"

namespace hecke {

std::vector<cplx> deflate_at(const Polynomial& f, cplx z) {
  const int n = f.degree();
  if (n < 1) return {};
  std::vector<cplx> b(n);
  b[n - 1] = f.c[n];
  for (int k = n - 1; k >= 1; --k) b[k - 1] = f.c[k] + z * b[k];
  return b;
}

namespace {

// Newton on f(w) - f(z0) itself, free of the rounding in the deflated
// coefficients. Only steps that lower the residual are kept.
void polish(const Polynomial& f, cplx z0, ImageSet& s) {
  const Polynomial df = f.derivative();
  const cplx target = f(z0);
  for (auto& p : s) {
    if (p.multiplicity != 1) continue;
    cplx w = p.z.value();
    double res = std::abs(f(w) - target);
    for (int it = 0; it < 3; ++it) {
      const cplx d = df(w);
      if (d == 0.0) break;
      const cplx cand = w - (f(w) - target) / d;
      const double r = std::abs(f(cand) - target);
      if (!(r < res) || std::abs(cand - z0) < 1e-3 * std::abs(cand - w)) break;
      w = cand;
      res = r;
    }
    p.z = SpherePoint(w);
  }
}

}  // namespace

ImageSet cov0_images(const Polynomial& f, const SpherePoint& z) {
  const int n = f.degree();
  if (n < 2) throw std::invalid_argument("cov0_images: degree must be at least 2");
  if (z.is_infinite()) return {{SpherePoint::infinity(), n - 1}};
  const cplx z0 = z.value();
  if (std::abs(z0) <= 1.0) {
    ImageSet s = poly_roots(Polynomial(deflate_at(f, z0)));
    polish(f, z0, s);
    return s;
  }

  // w = z0 v keeps the coefficients bounded: c_m = sum_{k>m} a_k z0^(k-n)
  std::vector<cplx> c(n, 0.0);
  const cplx iz = 1.0 / z0;
  cplx acc = 0.0, pw = 1.0;
  for (int k = n; k >= 1; --k) {
    acc += f.c[k] * pw;
    c[k - 1] = acc;
    pw *= iz;
  }
  ImageSet v = poly_roots(Polynomial(std::move(c)));
  for (auto& p : v) p.z = SpherePoint(z0 * p.z.value());
  polish(f, z0, v);
  return v;
}

namespace {

ImageSet map_set(const Involution& J, ImageSet s) {
  for (auto& p : s) p.z = J(p.z);
  return s;
}

}  // namespace

ImageSet corr_images(const Correspondence& C, const SpherePoint& z) {
  if (C.orientation == Orientation::CovAfterJ) return cov0_images(C.P, C.J(z));
  return map_set(C.J, cov0_images(C.P, z));
}

ImageSet corr_preimages(const Correspondence& C, const SpherePoint& w) {
  if (C.orientation == Orientation::CovAfterJ) return map_set(C.J, cov0_images(C.P, w));
  return cov0_images(C.P, C.J(w));
}

namespace {

constexpr double kMergeTol = 1e-10;

struct CellKey {
  long long x, y;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  size_t operator()(const CellKey& k) const {
    return std::hash<long long>()(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
  }
};

long long cell_coord(double v) {
  const double c = std::floor(v / kMergeTol);
  constexpr double lim = 4e18;
  return static_cast<long long>(std::clamp(c, -lim, lim));
}

class PointIndex {
 public:
  // Index of an existing point within the merge tolerance, or -1.
  int find(const std::vector<SpherePoint>& pts, const SpherePoint& z) const {
    if (z.is_infinite()) return inf_;
    const cplx v = z.value();
    const long long cx = cell_coord(v.real()), cy = cell_coord(v.imag());
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (int idx : it->second)
          if (std::abs(pts[idx].value() - v) < kMergeTol) return idx;
      }
    return -1;
  }

  void insert(const SpherePoint& z, int idx) {
    if (z.is_infinite()) {
      inf_ = idx;
      return;
    }
    const cplx v = z.value();
    cells_[{cell_coord(v.real()), cell_coord(v.imag())}].push_back(idx);
  }

 private:
  std::unordered_map<CellKey, std::vector<int>, CellHash> cells_;
  int inf_ = -1;
};

}  // namespace

OrbitTree orbit_tree(const Correspondence& C, const SpherePoint& z0, int depth, int cap) {
  if (depth < 0) throw std::invalid_argument("orbit_tree: depth must be non-negative");
  if (cap < 1) throw std::invalid_argument("orbit_tree: cap must be positive");
  OrbitTree t;
  PointIndex index;
  t.nodes.push_back(z0);
  t.parent.push_back(-1);
  t.depth.push_back(0);
  index.insert(z0, 0);

  std::deque<int> queue{0};
  while (!queue.empty() && !t.truncated) {
    const int u = queue.front();
    queue.pop_front();
    if (t.depth[u] >= depth) continue;
    for (const auto& img : corr_images(C, t.nodes[u])) {
      const int hit = index.find(t.nodes, img.z);
      if (hit >= 0) {
        t.edges.emplace_back(u, hit);
        continue;
      }
      if (static_cast<int>(t.nodes.size()) >= cap) {
        t.truncated = true;
        break;
      }
      const int id = static_cast<int>(t.nodes.size());
      t.nodes.push_back(img.z);
      t.parent.push_back(u);
      t.depth.push_back(t.depth[u] + 1);
      t.edges.emplace_back(u, id);
      index.insert(img.z, id);
      queue.push_back(id);
    }
  }
  return t;
}

double hausdorff(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto dist = [](const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinite() || q.is_infinite())
      return p.is_infinite() && q.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(p.value() - q.value());
  };
  auto directed = [&](const std::vector<SpherePoint>& x, const std::vector<SpherePoint>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace hecke
