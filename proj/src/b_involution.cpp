#include "hecke/b_involution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hecke {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Polynomial shifted(const Polynomial& Q, cplx u) {
  std::vector<cplx> c = Q.c;
  c[0] -= u;
  return Polynomial(std::move(c));
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx Q_of_J(const Polynomial& Q, cplx x) {
  if (x == 0.0) return {kInf, 0.0};
  return Q(1.0 / x);
}

// R2 low-discrepancy sequence in the unit square.
cplx r2_point(int k) {
  constexpr double g = 1.32471795724474602596;
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  const double x = std::fmod(0.5 + a1 * k, 1.0), y = std::fmod(0.5 + a2 * k, 1.0);
  return {x, y};
}

struct Box {
  double x0, x1, y0, y1;
};

Box bbox(const std::vector<cplx>& v) {
  Box b{kInf, -kInf, kInf, -kInf};
  for (cplx z : v) {
    b.x0 = std::min(b.x0, z.real());
    b.x1 = std::max(b.x1, z.real());
    b.y0 = std::min(b.y0, z.imag());
    b.y1 = std::max(b.y1, z.imag());
  }
  return b;
}

std::vector<cplx> interior_samples(const JordanDisc& D, int n) {
  const Box b = bbox(D.boundary());
  std::vector<cplx> out;
  for (int k = 0; static_cast<int>(out.size()) < n && k < 100 * n; ++k) {
    const cplx t = r2_point(k);
    const cplx z(b.x0 + t.real() * (b.x1 - b.x0), b.y0 + t.imag() * (b.y1 - b.y0));
    if (D.locate(z) == Location::Inside) out.push_back(z);
  }
  return out;
}

double dist_to_set(const std::vector<cplx>& s, cplx z) {
  double best = kInf;
  for (cplx p : s) best = std::min(best, std::abs(z - p));
  return best;
}

}  // namespace

BInvolutionData make_binvolution(Polynomial Q, std::vector<cplx> boundary, std::vector<cplx> pinch,
                                 double tol) {
  BInvolutionData d;
  d.Q = std::move(Q);
  d.tol = tol;
  d.U_boundary.reserve(boundary.size());
  for (cplx z : boundary) d.U_boundary.push_back(d.Q(z));
  d.D = JordanDisc(std::move(boundary), tol);
  d.pinch = std::move(pinch);
  for (cplx p : d.pinch) d.singular.push_back(d.Q(p));
  return d;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) os << "CHECK " << c.name << (c.pass ? " PASS " : " FAIL ") << c.detail << "\n";
  return os.str();
}

SResult try_eval_S(const BInvolutionData& data, cplx u, bool extend, std::vector<cplx>* warm) {
  if (!finite(u)) return {SStatus::OutOfDomain, {}, {}};
  for (size_t i = 0; i < data.singular.size(); ++i)
    if (std::abs(u - data.singular[i]) < data.tol)
      return {SStatus::Ok, Q_of_J(data.Q, data.pinch[i]), data.pinch[i]};

  const Polynomial p = shifted(data.Q, u);
  ImageSet roots;
  try {
    roots = warm ? poly_roots_warm(p, *warm) : poly_roots(p);
  } catch (const RootError&) {
    return {SStatus::Undecidable, {}, {}};
  }
  int inside = 0;
  bool band = false;
  cplx x{};
  for (const auto& r : roots) {
    const cplx z = r.z.value();
    switch (data.D.locate(z)) {
      case Location::Inside:
        inside += r.multiplicity;
        x = z;
        break;
      case Location::Band:
        if (extend) {
          inside += r.multiplicity;
          x = z;
        } else {
          band = true;
        }
        break;
      case Location::Outside:
        break;
    }
  }
  if (band || inside > 1) return {SStatus::Undecidable, {}, {}};
  if (inside == 0) return {SStatus::OutOfDomain, {}, {}};
  return {SStatus::Ok, Q_of_J(data.Q, x), x};
}

cplx eval_S(const BInvolutionData& data, cplx u) {
  const SResult r = try_eval_S(data, u);
  if (r.status == SStatus::OutOfDomain) throw OutOfDomain("eval_S: u is outside the closure of U");
  if (r.status == SStatus::Undecidable) throw Undecidable("eval_S: disc root inside the boundary band");
  return r.value;
}

TileClassification tile_rank(const BInvolutionData& data, cplx u, int max_rank, RootCache* cache) {
  if (max_rank < 0) throw std::invalid_argument("tile_rank: max_rank must be non-negative");
  for (int k = 0;; ++k) {
    if (!finite(u)) return {Verdict::TileRank, k, Side::None};
    for (cplx s : data.singular)
      if (std::abs(u - s) < kSingularBand) return {Verdict::Undecided, -1, Side::None};
    const SResult r = try_eval_S(data, u, false, cache ? &cache->at(k) : nullptr);
    if (r.status == SStatus::OutOfDomain) return {Verdict::TileRank, k, Side::None};
    if (r.status == SStatus::Undecidable) return {Verdict::Undecided, -1, Side::None};
    if (k == max_rank) return {Verdict::NonEscapingApprox, -1, Side::None};
    u = r.value;
  }
}

TileClassification classify_corr_point(const BInvolutionData& data, cplx z, int max_rank,
                                       RootCache* cache) {
  TileClassification t = tile_rank(data, data.Q(z), max_rank, cache);
  if (t.verdict == Verdict::TileRank) {
    t.side = Side::Omega;
  } else if (t.verdict == Verdict::NonEscapingApprox) {
    switch (data.D.locate(z)) {
      case Location::Inside:
        t.side = Side::Kplus;
        break;
      case Location::Outside:
        t.side = Side::Kminus;
        break;
      case Location::Band:
        t = {Verdict::Undecided, -1, Side::None};
        break;
    }
  }
  return t;
}

Side mirror(Side s) {
  if (s == Side::Kplus) return Side::Kminus;
  if (s == Side::Kminus) return Side::Kplus;
  return s;
}

std::optional<cplx> distinguished_branch(const BInvolutionData& data, cplx z) {
  const SResult s1 = try_eval_S(data, data.Q(z));
  if (s1.status != SStatus::Ok) return std::nullopt;
  const SResult s2 = try_eval_S(data, s1.value);
  if (s2.status != SStatus::Ok) return std::nullopt;
  return s2.preimage;
}

bool check_prop67(const BInvolutionData& data, cplx z, double* residual) {
  const cplx Sv = eval_S(data, data.Q(z));
  const Correspondence G{data.Q, Involution::J(), Orientation::CovAfterJ};
  const std::vector<SpherePoint> lhs = flatten(corr_images(G, SpherePoint(z)));

  std::vector<SpherePoint> rhs = flatten(poly_roots(shifted(data.Q, Sv)));
  const cplx jz = 1.0 / z;
  size_t drop = 0;
  double best = kInf;
  for (size_t i = 0; i < rhs.size(); ++i) {
    const double e = std::abs(rhs[i].value() - jz);
    if (e < best) best = e, drop = i;
  }
  rhs.erase(rhs.begin() + static_cast<long>(drop));

  const double h = lhs.size() == rhs.size() ? hausdorff(lhs, rhs) : kInf;
  if (residual) *residual = h;
  return h < 1e-6;
}

InjectivityReport injectivity_witness(const BInvolutionData& data, int n, int max_rank) {
  InjectivityReport rep;
  rep.boundary_simple = !self_intersection(data.U_boundary).has_value();
  const std::vector<cplx> interior = interior_samples(data.D, std::max(1, n / 2));
  if (!interior.empty()) rep.boundary_winding = winding_number(data.U_boundary, data.Q(interior.front()));

  std::vector<cplx> boundary;
  const auto& v = data.D.boundary();
  const int nb = n - static_cast<int>(interior.size());
  for (int k = 0; k < nb; ++k) {
    const cplx z = v[static_cast<size_t>(k) * v.size() / std::max(1, nb)];
    // at a pinch point the double root is expected
    if (dist_to_set(data.pinch, z) > 1e-2) boundary.push_back(z);
  }

  RootCache cache;
  auto check = [&](cplx z, bool interior_point) {
    ++rep.samples;
    const ImageSet roots = poly_roots(shifted(data.Q, data.Q(z)));
    int closed = 0, inside = 0, outside = 0;
    for (const auto& r : roots) {
      const Location loc = data.D.locate(r.z.value());
      if (loc != Location::Outside) closed += r.multiplicity;
      if (loc == Location::Inside) inside += r.multiplicity;
      if (loc == Location::Outside) outside += r.multiplicity;
    }
    if (closed != 1) ++rep.collisions;
    if (!interior_point) return;
    const TileClassification t = tile_rank(data, data.Q(z), max_rank, &cache);
    if (t.verdict != Verdict::NonEscapingApprox) return;
    ++rep.kset_samples;
    if (inside != 1 || outside != data.d()) ++rep.kset_bad;
  };
  for (cplx z : interior) check(z, true);
  for (cplx z : boundary) check(z, false);
  return rep;
}

double boundary_involution_residual(const BInvolutionData& data, int samples, double min_arc) {
  const auto& U = data.U_boundary;
  const size_t n = U.size();
  std::vector<double> arc(n + 1, 0.0);
  for (size_t i = 0; i < n; ++i) arc[i + 1] = arc[i] + std::abs(U[(i + 1) % n] - U[i]);
  const double total = arc[n];
  std::vector<size_t> sing_idx;
  for (cplx s : data.singular) {
    size_t best = 0;
    for (size_t i = 1; i < n; ++i)
      if (std::abs(U[i] - s) < std::abs(U[best] - s)) best = i;
    sing_idx.push_back(best);
  }
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const size_t i = static_cast<size_t>(k) * n / samples;
    bool skip = false;
    for (size_t j : sing_idx) {
      const double a = std::abs(arc[i] - arc[j]);
      if (std::min(a, total - a) < min_arc) skip = true;
    }
    if (skip) continue;
    const SResult s1 = try_eval_S(data, U[i], true);
    if (s1.status != SStatus::Ok) return kInf;
    const SResult s2 = try_eval_S(data, s1.value, true);
    if (s2.status != SStatus::Ok) return kInf;
    worst = std::max(worst, std::abs(s2.value - U[i]));
  }
  return worst;
}

ValidationReport validate(const BInvolutionData& data) {
  ValidationReport rep;
  const auto& v = data.D.boundary();
  const double tol = data.tol;

  {
    const bool enough = v.size() >= 1000;
    const bool simple = !self_intersection(v).has_value();
    const double area = data.D.signed_area();
    rep.checks.push_back({"boundary_simple", enough && simple && area > 0,
                          "vertices=" + std::to_string(v.size()) + " simple=" + (simple ? "yes" : "no") +
                              fmt(" area=%.6g", area)});
  }
  {
    const double e1 = dist_to_set(v, 1.0), e2 = dist_to_set(v, -1.0);
    rep.checks.push_back({"plus_minus_one", e1 <= tol && e2 <= tol,
                          fmt("d(1)=%.3g", e1) + fmt(" d(-1)=%.3g", e2)});
  }
  {
    double h = 0.0;
    for (cplx z : v) h = std::max(h, z == 0.0 ? kInf : data.D.distance(1.0 / z));
    rep.checks.push_back({"j_symmetry", h < tol, fmt("hausdorff=%.3g", h)});
  }
  {
    bool ok = !data.pinch.empty();
    double worst_b = 0, worst_q = 0, worst_j = 0;
    for (cplx p : data.pinch) {
      worst_b = std::max(worst_b, data.D.distance(p));
      worst_q = std::max(worst_q, std::abs(data.Q.derivative()(p)));
      worst_j = std::max(worst_j, p == 0.0 ? kInf : dist_to_set(data.pinch, 1.0 / p));
    }
    ok = ok && worst_b < tol && worst_q < tol && worst_j < tol;
    rep.checks.push_back({"pinch_set", ok,
                          "count=" + std::to_string(data.pinch.size()) + fmt(" on_boundary=%.3g", worst_b) +
                              fmt(" |Q'|=%.3g", worst_q) + fmt(" J_closure=%.3g", worst_j)});
  }
  {
    const Polynomial dQ = data.Q.derivative();
    bool ok = true;
    int interior = 0, stray = 0;
    if (dQ.degree() >= 1) {
      for (const auto& r : poly_roots(dQ)) {
        const cplx c = r.z.value();
        const bool at_pinch = dist_to_set(data.pinch, c) < tol;
        if (at_pinch) continue;
        if (data.D.locate(c) == Location::Inside) ++interior;
        else if (data.D.distance(c) < 1e-3) ++stray;
      }
    }
    double min_away = kInf;
    for (cplx z : v)
      if (dist_to_set(data.pinch, z) > 1e-2) min_away = std::min(min_away, std::abs(dQ(z)));
    ok = interior == 0 && stray == 0 && min_away > tol;
    rep.checks.push_back({"critical_set", ok,
                          "interior=" + std::to_string(interior) + " near_boundary=" + std::to_string(stray) +
                              fmt(" min|Q'|_away=%.3g", min_away)});
  }
  {
    const InjectivityReport w = injectivity_witness(data, 10000, 0);
    const bool ok = w.collisions == 0 && w.boundary_simple && w.boundary_winding == 1;
    rep.checks.push_back({"injectivity", ok,
                          "samples=" + std::to_string(w.samples) + " collisions=" + std::to_string(w.collisions) +
                              " image_simple=" + (w.boundary_simple ? "yes" : "no") +
                              " winding=" + std::to_string(w.boundary_winding)});
  }
  return rep;
}

std::vector<cplx> symmetric_boundary(double b1, double b2, int n) {
  if (n < 4 || n % 2) throw std::invalid_argument("symmetric_boundary: n must be even and >= 4");
  std::vector<cplx> v(n);
  v[0] = 1.0;
  v[n / 2] = -1.0;
  for (int k = 1; k < n / 2; ++k) {
    const double t = kTwoPi * k / n;
    v[k] = std::polar(std::exp(b1 * std::sin(t) + b2 * std::sin(2 * t)), t);
    v[n - k] = 1.0 / v[k];
  }
  return v;
}

Polynomial pinched_polynomial(int d, double r) {
  if (d < 1) throw std::invalid_argument("pinched_polynomial: d must be positive");
  // Q' = (1 - z)(1 - z/r)^(d-1)
  std::vector<double> dq{1.0, -1.0};
  for (int k = 1; k < d; ++k) {
    std::vector<double> next(dq.size() + 1, 0.0);
    for (size_t i = 0; i < dq.size(); ++i) {
      next[i] += dq[i];
      next[i + 1] -= dq[i] / r;
    }
    dq = std::move(next);
  }
  std::vector<cplx> c(dq.size() + 1, 0.0);
  for (size_t i = 0; i < dq.size(); ++i) c[i + 1] = dq[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(c));
}

long nonescaping_census(const BInvolutionData& data, int n, int max_rank) {
  const Box b = bbox(data.U_boundary);
  long count = 0;
  RootCache cache;
  for (int j = 0; j < n; ++j) {
    cache.clear();
    for (int i = 0; i < n; ++i) {
      const cplx u(b.x0 + (i + 0.5) / n * (b.x1 - b.x0), b.y0 + (j + 0.5) / n * (b.y1 - b.y0));
      if (tile_rank(data, u, max_rank, &cache).verdict == Verdict::NonEscapingApprox) ++count;
    }
  }
  return count;
}

std::optional<SearchResult> search_instance(int d, int vertices, double tol) {
  // r = 2 first: Q(2) = Q(1/2) gives S a superattracting fixed point
  const double rs[] = {2.0, 3.0, 1.5, 4.0};
  const double bs[][2] = {{0.0, 0.0}, {0.1, 0.0}, {-0.1, 0.0}, {0.0, 0.1}, {0.0, -0.1}};
  int tried = 0;
  for (double r : rs)
    for (const auto& b : bs) {
      ++tried;
      BInvolutionData data = make_binvolution(pinched_polynomial(d, r), symmetric_boundary(b[0], b[1], vertices),
                                              {cplx(1.0)}, tol);
      if (!validate(data).all_pass()) continue;
      const long ne = nonescaping_census(data, 64, 50);
      if (ne == 0) continue;
      return SearchResult{std::move(data), {r, b[0], b[1]}, tried, ne};
    }
  return std::nullopt;
}

}  // namespace hecke
