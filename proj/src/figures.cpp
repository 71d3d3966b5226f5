#include "hecke/figures.hpp"

#include <algorithm>
#include <cmath>

namespace hecke {

namespace {

std::vector<cplx> unit_circle(int n = 2048) {
  std::vector<cplx> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = std::polar(1.0, kTwoPi * k / n);
  return c;
}

Viewport disc_view(int size) {
  if (size < 1) throw std::invalid_argument("figure size must be positive");
  return {0.0, 2.2, size, size};
}

void draw(Figure& f, const std::vector<std::vector<cplx>>& curves, RGB color) {
  draw_polylines(f.img, curves, f.view, color);
  f.curves.insert(f.curves.end(), curves.begin(), curves.end());
}

}  // namespace

TessellationFigure tessellation_figure(int d, int depth, int size) {
  TessellationFigure f;
  f.view = disc_view(size);
  f.img = ImageBuffer(size, size);
  const HeckeGroup g = build_hecke(d);
  f.polys = tessellation(g, depth);
  draw(f, {unit_circle()}, kCircleInk);
  for (const auto& p : f.polys) draw(f, polygon_edges(p, 64), kInk);
  return f;
}

BlaschkeFigure blaschke_figure(int d, int preimages, double theta0, int size) {
  if (preimages < 0) throw std::invalid_argument("preimage count must be non-negative");
  BlaschkeFigure f;
  f.view = disc_view(size);
  f.img = ImageBuffer(size, size);
  const BlaschkeMap B = make_blaschke(d);
  f.petal = build_petal(B, theta0);
  f.levels = petal_preimages(B, f.petal, preimages);
  draw(f, {unit_circle()}, kCircleInk);
  draw(f, {f.petal.boundary}, RGB{200, 30, 30});

  // B(P) in P makes each level enclose the previous one
  std::vector<std::vector<cplx>> prev{f.petal.boundary};
  for (const auto& lv : f.levels) {
    draw(f, lv.curves, kInk);
    f.failed_segments += lv.failed_segments.size();
    for (const auto& c : prev)
      for (cplx z : c) {
        if (std::abs(z) > 1.0 - 1e-3) continue;
        ++f.nesting_checked;
        bool in = false;
        for (const auto& outer : lv.curves) in = in || polygon_contains(outer, z);
        if (!in) ++f.nesting_violations;
      }
    prev = lv.curves;
  }
  return f;
}

ArcsFigure dividing_arcs_figure(int d, double h, int size) {
  ArcsFigure f;
  f.view = disc_view(size);
  f.img = ImageBuffer(size, size);
  const BlaschkeMap B = make_blaschke(d);
  f.arcs = dividing_arcs(B, h);
  draw(f, {unit_circle()}, kCircleInk);
  for (const auto* arc : {&f.arcs.gamma_plus, &f.arcs.gamma_minus}) {
    f.pullbacks.push_back(pullback_curve(B, *arc, false));
    draw(f, f.pullbacks.back().curves, RGB{40, 90, 200});
  }
  draw(f, {f.arcs.gamma_plus, f.arcs.gamma_minus}, RGB{200, 30, 30});

  // the last unit of Fatou length maps past the end of the arc
  for (const auto* arc : {&f.arcs.gamma_plus, &f.arcs.gamma_minus})
    for (size_t i = 1; i < arc->size(); ++i) {
      if (f.arcs.x[i - 1] > f.arcs.L - 1) break;
      f.invariance = std::max(f.invariance, polyline_distance(*arc, B((*arc)[i])));
    }
  return f;
}

ExternalMapFigure external_map_figure(ExternalKind kind, int d, double eps, int size) {
  ExternalMapFigure f;
  f.view = disc_view(size);
  f.img = ImageBuffer(size, size);
  const PiecewiseMoebiusMap map(kind, d);
  const HeckeGroup& g = map.group();

  draw(f, {unit_circle()}, kCircleInk);
  std::vector<std::vector<cplx>> pieces;
  for (int j = 1; j <= d + 1; ++j) {
    std::vector<cplx> c;
    for (int k = 0; k <= 400; ++k) c.push_back(theta_apply(map.theta(), geodesic_point(g.side(j), k / 400.0)));
    pieces.push_back(std::move(c));
  }
  draw(f, pieces, RGB{120, 120, 200});

  constexpr int kMonogonSamples = 1200;
  if (kind == ExternalKind::Hecke) {
    FareyLikeRestriction r = farey_like_restriction_hecke(d, eps, kMonogonSamples);
    f.gamma = std::move(r.gamma);
    f.preimage = std::move(r.preimage);
  } else {
    // F = theta1 sigma theta1^-1: candidates through every sector, kept where F maps back
    f.gamma = build_monogon(eps, kMonogonSamples);
    for (int k = 0; k <= d; ++k) {
      const MoebiusMap rk = moebius_power(g.rho, k);
      std::vector<cplx> arc;
      for (size_t i = 1; i + 1 < f.gamma.samples.size(); ++i) {
        const cplx u = f.gamma.samples[i];
        const cplx w = theta_apply(map.theta(), g.sigma(rk(theta_inverse_branch(map.theta(), u))));
        bool ok = false;
        try {
          ok = std::abs(map(w) - u) < 1e-9;
        } catch (const DomainError&) {
        }
        if (ok) {
          arc.push_back(w);
        } else if (arc.size() > 1) {
          f.preimage.push_back(std::move(arc));
          arc.clear();
        } else {
          arc.clear();
        }
      }
      if (arc.size() > 1) f.preimage.push_back(std::move(arc));
    }
  }
  draw(f, {f.gamma.samples}, RGB{200, 30, 30});
  draw(f, f.preimage, kInk);
  f.components = count_interior_components(f.preimage, 1e-9);
  return f;
}

CorrespondenceFigure correspondence_figure(const Polynomial& P, cplx z0, int depth, int size, int cap) {
  CorrespondenceFigure f;
  const Correspondence G{P, Involution::J(), Orientation::CovAfterJ};
  f.tree = orbit_tree(G, z0, depth, cap);
  std::vector<cplx> pts;
  for (const auto& n : f.tree.nodes)
    if (n.is_finite()) pts.push_back(n.value());

  // frame the central 96% of the cloud in each coordinate
  std::vector<double> xs, ys;
  for (cplx z : pts) xs.push_back(z.real()), ys.push_back(z.imag());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  auto q = [](const std::vector<double>& v, double t) { return v[static_cast<size_t>(t * (v.size() - 1))]; };
  double x0 = q(xs, 0.02), x1 = q(xs, 0.98), y0 = q(ys, 0.02), y1 = q(ys, 0.98);
  const double w = std::max({x1 - x0, y1 - y0, 1e-6}) * 1.15;
  f.view = {cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1)), w, size, size};
  f.img = ImageBuffer(size, size);
  draw_points(f.img, pts, f.view, kInk);
  return f;
}

BInvolutionFigure binvolution_figure(const BInvolutionData& data, const Viewport& view, int max_rank, Plane plane,
                                     int workers) {
  BInvolutionFigure f;
  f.view = view;
  if (plane == Plane::S)
    f.grid = classify_grid(SPlaneClassifier{&data, max_rank}, view, workers, &f.report);
  else
    f.grid = classify_grid(CorrPlaneClassifier{&data, max_rank}, view, workers, &f.report);
  f.img = colorize(f.grid, view, Palette::standard());
  return f;
}

SymmetryCensus corr_j_symmetry(const BInvolutionData& data, const Viewport& view,
                               const std::vector<TileClassification>& grid, int max_rank, int workers) {
  long decided = 0, agree = 0;
#pragma omp parallel for schedule(static) num_threads(workers) reduction(+ : decided, agree)
  for (int row = 0; row < view.py; ++row) {
    RootCache cache;
    for (int col = 0; col < view.px; ++col) {
      const TileClassification& t = grid[static_cast<size_t>(row) * view.px + col];
      if (t.verdict == Verdict::Undecided) continue;
      const cplx z = view.pixel_center(col, row);
      if (z == 0.0) continue;
      const TileClassification m = classify_corr_point(data, 1.0 / z, max_rank, &cache);
      if (m.verdict == Verdict::Undecided) continue;
      ++decided;
      if (m.side == mirror(t.side)) ++agree;
    }
  }
  return {decided, agree};
}

Viewport default_s_view(const BInvolutionData& data, int px) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (cplx u : data.U_boundary) {
    x0 = std::min(x0, u.real());
    x1 = std::max(x1, u.real());
    y0 = std::min(y0, u.imag());
    y1 = std::max(y1, u.imag());
  }
  return {cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1)), 1.1 * std::max(x1 - x0, y1 - y0), px, px};
}

}  // namespace hecke
