#pragma once

#include <vector>

#include "hecke/b_involution.hpp"
#include "hecke/hecke_group.hpp"
#include "hecke/parabolic.hpp"
#include "hecke/quotients.hpp"
#include "hecke/raster.hpp"

namespace hecke {

// Builders shared by the command line tool and the acceptance harness. Every
// figure carries the curves it drew so properties can be checked on them.

struct Figure {
  ImageBuffer img;
  Viewport view;
  std::vector<std::vector<cplx>> curves;
};

inline constexpr RGB kInk{0, 0, 0};
inline constexpr RGB kCircleInk{150, 150, 150};

struct TessellationFigure : Figure {
  std::vector<IdealPolygon> polys;
};
TessellationFigure tessellation_figure(int d, int depth, int size);

struct BlaschkeFigure : Figure {
  Petal petal;
  std::vector<PreimageCurves> levels;
  int nesting_checked = 0;
  int nesting_violations = 0;  // samples of level k-1 outside level k
  size_t failed_segments = 0;
};
BlaschkeFigure blaschke_figure(int d, int preimages, double theta0, int size);

struct ArcsFigure : Figure {
  DividingArcs arcs;
  std::vector<PreimageCurves> pullbacks;  // of gamma+ and gamma-
  double invariance = 0;                  // max distance from B(arc sample) to the arc
};
ArcsFigure dividing_arcs_figure(int d, double h, int size);

struct ExternalMapFigure : Figure {
  Monogon gamma;
  std::vector<std::vector<cplx>> preimage;
  int components = 0;
};
ExternalMapFigure external_map_figure(ExternalKind kind, int d, double eps, int size);

struct CorrespondenceFigure : Figure {
  OrbitTree tree;
};
CorrespondenceFigure correspondence_figure(const Polynomial& P, cplx z0, int depth, int size, int cap = 200000);

enum class Plane { S, Corr };

struct BInvolutionFigure : Figure {
  std::vector<TileClassification> grid;
  RenderReport report;
};
BInvolutionFigure binvolution_figure(const BInvolutionData& data, const Viewport& view, int max_rank, Plane plane,
                                     int workers);

struct SymmetryCensus {
  long decided = 0;  // pixels decided in both z and J(z)
  long agree = 0;
  double fraction() const { return decided ? static_cast<double>(agree) / decided : 0.0; }
};

// Compares the side of each decided pixel with the side of J(pixel centre).
SymmetryCensus corr_j_symmetry(const BInvolutionData& data, const Viewport& view,
                               const std::vector<TileClassification>& grid, int max_rank, int workers);

// Frame around U with a 10% margin.
Viewport default_s_view(const BInvolutionData& data, int px);

}  // namespace hecke
