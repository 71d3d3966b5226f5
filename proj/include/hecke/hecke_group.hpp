#pragma once

#include <vector>

#include "hecke/complex_geom.hpp"

namespace hecke {

struct IdealPolygon {
  std::vector<cplx> vertices;  // counter-clockwise, on the unit circle
};

enum class Letter { Sigma, Rho, RhoInv };

struct GroupWord {
  std::vector<Letter> letters;  // product read left to right, applied right to left
};

// Free reduction modulo sigma^2 = rho^(d+1) = 1.
GroupWord reduce_word(const GroupWord& w, int d);

struct HeckeGroup {
  int d = 0;
  cplx omega;
  MoebiusMap sigma, rho;
  std::vector<MoebiusMap> alpha;  // alpha[j-1] = sigma rho^j, j = 1..d
  std::vector<MoebiusMap> beta;   // beta[j-1]  = rho^j sigma
  IdealPolygon Pi;
  std::vector<Geodesic> C;  // C[j-1] joins omega^(j-1) to omega^j

  const MoebiusMap& alpha_j(int j) const { return alpha.at(j - 1); }
  const MoebiusMap& beta_j(int j) const { return beta.at(j - 1); }
  const Geodesic& side(int j) const { return C.at(j - 1); }
  cplx sigma_fixed_point() const;  // point of C_1 closest to 0
};

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 8;

HeckeGroup build_hecke(int d);

MoebiusMap word_matrix(const HeckeGroup& g, const GroupWord& w);
cplx evaluate_word(const HeckeGroup& g, const GroupWord& w, cplx z);

// Translates of Pi by reduced words of length <= depth in the side
// involutions rho^j sigma rho^-j; vertices sorted by angle in [0, 2pi).
std::vector<IdealPolygon> tessellation(const HeckeGroup& g, int depth);

bool fundamental_domain_contains(const HeckeGroup& g, cplx z);

// 0 for Pi, j for D_j. Closed regions; a point on C_j is reported as Pi.
int region_index(const HeckeGroup& g, cplx z);

// True when z lies strictly inside the ideal polygon (all sides, margin tol).
bool polygon_interior_contains(const IdealPolygon& poly, cplx z, double tol);

// Samples of each side as arcs, for drawing.
std::vector<std::vector<cplx>> polygon_edges(const IdealPolygon& poly, int samples_per_side);

}  // namespace hecke
