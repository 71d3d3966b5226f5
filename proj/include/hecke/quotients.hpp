#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "hecke/hecke_group.hpp"

namespace hecke {

// Raised when an inverse branch is asked for a point on the cut [0, 1].
struct SlitError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when a point lies outside the domain of an external map.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class QuotientKind { Theta1, Theta2 };

struct QuotientMap {
  QuotientKind kind;
  int d;
  MoebiusMap M;  // identity for Theta1
};

// Disc automorphism with M(fix sigma) = 0, M(1) = -i, M(omega) = i, M(Pi) in Re <= 0.
MoebiusMap build_M(int d);
// True if build_M had to post-compose with z -> -z to put Pi on the left.
bool build_M_flipped(int d);

QuotientMap make_theta1(int d);
QuotientMap make_theta2(int d);

cplx theta_apply(const QuotientMap& q, cplx z);

enum class SlitPolicy { Reject, UpperLimit };

inline constexpr double kSlitBand = 1e-12;

bool on_slit(cplx u);

// Preimage in the sector [0, 2pi/(d+1)] (theta1) or in M^-1(left half-disc) (theta2).
cplx theta_inverse_branch(const QuotientMap& q, cplx u, SlitPolicy policy = SlitPolicy::Reject);

enum class ExternalKind { Hecke, Farey };

struct MapPiece {
  int region;  // j of the region D_j in disc coordinates
  MoebiusMap branch;
};

class PiecewiseMoebiusMap {
 public:
  PiecewiseMoebiusMap(ExternalKind kind, int d);

  ExternalKind kind() const { return kind_; }
  int d() const { return group_.d; }
  const HeckeGroup& group() const { return group_; }
  const QuotientMap& theta() const { return theta_; }
  const std::vector<MapPiece>& pieces() const { return pieces_; }

  cplx operator()(cplx u) const;

  // The analytic germ theta o gamma o theta^-1 at 1, with the inverse branch
  // taken nearest to the given anchor in disc coordinates.
  cplx germ(const MoebiusMap& gamma, cplx anchor, cplx u) const;

  struct BranchGerm {
    MoebiusMap gamma;
    cplx anchor;
  };
  BranchGerm top_germ() const;
  BranchGerm bottom_germ() const;

  // Break points on the circle (images of the polygon vertices), sorted by angle.
  std::vector<cplx> break_points() const;

 private:
  cplx hecke(cplx u) const;
  cplx farey(cplx u) const;

  ExternalKind kind_;
  HeckeGroup group_;
  QuotientMap theta_;
  std::vector<MapPiece> pieces_;
};

cplx hecke_map(int d, cplx u);
cplx farey_map(int d, cplx u);
cplx conjugacy_p(int d, cplx u);

struct BranchFit {
  cplx c1, c2, c3;        // Taylor coefficients of g(1 + zeta) - 1
  double fit_radius = 0;  // radius the reported coefficients come from
  std::vector<double> radii;
  std::vector<double> remainder;  // max |g - 1 - c1 zeta - c2 zeta^2| per radius
  double slope = 0;               // d log(remainder / r^2) / d log r
  bool exact_quadratic = false;   // remainder at rounding level everywhere
};

struct ParabolicAsymptotics {
  double a = 0, b = 0;
  double fit_residual = 0;  // largest imaginary part discarded from a, b
  BranchFit top, bottom;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fits g(1 + zeta) on the half-disc Im zeta > 0 (top) or < 0 (bottom).
BranchFit fit_germ(const std::function<cplx(cplx)>& g, bool top);

// a from the top branch 1 + zeta - i a zeta^2, b from the bottom 1 + zeta + i b zeta^2.
ParabolicAsymptotics parabolic_fit(const PiecewiseMoebiusMap& map);
ParabolicAsymptotics parabolic_fit_germs(const std::function<cplx(cplx)>& top,
                                         const std::function<cplx(cplx)>& bottom);

// Winding number of the restriction to the unit circle, adaptive sampling.
int circle_winding(const std::function<cplx(cplx)>& f, int samples);

struct CircleFixedPoint {
  double t;           // angle / 2pi in [0, 1)
  double derivative;  // |f'| along the circle
};

// Fixed points of the circle restriction found as integer crossings of
// lift(x) - x on a grid of n points; 1 is always reported first.
std::vector<CircleFixedPoint> circle_fixed_points(const PiecewiseMoebiusMap& map, int n);

struct Monogon {
  std::vector<cplx> samples;  // starts and ends at 1
};

struct FareyLikeRestriction {
  Monogon gamma;
  std::vector<std::vector<cplx>> preimage;  // one arc per inverse branch
};

// Boundary of the eps-neighbourhood of [0, 1] cut by a right-angle wedge at 1.
Monogon build_monogon(double eps, int n);

FareyLikeRestriction farey_like_restriction_hecke(int d, double eps, int n);

// Inverse branch of H_d through the piece D_j, j = 2..d+1.
cplx hecke_inverse_branch(const PiecewiseMoebiusMap& h, int j, cplx u);

// Connected components of the union of polylines after removing points on the circle.
int count_interior_components(const std::vector<std::vector<cplx>>& curves, double circle_tol);

}  // namespace hecke
