#pragma once

#include <stdexcept>
#include <vector>

#include "hecke/complex_geom.hpp"

namespace hecke {

struct BlaschkeMap {
  int d;
  double c;  // (d - 1) / (d + 1)

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  // The d roots of B(w) = v.
  std::vector<cplx> preimages(cplx v) const;
};

BlaschkeMap make_blaschke(int d);
cplx blaschke_apply(const BlaschkeMap& B, cplx z);

// Local data at the double parabolic point 1. With eta = log z, log B(e^eta)
// is odd in eta; u = A / eta^2 turns B into u + 1 + kappa/u + lambda/u^2 + ...
struct NormalForm {
  double A = 0, kappa = 0, lambda = 0, e = 0;
  std::vector<double> g;  // coefficients of log B(e^eta)

  cplx u_of(cplx z) const;                 // A / (log z)^2
  cplx z_attracting(cplx u) const;         // exp(-sqrt(A/u)), inside the disc
  cplx phi(cplx u) const;                  // attracting Fatou coordinate in u
  cplx phi_rep(cplx u) const;              // repelling Fatou coordinate in u
  cplx phi_rep_inverse(cplx target) const; // Newton inverse of phi_rep
};

NormalForm normal_form(const BlaschkeMap& B);

struct Petal {
  std::vector<cplx> boundary;  // closed, starts and ends at 1, counter-clockwise
  double fatou_threshold = 0;  // R: the petal is Re u > R, |arg u| < theta0/2
  double theta0 = 0;
  NormalForm nf;

  bool contains(cplx z) const;
};

struct PetalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTheta0 = kPi / 2;

// R <= 0 selects 0.95 u(c); a larger request is lowered to that value.
Petal build_petal(const BlaschkeMap& B, double theta0 = kDefaultTheta0, double R = 0.0);

struct PreimageCurves {
  std::vector<std::vector<cplx>> curves;
  std::vector<size_t> failed_segments;  // continuation could not resolve the branch
};

// Pull a polyline back by B with root continuation. Closed curves are followed
// for as many laps as the monodromy needs; open curves give one arc per root.
PreimageCurves pullback_curve(const BlaschkeMap& B, const std::vector<cplx>& curve, bool closed,
                              double max_step = 2e-3);

// Levels k = 1..n of B^-k(boundary of P).
std::vector<PreimageCurves> petal_preimages(const BlaschkeMap& B, const Petal& P, int n);

cplx fatou_attracting(const BlaschkeMap& B, const Petal& P, cplx z, int N);
cplx fatou_attracting(const BlaschkeMap& B, cplx z, int N);

struct DividingArcs {
  std::vector<cplx> gamma_plus, gamma_minus;  // both start at 1
  std::vector<double> x;                      // Fatou real part of each sample after the first
  size_t uniform_start = 0;                   // first sample of the unit-spaced block
  int per_unit = 0;                           // samples per unit of Fatou real part there
  double h = 0, L = 0;
};

DividingArcs dividing_arcs(const BlaschkeMap& B, double h, double L = 30.0, int per_unit = 32);

struct EscapeResult {
  bool entered;
  int step;
};

EscapeResult escape_to_petal(const BlaschkeMap& B, const Petal& P, cplx z, int max_iter);

// Distance from z to the polyline.
double polyline_distance(const std::vector<cplx>& poly, cplx z);

// Winding-number containment for a closed polyline.
bool polygon_contains(const std::vector<cplx>& poly, cplx z);

}  // namespace hecke
