#pragma once

#include <stdexcept>
#include <vector>

#include "hecke/complex_geom.hpp"

namespace hecke {

struct Polynomial {
  std::vector<cplx> c;  // ascending degree

  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  // Horner running-error bound: sum |c_k| |z|^k.
  double magnitude(double r) const;
};

inline constexpr int kMaxPolyDegree = 9;

struct ImagePoint {
  SpherePoint z;
  int multiplicity;
};
using ImageSet = std::vector<ImagePoint>;

// Every point repeated by its multiplicity.
std::vector<SpherePoint> flatten(const ImageSet& s);
int total_multiplicity(const ImageSet& s);

struct RootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AberthOptions {
  int max_iter = 200;
  double cluster_radius = 1e-7;
};

// Raw Aberth-Ehrlich iteration. `roots` holds deg starting values on entry
// (empty means the default circle start) and the roots on exit.
void aberth(const std::vector<cplx>& coeffs, std::vector<cplx>& roots, int max_iter = 200);

// Groups roots into clusters with multiplicities.
ImageSet cluster_roots(const std::vector<cplx>& coeffs, const std::vector<cplx>& roots,
                       double radius);

ImageSet poly_roots(const Polynomial& p, double tol = 1e-8, const AberthOptions& opt = {});

// Same, seeded from `warm` (the previous call's roots) and updating it. A failed
// warm start falls back to the cold start.
ImageSet poly_roots_warm(const Polynomial& p, std::vector<cplx>& warm, double tol = 1e-8);

// Coefficients of (f(w) - f(z)) / (w - z) by synthetic division.
std::vector<cplx> deflate_at(const Polynomial& f, cplx z);

ImageSet cov0_images(const Polynomial& f, const SpherePoint& z);

struct Involution {
  MoebiusMap m;

  static Involution J() { return {MoebiusMap(0.0, 1.0, 1.0, 0.0)}; }
  SpherePoint operator()(const SpherePoint& z) const { return moebius_apply(m, z); }
};

enum class Orientation { JafterCov, CovAfterJ };

struct Correspondence {
  Polynomial P;
  Involution J = Involution::J();
  Orientation orientation = Orientation::CovAfterJ;
};

ImageSet corr_images(const Correspondence& C, const SpherePoint& z);
ImageSet corr_preimages(const Correspondence& C, const SpherePoint& w);

struct OrbitTree {
  std::vector<SpherePoint> nodes;
  std::vector<int> parent;  // -1 for the root
  std::vector<int> depth;
  std::vector<std::pair<int, int>> edges;  // includes edges into merged duplicates
  bool truncated = false;
};

OrbitTree orbit_tree(const Correspondence& C, const SpherePoint& z0, int depth, int cap);

// Hausdorff distance between two point sets; Euclidean on finite points,
// infinity only matches infinity.
double hausdorff(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b);

}  // namespace hecke
