#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace hecke {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// A point of the Riemann sphere. Infinity is a tag, never a large float.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : z_(z) {}  // NOLINT: implicit on purpose
  SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT

  static SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  cplx value() const {
    if (inf_) throw std::domain_error("value() of the point at infinity");
    return z_;
  }

 private:
  cplx z_{};
  bool inf_ = false;
};

// Chordal distance on the sphere, bounded by 2.
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

// z -> (az+b)/(cz+d), stored with ad - bc = 1.
class MoebiusMap {
 public:
  MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  static MoebiusMap identity() { return {}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  // Finite evaluation; the caller guarantees z is not the pole.
  cplx operator()(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

 private:
  cplx a_, b_, c_, d_;
};

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& z);
MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2);
MoebiusMap moebius_inverse(const MoebiusMap& m);
MoebiusMap moebius_power(const MoebiusMap& m, int k);

// Max entry difference between the PSL(2,C) classes of m1 and m2.
double moebius_distance(const MoebiusMap& m1, const MoebiusMap& m2);

enum class MoebiusKind { Identity, Elliptic, Parabolic, Hyperbolic, Loxodromic };

struct MoebiusClass {
  MoebiusKind kind = MoebiusKind::Identity;
  std::vector<SpherePoint> fixed_points;
  double trace_sq_minus_4 = 0.0;  // |tr^2 - 4|
  bool borderline = false;        // parabolic only within tolerance
};

inline constexpr double kParabolicTol = 1e-9;

MoebiusClass classify_moebius(const MoebiusMap& m);

struct Geodesic {
  cplx p, q;
};

// Point of the arc from p (t = 0) to q (t = 1), orthogonal to the unit circle.
cplx geodesic_point(const Geodesic& g, double t);

// Signed Euclidean distance to the geodesic's circle (or line), positive on the
// side of the counter-clockwise boundary arc from p to q.
double geodesic_side(const Geodesic& g, cplx z);

struct OrthogonalCircle {
  bool is_line = false;
  cplx center;    // unit direction when is_line
  double radius;  // unused when is_line
};

OrthogonalCircle orthogonal_circle(const Geodesic& g);

// Counter-clockwise angle from p to q in (0, 2pi).
double ccw_angle(cplx p, cplx q);

// Angle of z reduced to [0, 2pi).
double angle_0_2pi(cplx z);

}  // namespace hecke
