#include <doctest.h>

#include <cmath>
#include <random>

#include "hecke/parabolic.hpp"

using namespace hecke;

namespace {

// Independent high-precision values for the normal form at 1.
struct NormalOracle {
  int d;
  double A, kappa;
};
constexpr NormalOracle kNormal[] = {{2, 2.0, 0.25}, {3, 0.75, 0.1875}, {4, 0.4, 0.17}};

}  // namespace

TEST_CASE("Blaschke product basics") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const BlaschkeMap B = make_blaschke(d);
    CHECK(std::abs(B(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(B.derivative(1.0) - 1.0) < 1e-13);
    std::mt19937_64 rng(d);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    for (int k = 0; k < 200; ++k) {
      const double t = U(rng) * kPi;
      CHECK(std::abs(std::abs(B(std::polar(1.0, t))) - 1.0) < 1e-13);
      const cplx z(U(rng), U(rng));
      CHECK(std::abs(B(std::conj(z)) - std::conj(B(z))) < 1e-14);
      if (std::abs(z) > 1e-3) CHECK(std::abs(B(1.0 / std::conj(z)) - 1.0 / std::conj(B(z))) < 1e-10);
      const auto pre = B.preimages(z);
      REQUIRE(pre.size() == static_cast<size_t>(d));
      for (cplx w : pre) CHECK(std::abs(B(w) - z) < 1e-10);
    }
  }
}

TEST_CASE("normal form constants") {
  for (const auto& o : kNormal) {
    CAPTURE(o.d);
    const NormalForm nf = normal_form(make_blaschke(o.d));
    CHECK(nf.A == doctest::Approx(o.A).epsilon(1e-10));
    CHECK(nf.kappa == doctest::Approx(o.kappa).epsilon(1e-10));
    // B in the u coordinate is u + 1 + kappa/u + O(1/u^2)
    const BlaschkeMap B = make_blaschke(o.d);
    for (double u : {200.0, 400.0, 800.0}) {
      const cplx z = nf.z_attracting(u);
      const cplx v = nf.u_of(B(z));
      CHECK(std::abs(v - u - 1.0 - o.kappa / u) * u * u < 10.0);
    }
  }
}

TEST_CASE("attracting petal and Abel equation") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const BlaschkeMap B = make_blaschke(d);
    const Petal P = build_petal(B);
    REQUIRE(P.boundary.size() > 100);
    CHECK(std::abs(P.boundary.front() - 1.0) < 1e-12);
    CHECK(std::abs(P.boundary.back() - 1.0) < 1e-12);
    std::mt19937_64 rng(100 + d);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int inside = 0, mapped_in = 0;
    double abel = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double x = P.fatou_threshold * 1.001 + 20 * U(rng);
      const double y = (2 * U(rng) - 1) * std::tan(P.theta0 / 2) * x;
      const cplx z = P.nf.z_attracting(cplx(x, y));
      if (!P.contains(z)) continue;
      ++inside;
      mapped_in += P.contains(B(z));
      if (k % 10 == 0)
        abel = std::max(abel, std::abs(fatou_attracting(B, P, B(z), 1000) - fatou_attracting(B, P, z, 1000) - 1.0));
    }
    CHECK(inside > 900);
    CHECK(mapped_in == inside);
    CHECK(abel < 1e-6);
  }
}

TEST_CASE("escape to the petal") {
  const BlaschkeMap B = make_blaschke(2);
  const Petal P = build_petal(B);
  CHECK(std::abs(B(0.0) - 1.0 / 3) < 1e-15);
  CHECK(P.contains(B.c));
  CHECK_FALSE(P.contains(0.0));
  CHECK(escape_to_petal(B, P, 0.0, 10).step == 1);
  CHECK(escape_to_petal(B, P, B.c, 10).step == 0);
  // points close to the circle take longer to arrive
  cplx z = 0.0;
  EscapeResult r{false, 0};
  for (double t = 0.5; t < 3.0 && r.step < 3; t += 0.1) {
    z = std::polar(0.99, t);
    r = escape_to_petal(B, P, z, 10000);
    REQUIRE(r.entered);
  }
  REQUIRE(r.step >= 3);
  CHECK_THROWS_AS(fatou_attracting(B, P, z, r.step - 1), PetalError);
  CHECK_NOTHROW(fatou_attracting(B, P, z, r.step));
}

TEST_CASE("dividing arcs are forward invariant") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const BlaschkeMap B = make_blaschke(d);
    const DividingArcs ar = dividing_arcs(B, 0.5);
    REQUIRE(ar.gamma_plus.size() == ar.gamma_minus.size());
    CHECK(ar.gamma_plus.front() == cplx(1.0));
    const size_t m = ar.per_unit;
    double inv = 0.0, sym = 0.0;
    for (size_t i = ar.uniform_start; i + m < ar.x.size(); ++i)
      inv = std::max(inv, std::abs(B(ar.gamma_plus[i + 1]) - ar.gamma_plus[i + 1 + m]));
    for (size_t i = 1; i < ar.gamma_plus.size(); ++i) {
      CHECK(std::abs(ar.gamma_plus[i]) < 1.0);
      sym = std::max(sym, std::abs(ar.gamma_minus[i] - std::conj(ar.gamma_plus[i])));
    }
    CHECK(inv < 1e-8);
    CHECK(sym < 1e-10);
  }
  CHECK_THROWS_AS(dividing_arcs(make_blaschke(2), -1.0), std::invalid_argument);
}

TEST_CASE("preimages of the petal are nested") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const BlaschkeMap B = make_blaschke(d);
    const Petal P = build_petal(B);
    const auto levels = petal_preimages(B, P, 2);
    REQUIRE(levels.size() == 2);
    const std::vector<cplx>* prev = &P.boundary;
    for (const auto& lv : levels) {
      REQUIRE(!lv.curves.empty());
      CHECK(lv.failed_segments.empty());
      int bad = 0;
      for (cplx z : *prev)
        if (std::abs(z) < 1 - 1e-3 && !polygon_contains(lv.curves[0], z)) ++bad;
      CHECK(bad == 0);
      // the level maps onto the previous one
      double off = 0.0;
      for (size_t i = 0; i < lv.curves[0].size(); i += 37)
        off = std::max(off, polyline_distance(*prev, B(lv.curves[0][i])));
      CHECK(off < 1e-3);
      prev = &lv.curves[0];
    }
  }
}

TEST_CASE("polygon helpers") {
  const std::vector<cplx> sq{0.0, 1.0, cplx(1, 1), cplx(0, 1), 0.0};
  CHECK(polygon_contains(sq, cplx(0.5, 0.5)));
  CHECK_FALSE(polygon_contains(sq, cplx(1.5, 0.5)));
  CHECK(polyline_distance(sq, cplx(0.5, -2)) == doctest::Approx(2.0));
}
