#include <doctest.h>

#include <cmath>

#include "hecke/quotients.hpp"

using namespace hecke;

namespace {

// High-precision oracle values of the quadratic germ coefficients at 1:
// H_d gives cos(pi/(d+1))/2, F_d gives cot(pi/(d+1))/(d+1).
double oracle_a_hecke(int d) { return std::cos(kPi / (d + 1)) / 2; }
double oracle_a_farey(int d) { return 1.0 / std::tan(kPi / (d + 1)) / (d + 1); }

}  // namespace

TEST_CASE("M normalisation") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const HeckeGroup g = build_hecke(d);
    const MoebiusMap M = build_M(d);
    CHECK(std::abs(M(1.0) - cplx(0, -1)) < 1e-12);
    CHECK(std::abs(M(g.omega) - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(M(g.sigma_fixed_point())) < 1e-12);
    CHECK(std::abs(std::abs(M(std::polar(1.0, 0.3))) - 1.0) < 1e-12);
    CHECK_FALSE(build_M_flipped(d));
  }
}

TEST_CASE("quotient maps and their inverse branches") {
  const int d = 3;
  const QuotientMap t1 = make_theta1(d), t2 = make_theta2(d);
  const cplx u(-0.2, 0.3);
  CHECK(std::abs(theta_apply(t1, theta_inverse_branch(t1, u)) - u) < 1e-14);
  CHECK(std::abs(theta_apply(t2, theta_inverse_branch(t2, u)) - u) < 1e-14);
  CHECK_THROWS_AS(theta_inverse_branch(t2, 0.5), SlitError);
  CHECK_THROWS_AS(theta_inverse_branch(t1, 0.5), SlitError);
  CHECK_NOTHROW(theta_inverse_branch(t2, 0.5, SlitPolicy::UpperLimit));
  // theta2 is invariant under sigma
  const HeckeGroup g = build_hecke(d);
  const cplx z(0.1, 0.4);
  CHECK(std::abs(theta_apply(t2, g.sigma(z)) - theta_apply(t2, z)) < 1e-13);
  CHECK(std::abs(theta_apply(t1, g.rho(z)) - theta_apply(t1, z)) < 1e-13);
}

TEST_CASE("external maps on the circle") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const PiecewiseMoebiusMap H(ExternalKind::Hecke, d), F(ExternalKind::Farey, d);
    CHECK(circle_winding([&](cplx z) { return H(z); }, 1000) == d);
    CHECK(circle_winding([&](cplx z) { return F(z); }, 1000) == d);
    CHECK(std::abs(H(1.0) - 1.0) < 1e-10);
    CHECK(std::abs(F(1.0) - 1.0) < 1e-10);
    const HeckeGroup& g = F.group();
    CHECK(std::abs(F(theta_apply(F.theta(), g.sigma(0.0)))) < 1e-8);
    // the parabolic point and d - 2 repelling ones
    const auto fix = circle_fixed_points(H, 10000);
    CHECK(fix.size() == static_cast<size_t>(d - 1));
    for (size_t k = 1; k < fix.size(); ++k) CHECK(fix[k].derivative > 1.0);
  }
}

TEST_CASE("Farey map is an involution on the boundary of its domain") {
  for (int d = 2; d <= 5; ++d) {
    const PiecewiseMoebiusMap F(ExternalKind::Farey, d);
    double worst = 0.0;
    for (int k = 1; k < 200; ++k) {
      const cplx u = theta_apply(F.theta(), geodesic_point(F.group().side(1), k / 200.0));
      worst = std::max(worst, std::abs(F(F(u)) - u));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("conjugacy between Farey and Hecke maps") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const PiecewiseMoebiusMap H(ExternalKind::Hecke, d), F(ExternalKind::Farey, d);
    const auto bp = H.break_points();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const cplx u = std::polar(1.0, kTwoPi * (k + 0.37) / 1000);
      const cplx pu = conjugacy_p(d, u);
      bool near = std::abs(std::arg(u)) < 1e-3;
      for (cplx b : bp) near = near || std::abs(std::arg(pu / b)) < 1e-3;
      if (near) continue;
      worst = std::max(worst, std::abs(conjugacy_p(d, F(u)) - H(pu)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("parabolic asymptotics at 1") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const auto h = parabolic_fit(PiecewiseMoebiusMap(ExternalKind::Hecke, d));
    const auto f = parabolic_fit(PiecewiseMoebiusMap(ExternalKind::Farey, d));
    for (const auto* p : {&h, &f}) {
      CHECK(p->a > 0);
      CHECK(p->b > 0);
      CHECK(std::abs(p->top.c1 - 1.0) < 1e-8);
      CHECK(std::abs(p->top.slope - 1.0) < 0.15);
      CHECK(std::abs(p->bottom.slope - 1.0) < 0.15);
    }
    CHECK(h.a == doctest::Approx(oracle_a_hecke(d)).epsilon(1e-6));
    CHECK(h.b == doctest::Approx(oracle_a_hecke(d)).epsilon(1e-6));
    CHECK(f.a == doctest::Approx(oracle_a_farey(d)).epsilon(1e-6));
    CHECK(f.b == doctest::Approx(oracle_a_farey(d)).epsilon(1e-6));
  }
}

TEST_CASE("Farey-like restriction of the Hecke map") {
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    const PiecewiseMoebiusMap H(ExternalKind::Hecke, d);
    const FareyLikeRestriction fl = farey_like_restriction_hecke(d, 0.1, 1000);
    CHECK(fl.preimage.size() == static_cast<size_t>(d));
    CHECK(count_interior_components(fl.preimage, 1e-9) == d);
    double worst = 0.0;
    for (const auto& arc : fl.preimage)
      for (size_t i = 1; i + 1 < arc.size(); ++i) worst = std::max(worst, std::abs(H(arc[i]) - fl.gamma.samples[i]));
    CHECK(worst < 1e-10);
  }
  CHECK_THROWS_AS(build_monogon(0.6, 100), DomainError);
}
