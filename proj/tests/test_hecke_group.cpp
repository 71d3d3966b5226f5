#include <doctest.h>

#include <cmath>
#include <random>

#include "hecke/hecke_group.hpp"

using namespace hecke;

TEST_CASE("defining relations of the Hecke group") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const HeckeGroup g = build_hecke(d);
    CHECK(moebius_distance(moebius_power(g.sigma, 2), MoebiusMap::identity()) < 1e-10);
    CHECK(moebius_distance(moebius_power(g.rho, d + 1), MoebiusMap::identity()) < 1e-10);
    for (int j = 1; j <= d; ++j) {
      const MoebiusMap lhs = moebius_compose(moebius_compose(g.sigma, g.alpha_j(j)), moebius_inverse(g.sigma));
      CHECK(moebius_distance(lhs, moebius_inverse(g.alpha_j(d + 1 - j))) < 1e-10);
    }
    const auto c1 = classify_moebius(g.alpha_j(1));
    const auto cd = classify_moebius(g.alpha_j(d));
    REQUIRE(c1.kind == MoebiusKind::Parabolic);
    REQUIRE(cd.kind == MoebiusKind::Parabolic);
    CHECK(std::abs(c1.fixed_points.at(0).value() - 1.0) < 1e-10);
    CHECK(std::abs(cd.fixed_points.at(0).value() - g.omega) < 1e-10);
  }
}

TEST_CASE("sigma is the half-turn about the point of C_1 nearest the origin") {
  for (int d = 2; d <= 8; ++d) {
    const HeckeGroup g = build_hecke(d);
    const OrthogonalCircle c = orthogonal_circle(g.side(1));
    const cplx nearest = c.center * (1.0 - c.radius / std::abs(c.center));
    CHECK(std::abs(g.sigma_fixed_point() - nearest) < 1e-12);
    // sigma swaps the endpoints of C_1
    CHECK(std::abs(g.sigma(1.0) - g.omega) < 1e-12);
    CHECK(std::abs(g.sigma(g.omega) - 1.0) < 1e-12);
  }
}

TEST_CASE("degree range") {
  CHECK_THROWS_AS(build_hecke(1), std::out_of_range);
  CHECK_THROWS_AS(build_hecke(9), std::out_of_range);
}

TEST_CASE("word reduction and evaluation") {
  const HeckeGroup g = build_hecke(3);
  const GroupWord w{{Letter::Sigma, Letter::Sigma, Letter::Rho, Letter::Rho, Letter::RhoInv}};
  const GroupWord r = reduce_word(w, 3);
  REQUIRE(r.letters.size() == 1);
  CHECK(r.letters[0] == Letter::Rho);
  const GroupWord four{{Letter::Rho, Letter::Rho, Letter::Rho, Letter::Rho}};
  CHECK(reduce_word(four, 3).letters.empty());
  const GroupWord a1{{Letter::Sigma, Letter::Rho}};
  CHECK(moebius_distance(word_matrix(g, a1), g.alpha_j(1)) < 1e-12);
  const cplx z(0.1, 0.2);
  CHECK(std::abs(evaluate_word(g, a1, z) - g.sigma(g.rho(z))) < 1e-12);
}

TEST_CASE("regions of the fundamental domain") {
  const HeckeGroup g = build_hecke(2);
  CHECK(fundamental_domain_contains(g, 0.0));
  CHECK(region_index(g, 0.0) == 0);
  for (int j = 1; j <= 3; ++j) {
    // just inside the circle at the middle of the arc cut off by C_j
    const cplx z = std::polar(0.99, kTwoPi * (j - 0.5) / 3);
    CHECK(region_index(g, z) == j);
  }
}

TEST_CASE("tessellation structure") {
  for (int d : {2, 3}) {
    CAPTURE(d);
    const HeckeGroup g = build_hecke(d);
    CHECK(tessellation(g, 0).size() == 1);
    CHECK(tessellation(g, 1).size() == static_cast<size_t>(1 + (d + 1)));
    const auto polys = tessellation(g, 3);
    for (const auto& p : polys) {
      REQUIRE(p.vertices.size() == static_cast<size_t>(d + 1));
      for (cplx v : p.vertices) CHECK(std::abs(std::abs(v) - 1.0) < 1e-10);
    }
    std::mt19937_64 rng(11 + d);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int overlaps = 0;
    for (size_t i = 0; i < polys.size(); ++i) {
      int found = 0;
      for (int tries = 0; found < 100 && tries < 200000; ++tries) {
        cplx z = 0.0;
        double s = 0.0;
        for (cplx v : polys[i].vertices) {
          const double w = std::pow(U(rng), 3);
          z += w * v;
          s += w;
        }
        z /= s;
        if (!polygon_interior_contains(polys[i], z, 1e-9)) continue;
        ++found;
        for (size_t j = 0; j < polys.size(); ++j)
          if (j != i && polygon_interior_contains(polys[j], z, 1e-9)) ++overlaps;
      }
      CHECK(found >= 20);  // thin polygons rarely catch a convex combination
    }
    CHECK(overlaps == 0);
  }
}
