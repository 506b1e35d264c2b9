#include <random>

#include "doctest.h"
#include "hm/quadrature.hpp"
#include "hm/rational_map.hpp"

using namespace hm;

namespace {

std::mt19937_64 rng(20240811);

Cx rand_cx(double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng)};
}

ComplexPoly rand_poly_with_roots(int deg, double scale = 1.5) {
  std::vector<Cx> roots;
  for (int k = 0; k < deg; ++k) roots.push_back(rand_cx(scale));
  return ComplexPoly::from_roots(roots, rand_cx(1.0) + Cx(1.5, 0));
}

} // namespace

TEST_CASE("poly_eval_jet basics") {
  // psi_r vanishes at its constructed root
  RationalMap m = two_bubble_map(3.0);
  Cx root(3.0, 3.0);
  CHECK(std::abs(m.p.eval(root)) < 1e-12);

  ComplexPoly one = ComplexPoly::constant(1.0);
  CJet j = one.eval_jet(Cx(0.3, -0.7));
  CHECK(j.v == Cx(1.0));
  CHECK(j.dx == Cx(0.0));
  CHECK(j.dy == Cx(0.0));

  // z^2 at 1+i: value 2i, d/dx = 2+2i, d/dy = -2+2i (hand differentiation)
  ComplexPoly z2({0.0, 0.0, 1.0});
  CJet k = z2.eval_jet(Cx(1, 1));
  CHECK(std::abs(k.v - Cx(0, 2)) < 1e-14);
  CHECK(std::abs(k.dx - Cx(2, 2)) < 1e-14);
  CHECK(std::abs(k.dy - Cx(-2, 2)) < 1e-14);
}

TEST_CASE("poly jets agree with finite differences") {
  ComplexPoly p = rand_poly_with_roots(3);
  for (int t = 0; t < 50; ++t) {
    Cx z = rand_cx(2.0);
    double h = 1e-6 * (1.0 + std::abs(z));
    for (Orientation o : {Orientation::Holomorphic, Orientation::AntiHolomorphic}) {
      CJet j = p.eval_jet(z, o);
      auto ev = [&](Cx w) { return p.eval(o == Orientation::Holomorphic ? w : std::conj(w)); };
      Cx fdx = (ev(z + h) - ev(z - h)) / (2 * h);
      Cx fdy = (ev(z + Cx(0, h)) - ev(z - Cx(0, h))) / (2 * h);
      CHECK(std::abs(j.dx - fdx) < 2e-6 * (1.0 + std::abs(j.dx)));
      CHECK(std::abs(j.dy - fdy) < 2e-6 * (1.0 + std::abs(j.dy)));
    }
  }
}

TEST_CASE("normalize_monic") {
  RationalMap m{ComplexPoly({0.0, 0.0, 2.0}), ComplexPoly::constant(2.0)};
  RationalMap n = normalize_monic(m);
  CHECK(std::abs(n.p.coeffs.back() - Cx(1.0)) < 1e-15);
  CHECK(std::abs(n.q.coeffs[0] - Cx(1.0)) < 1e-15);

  RationalMap psi = two_bubble_map(4.0);
  RationalMap psin = normalize_monic(psi);
  CHECK(coeff_distance(psi.p, psin.p) == 0.0);

  // random leading coefficient: p/q unchanged pointwise, idempotent
  RationalMap w{ComplexPoly({rand_cx(), rand_cx(), Cx(3, 4)}), ComplexPoly({Cx(1), rand_cx()})};
  RationalMap wn = normalize_monic(w);
  RationalMap wnn = normalize_monic(wn);
  CHECK(coeff_distance(wn.p, wnn.p) < 1e-15);
  for (int t = 0; t < 20; ++t) {
    Cx z = rand_cx(2.0);
    CHECK(std::abs(w.eval(z) - wn.eval(z)) < 1e-12 * (1 + std::abs(w.eval(z))));
  }

  RationalMap zero{ComplexPoly{}, ComplexPoly::constant(1.0)};
  CHECK_THROWS_AS(normalize_monic(zero), ZeroNumerator);
}

TEST_CASE("gcd_degree") {
  ComplexPoly a({-1.0, 0.0, 1.0}); // z^2 - 1
  ComplexPoly b({-1.0, 1.0});      // z - 1
  CHECK(gcd_degree(a, b, 1e-10) == 1);

  RationalMap psi = two_bubble_map(2.0);
  CHECK(gcd_degree(psi.p, psi.q, 1e-10) == 0);

  ComplexPoly c({1.0, 0.0, 1.0});
  ComplexPoly d({1.0 + 1e-14, 0.0, 1.0});
  CHECK(gcd_degree(c, d, 1e-10) == 2);
}

TEST_CASE("gcd_degree property: common factor") {
  int done = 0;
  for (int t = 0; t < 30 && done < 15; ++t) {
    int dp = 1 + int(rng() % 3), dq = 1 + int(rng() % 3), dg = 1 + int(rng() % 2);
    ComplexPoly p = rand_poly_with_roots(dp);
    ComplexPoly q = rand_poly_with_roots(dq);
    if (gcd_degree(p, q, 1e-8) != 0) continue;
    ComplexPoly g = rand_poly_with_roots(dg);
    CHECK(gcd_degree(p * g, q * g, 1e-8) == dg);
    ++done;
  }
  CHECK(done >= 15);
}

TEST_CASE("moebius group laws") {
  Moebius F{rand_cx(), rand_cx(), rand_cx(), rand_cx() + Cx(2, 0)};
  Moebius G{rand_cx(), rand_cx(), rand_cx(), rand_cx() + Cx(2, 0)};
  for (int t = 0; t < 25; ++t) {
    Cx z = rand_cx(2.0);
    CHECK(std::abs(F.compose(G).apply(z) - F.apply(G.apply(z))) < 1e-12);
    CHECK(std::abs(F.compose(F.inverse()).apply(z) - z) < 1e-12);
  }
}

TEST_CASE("compose_moebius") {
  RationalMap id{ComplexPoly({0.0, 1.0}), ComplexPoly::constant(1.0)};
  Moebius I{};
  RationalMap r1 = compose_moebius(id, I);
  CHECK(std::abs(r1.eval(Cx(0.3, 0.4)) - Cx(0.3, 0.4)) < 1e-14);

  Moebius inv{0.0, 1.0, 1.0, 0.0}; // z -> 1/z
  RationalMap r2 = compose_moebius(id, inv);
  CHECK(r2.p.degree() == 0);
  CHECK(r2.q.degree() == 1);
  CHECK(std::abs(r2.eval(Cx(2.0, 0.0)) - Cx(0.5, 0.0)) < 1e-14);

  // psi_r shifted by one: pointwise equality at random points
  RationalMap psi = two_bubble_map(3.0);
  Moebius shift{1.0, 1.0, 0.0, 1.0};
  RationalMap r3 = compose_moebius(psi, shift);
  for (int t = 0; t < 20; ++t) {
    Cx z = rand_cx(3.0);
    CHECK(std::abs(r3.eval(z) - psi.eval(shift.apply(z))) <
          1e-12 * (1 + std::abs(psi.eval(shift.apply(z)))));
  }

  Moebius bad{1.0, 2.0, 2.0, 4.0};
  CHECK_THROWS_AS(compose_moebius(psi, bad), DegenerateMoebius);
}

TEST_CASE("compose_moebius invariance property (100 random points)") {
  RationalMap m{rand_poly_with_roots(2), rand_poly_with_roots(1)};
  for (Orientation o : {Orientation::Holomorphic, Orientation::AntiHolomorphic}) {
    m.orientation = o;
    Moebius F{rand_cx() + Cx(1.5, 0), rand_cx(), rand_cx(0.4), rand_cx() + Cx(1.5, 0)};
    RationalMap c = compose_moebius(m, F);
    for (int t = 0; t < 100; ++t) {
      Cx z = rand_cx(2.5);
      Cx lhs = c.eval(z), rhs = m.eval(F.apply(z));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("poly_roots recovers constructed roots") {
  std::vector<Cx> roots = {Cx(1, 2), Cx(-0.5, 0.3), Cx(0.1, -1.7)};
  ComplexPoly p = ComplexPoly::from_roots(roots, Cx(2, 1));
  std::vector<Cx> found = poly_roots(p);
  REQUIRE(found.size() == roots.size());
  for (Cx r : roots) {
    double best = 1e300;
    for (Cx f : found) best = std::min(best, std::abs(f - r));
    CHECK(best < 1e-10);
  }
}
