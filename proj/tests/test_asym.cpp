#include "doctest.h"
#include "hm/asymptotics.hpp"
#include "hm/kernel_basis.hpp"
#include "test_helpers.hpp"

using namespace hm;

namespace {

double quad_plain(const HomogPoly3& p, int l, double r, bool weighted, double abs_tol = 1e-12) {
  QuadScheme s = default_scheme(r);
  RationalMap psi = two_bubble_map(r);
  IntegralResult res = integrate(
      s,
      [&](Cx z) {
        double W = std::norm(psi.eval(z));
        if (W > 1e70) return 0.0;
        double den = std::pow(1.0 + W, l);
        double v = p.eval(z.real(), z.imag(), r) / den;
        return weighted ? v * W : v;
      },
      0, abs_tol);
  return res.value;
}

} // namespace

TEST_CASE("homog poly arithmetic is exact") {
  HomogPoly3 x = HomogPoly3::X(), y = HomogPoly3::Y(), r = HomogPoly3::R();
  HomogPoly3 p = (x * x + y * y) * (x * y + r * r * (-1.0)) * 256.0;
  CHECK(p.degree() == 4);
  CHECK(p.eval(1, 1, 1) == 0.0);
  CHECK(p.eval(-1, -1, 1) == 0.0);
  CHECK(p.eval(2, 1, 1) == 256.0 * 5 * 1);
  HomogPoly3 lap = p.laplacian();
  // computed by hand: lap(256 (x^2+y^2)(xy - r^2)) = 256 (12xy - 4r^2)
  CHECK(lap.eval(1, 1, 1) == 256.0 * 8);
  CHECK(lap.eval(2, -1, 3) == 256.0 * (12 * -2 - 4 * 9));
  CHECK(p.dx().eval(1, 1, 1) == 512.0);
}

TEST_CASE("expand_plain leading term and quadrature cross-check") {
  HomogPoly3 p = (HomogPoly3::X() * HomogPoly3::X() + HomogPoly3::Y() * HomogPoly3::Y()) * 128.0;
  double r = 10.0;
  AsymptoticPrediction a = expand_plain(p, 3, r);
  CHECK(a.leading == doctest::Approx(32.0 * M_PI).epsilon(1e-14));
  double q = quad_plain(p, 3, r, false);
  CHECK(q == doctest::Approx(a.total()).epsilon(1e-4));

  // degenerate corner values: leading vanishes
  HomogPoly3 x = HomogPoly3::X(), y = HomogPoly3::Y(), rr = HomogPoly3::R();
  HomogPoly3 p0 = (x * x + y * y) * (x * y + rr * rr * (-1.0)) * 256.0;
  AsymptoticPrediction a0 = expand_plain(p0, 4, r);
  CHECK(a0.leading == 0.0);

  CHECK_THROWS_AS(expand_plain(p, 2, r), HypothesisViolated);
}

TEST_CASE("expand_weighted leading and corrections") {
  HomogPoly3 x = HomogPoly3::X(), y = HomogPoly3::Y();
  HomogPoly3 x2y2 = x * x + y * y;
  double r = 10.0;
  AsymptoticPrediction a = expand_weighted(x2y2 * 128.0, 4, r);
  CHECK(a.leading == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-14));
  // the r^{-4} corrections cancel exactly for this integrand
  CHECK(std::abs(a.correction) < 1e-16);

  HomogPoly3 zero;
  AsymptoticPrediction z = expand_weighted(zero, 4, r);
  CHECK(z.total() == 0.0);

  // J_99 monomials: 128 (x^2+y^2)^3 r^-4, leading 128 pi/3, correction 64 pi/3 r^-4
  AsymptoticPrediction a99 = expand_weighted(x2y2 * x2y2 * x2y2 * 128.0, 4, r);
  CHECK(a99.leading * std::pow(r, -4.0) == doctest::Approx(128.0 * M_PI / 3.0).epsilon(1e-13));
  CHECK(a99.correction * std::pow(r, -4.0) ==
        doctest::Approx(64.0 * M_PI / 3.0 * std::pow(r, -4.0)).epsilon(1e-12));
}

TEST_CASE("expand_centered_zero") {
  HomogPoly3 x = HomogPoly3::X(), y = HomogPoly3::Y(), r = HomogPoly3::R();
  HomogPoly3 p = (x * x + y * y) * (x * y + r * r * (-1.0)) * 256.0;
  double rv = 10.0;
  AsymptoticPrediction a = expand_centered_zero(p, 4, rv);
  // the numerator cancels for this integrand: prediction is exactly 0,
  // the true integral decays like r^{-9/2}
  CHECK(a.total() == 0.0);
  CHECK(a.remainder_exponent == doctest::Approx(-4.5));
  // the true integral vanishes bubble-by-bubble beyond all drawn orders;
  // quadrature confirms it sits at the noise floor, far inside the
  // O(r^{-9/2}) band
  double q10 = quad_plain(p, 4, 10.0, false);
  CHECK(std::abs(q10) <= 1e-12);

  // odd-parity polynomial integrates to zero
  HomogPoly3 podd = x * (x * x + y * y) * 64.0;
  CHECK(std::abs(quad_plain(podd, 4, 5.0, false)) < 1e-10);

  // J_19-type integrand: 128 (x^4-y^4) weighted; prediction 0 even at r^{k-6}
  HomogPoly3 p19 = (x * x * x * x + y * y * y * y * (-1.0)) * 128.0;
  AsymptoticPrediction a19 = expand_centered_zero(p19, 4, rv);
  CHECK(a19.total() == 0.0);

  CHECK_THROWS_AS(expand_centered_zero((x * x + y * y) * 128.0, 4, rv), HypothesisViolated);
}

TEST_CASE("predicted blocks") {
  double r = 20.0;
  PredictedBlocks b = predicted_blocks(r);
  // determinant constant recomputed independently
  double c = std::pow(2.0, 60.0) * std::pow(M_PI, 10.0) / std::pow(3.0, 10.0);
  CHECK(b.det_prediction * std::pow(r, 8.0) == doctest::Approx(c).epsilon(1e-12));
  CHECK(c == doctest::Approx(1.8285e18).epsilon(1e-3));

  // A3 -> ((8,0),(0,4)) * 16 pi/3 as r -> infinity
  PredictedBlocks binf = predicted_blocks(1e8);
  double u = 16.0 * M_PI / 3.0;
  CHECK(binf.A3(0, 0) == doctest::Approx(8.0 * u).epsilon(1e-9));
  CHECK(binf.A3(1, 1) == doctest::Approx(4.0 * u).epsilon(1e-9));
  CHECK(std::abs(binf.A3(0, 1)) < 1e-9);

  // det A1 = 32 r^-4 in normalized units
  Mat A1n(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A1n(i, j) = b.A1(i, j) / u;
  CHECK(det_lu(A1n) == doctest::Approx(32.0 * std::pow(r, -4.0)).epsilon(1e-10));

  // the full predicted matrix matches the measured gram at r = 10 coarsely
  GramMatrix g = cached_gram(10.0);
  PredictedBlocks p10 = predicted_blocks(10.0);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(std::abs(g.entries(i, j) - p10.full(i, j)) < 2e-3);
}

TEST_CASE("gram entry oracles agree with quadrature (calibrated bands)") {
  // fit the remainder constant at r = 5, check r = 10 within factor 4
  GramMatrix g5 = cached_gram(5.0);
  GramMatrix g10 = cached_gram(10.0);
  for (const GramEntryOracle& e : gram_entry_oracles()) {
    double d5 = std::abs(g5.entries(e.i - 1, e.j - 1) - e.prediction(5.0));
    double d10 = std::abs(g10.entries(e.i - 1, e.j - 1) - e.prediction(10.0));
    double C = std::max(d5 * std::pow(5.0, -e.band_exponent()), 1e-7);
    CHECK(d10 <= 4.0 * C * std::pow(10.0, e.band_exponent()));
  }
  // J_11 is exactly 32 pi/3 for every r (|K_1|^2 = 1 - s3^2 pulls back to a
  // constant sphere integral); both measurements sit at the noise floor
  double d5 = std::abs(g5.entries(0, 0) - 32.0 * M_PI / 3.0);
  double d10 = std::abs(g10.entries(0, 0) - 32.0 * M_PI / 3.0);
  CHECK(d5 < 1e-10);
  CHECK(d10 < 1e-10);
  // genuine O(r^-6) remainder contraction, measured on J_77
  auto d77 = [&](const GramMatrix& g, double r) {
    return std::abs(g.entries(6, 6) - (64.0 * M_PI / 3.0 + 8.0 * M_PI / 3.0 * std::pow(r, -4)));
  };
  CHECK(d77(g10, 10.0) * 16.0 <= d77(g5, 5.0));

  // zero-pair list is consistent with the catalog: 37 + 16 (8 distinct
  // off-diagonal nonzeros, with diagonal 10) = full upper triangle
  CHECK(gram_zero_pairs().size() == 37);
}
