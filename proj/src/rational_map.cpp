#include "hm/rational_map.hpp"

namespace hm {

CJet RationalMap::eval_jet(Cx z) const {
  CJet P = p.eval_jet(z, orientation);
  CJet Q = q.eval_jet(z, orientation);
  return P / Q;
}

RationalMap normalize_monic(const RationalMap& m) {
  if (m.p.is_zero()) throw ZeroNumerator();
  Cx lead = m.p.coeffs.back();
  return {m.p * (1.0 / lead), m.q * (1.0 / lead), m.orientation};
}

namespace {

// p composed with the Moebius map and cleared of denominators:
// sum_k p_k (az+b)^k (cz+d)^(n-k).
ComplexPoly clear_compose(const ComplexPoly& p, const Moebius& F, int n) {
  ComplexPoly num({F.b, F.a});
  ComplexPoly den({F.d, F.c});
  // powers of num and den up to n
  std::vector<ComplexPoly> np(n + 1), dp(n + 1);
  np[0] = ComplexPoly::constant(1.0);
  dp[0] = ComplexPoly::constant(1.0);
  for (int k = 1; k <= n; ++k) {
    np[k] = np[k - 1] * num;
    dp[k] = dp[k - 1] * den;
  }
  ComplexPoly acc;
  for (int k = 0; k <= std::min<int>(p.degree(), n); ++k)
    acc = acc + np[k] * dp[n - k] * p.coeffs[k];
  return acc;
}

} // namespace

RationalMap compose_moebius(const RationalMap& m, const Moebius& F, double tol) {
  double scale = std::max({std::abs(F.a), std::abs(F.b), std::abs(F.c), std::abs(F.d)});
  if (std::abs(F.det()) <= tol * scale * scale) throw DegenerateMoebius();
  // Anti-holomorphic maps evaluate at conj(z): (p/q)(conj(F(z))) and
  // conj(F(z)) = F*(conj z) with conjugated coefficients.
  Moebius G = m.orientation == Orientation::Holomorphic ? F : F.conj_coeffs();
  int n = m.algebraic_degree();
  RationalMap out{clear_compose(m.p, G, n), clear_compose(m.q, G, n), m.orientation};
  return normalize_monic(out);
}

RationalMap two_bubble_map(double r) {
  return {ComplexPoly({Cx(0.0, -2.0 * r * r), Cx(0.0), Cx(1.0)}), ComplexPoly::constant(1.0),
          Orientation::Holomorphic};
}

} // namespace hm
