#pragma once

#include <vector>

#include "hm/linalg.hpp"

namespace hm {

struct HypothesisViolated : std::runtime_error {
  explicit HypothesisViolated(const std::string& m) : std::runtime_error(m) {}
};

// Homogeneous polynomial in (x, y, r); all arithmetic stays on (small) integer
// coefficients so evaluations at (+-1, +-1, 1) and derivative operations are
// exact in doubles.
struct HomogPoly3 {
  struct Mono {
    int i, j, k; // x^i y^j r^k
    double coeff;
  };
  std::vector<Mono> monos;

  HomogPoly3() = default;
  HomogPoly3(std::vector<Mono> m);

  int degree() const; // uniform total degree, -1 for the zero polynomial
  double eval(double x, double y, double r) const;
  HomogPoly3 dx() const;
  HomogPoly3 dy() const;
  HomogPoly3 laplacian() const;
  HomogPoly3 operator+(const HomogPoly3& o) const;
  HomogPoly3 operator*(const HomogPoly3& o) const;
  HomogPoly3 operator*(double s) const;

  static HomogPoly3 X();
  static HomogPoly3 Y();
  static HomogPoly3 R();
  static HomogPoly3 constant(double c);
};

struct AsymptoticPrediction {
  double leading = 0.0;        // value of the r^{k-2} term at the given r
  double correction = 0.0;     // value of the r^{k-6} terms at the given r
  double remainder_exponent = 0.0; // exponent of r in the error term
  double total() const { return leading + correction; }
};

// integral p /(1+|psi_r|^2)^l  (l >= 3, l > k/4 + 1/2)
AsymptoticPrediction expand_plain(const HomogPoly3& p, int l, double r);
// integral p |psi_r|^2 /(1+|psi_r|^2)^l  (l >= 4, l > k/4 + 3/2)
AsymptoticPrediction expand_weighted(const HomogPoly3& p, int l, double r);
// plain integral when p(1,1,1) = p(-1,-1,1) = 0: only the r^{k-6} term
// survives and the remainder improves to r^{k-17/2}
AsymptoticPrediction expand_centered_zero(const HomogPoly3& p, int l, double r);

// Predicted block decomposition of the base-point gram matrix: blocks
// {1,10,6}, {2,9,5}, {3,8}, {4,7} in units of 16 pi/3, with the O(r^{-9/2})
// couplings set to zero.
struct PredictedBlocks {
  Mat A1{3}, A2{3}, A3{2}, A4{2};
  Mat full{10}; // assembled in the original index order
  double det_prediction = 0.0;
};
PredictedBlocks predicted_blocks(double r);

// Oracle for one gram entry: J_ij = r^{-mexp} * integral of p * (|psi|^2 if
// weighted) / (1+|psi|^2)^4.
struct GramEntryOracle {
  int i, j; // 1-based
  HomogPoly3 p;
  int mexp;
  bool weighted;
  bool centered; // p(+-1) = 0: prediction order r^{k-6}, remainder r^{k-17/2}
  double prediction(double r) const;
  double band_exponent() const; // r-exponent of the remainder, including r^-m
};

// The nonzero gram entries with closed-form predictions (16 including symmetry partners).
const std::vector<GramEntryOracle>& gram_entry_oracles();
// The 37 vanishing pairs (1-based, i < j).
const std::vector<std::pair<int, int>>& gram_zero_pairs();

} // namespace hm
