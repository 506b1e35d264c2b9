#pragma once

#include <array>

#include "hm/linalg.hpp"
#include "hm/quadrature.hpp"

namespace hm {

struct PoleHit : std::runtime_error {
  PoleHit() : std::runtime_error("denominator of the family map vanishes at this point") {}
};

// alpha in R^10 parametrizing the degree-2 family
//   Psi[alpha](z) = (a z^2 + b z + c) / (1 - d z - e z^2),
// a = a1+i a2, ..., e = a9+i a10.
struct ParamVec {
  std::array<double, 10> alpha{};

  Cx a() const { return {alpha[0], alpha[1]}; }
  Cx b() const { return {alpha[2], alpha[3]}; }
  Cx c() const { return {alpha[4], alpha[5]}; }
  Cx d() const { return {alpha[6], alpha[7]}; }
  Cx e() const { return {alpha[8], alpha[9]}; }

  static ParamVec from_complex(Cx a, Cx b, Cx c, Cx d, Cx e);
  // base point of the two-bubble family: Psi[alpha_r] = psi_r = z^2 - 2i r^2
  static ParamVec base_point(double r);

  ComplexPoly numerator() const;   // c + b z + a z^2
  ComplexPoly denominator() const; // 1 - d z - e z^2
  RationalMap map() const { return {numerator(), denominator(), Orientation::Holomorphic}; }
  // a != 0 and numerator/denominator coprime
  bool admissible(double tol = 1e-10) const;
};

// Psi[alpha](z) with x,y derivatives; throws PoleHit at denominator zeros.
CJet psi_eval(const ParamVec& alpha, Cx z);

// Scale exponents: K_i = r^{beta_i} * d/d(dir_i) S(Psi[alpha]).
inline constexpr int kBeta[10] = {0, 0, -1, -1, 0, 0, -1, -1, -2, -2};

// Evaluates the ten tangent fields K_1..K_10 of the family at a parameter
// point.  Directions 1,2 scale the whole numerator (delta N = N, iN); 3..10
// are the coordinate directions of b, c, d, e.  At the base point these
// reproduce the explicit two-bubble closed forms.  Evaluation switches to the
// inverted chart where |Psi| > 1, so it is finite across poles of Psi.
struct KernelBasisEvaluator {
  ParamVec alpha;
  double r;
  ComplexPoly N, D;
  std::array<double, 10> scale;

  KernelBasisEvaluator(const ParamVec& a, double r_);
  void eval(Cx z, std::array<VJet, 10>& out) const;
  VJet eval_one(Cx z, int i) const;
  // |grad S(Psi)|^2 in the cleared, pole-safe form
  double weight(Cx z) const;
};

// Single kernel field K_i as a VectorField (i in 1..10).
struct KernelField : VectorField {
  KernelBasisEvaluator basis;
  int index;
  KernelField(const ParamVec& a, int i, double r);
  VJet eval(Cx z) const override;
};

// Pairwise products I_ij = (1/4)(1+|psi_r|^2)^2 K_i.K_j at the base point,
// computed as Re(V_i conj(V_j)) with V = (w, iw, z/r, iz/r, 1, i, zw/r, izw/r,
// z^2 w/r^2, i z^2 w/r^2), w = psi_r(z).
Mat inner_product_table(double r, Cx z);

struct GramMatrix {
  Mat entries{10};
  Mat err_est{10};
  double r = 0.0;
  bool converged = true;
  double max_diag() const;
  std::vector<double> eigenvalues() const { return jacobi_eigenvalues(entries); }
};

// J_ij = integral |grad S(Psi)|^2 K_i.K_j; at the base point the weighted
// closed form is used.  Per-entry absolute tolerance 1e-9.
GramMatrix gram_matrix(const ParamVec& alpha, double r, const QuadScheme& s, int jobs = 0);
// Same matrix through integral grad K_i : grad K_j (independent route).
GramMatrix gram_via_gradients(const ParamVec& alpha, double r, const QuadScheme& s, int jobs = 0);

// Move alpha along the scaled basis directions by delta (Gauss-Newton step).
ParamVec apply_step(const ParamVec& alpha, const std::array<double, 10>& delta, double r);
// Coordinates of (alpha1 - alpha0) in the scaled direction basis at alpha0.
std::array<double, 10> scaled_coords(const ParamVec& alpha1, const ParamVec& alpha0, double r);

// Block permutation {1,10,6},{2,9,5},{3,8},{4,7} used by the block solver.
inline constexpr int kBlockPerm[10] = {0, 9, 5, 1, 8, 4, 2, 7, 3, 6};
inline constexpr int kBlockSizes[4] = {3, 3, 2, 2};

} // namespace hm
