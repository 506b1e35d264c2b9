#pragma once

#include "hm/asymptotics.hpp"
#include "hm/kernel_basis.hpp"

namespace hm {

// Two-sided logarithmic cutoff: +1 on the disk of radius sqrt(r) about (r,r),
// -1 on the mirror disk, log-interpolated on the annuli up to radius r, 0
// beyond.  Lipschitz; its gradient lives on the two annuli.
struct CutoffField {
  double r;
  explicit CutoffField(double r_) : r(r_) {
    if (r < 2.0) throw std::invalid_argument("cutoff field needs r >= 2");
  }
  RJet eval(Cx z) const;
};

// The near-null direction 2 K_2 - K_9 at the base point.
struct ScriptKField : VectorField {
  KernelBasisEvaluator basis;
  explicit ScriptKField(double r) : basis(ParamVec::base_point(r), r) {
    if (r < 2.0) throw std::invalid_argument("the near-null direction needs r >= 2");
  }
  VJet eval(Cx z) const override;
};

// v = f 𝒦 - sum_i c_i K_i, the perturbation used by the construction.
struct HKField : VectorField {
  CutoffField cutoff;
  KernelBasisEvaluator basis;
  std::array<double, 10> c;
  HKField(double r, const std::array<double, 10>& coeffs)
      : cutoff(r), basis(ParamVec::base_point(r), r), c(coeffs) {}
  VJet eval(Cx z) const override;
};

std::shared_ptr<VectorField> script_k(double r);

// p_j = integral grad(f K) : grad K_j, computed through the weighted form
// integral |grad Phi|^2 f (K . K_j) which needs no derivatives of f.
std::array<double, 10> p_vector(double r, const QuadScheme& s, int jobs = 0,
                                std::array<double, 10>* err = nullptr);

// Solve J c = p through the block permutation with one step of iterative
// refinement; throws IllConditioned if the relative residual stays above 1e-8.
std::array<double, 10> solve_c(const GramMatrix& J, const std::array<double, 10>& p,
                               double* residual = nullptr);

std::shared_ptr<SphereField> build_u(double r, double eps, const std::array<double, 10>& c);

struct CounterexampleReport {
  double r = 0, eps = 0;
  // measured at eps and eps/2
  double deficit = 0, deficit_half = 0;
  double dist_sq_formula = 0; // eps^2 ||hK||^2
  double dist_sq_projected = 0, dist_sq_projected_half = 0;
  // Richardson-extrapolated eps^2 coefficients
  double deficit_eps2_coeff = 0, dist2_eps2_coeff = 0;
  double ratio = 0;      // dist2_eps2_coeff / deficit_eps2_coeff
  double log_ratio = 0;  // ratio / ln r
  double conj_ratio = 0; // dist^2 / (deficit (1 + |log deficit|)) at eps
  // pieces of the construction
  double hk_norm_sq = 0;                                       // ||hK||^2_{H1}
  double grad_fk_sq = 0, gradf_k_sq = 0, weight_fk_sq = 0;     // split identity
  std::array<double, 10> p{}, c{};
  double solve_residual = 0;
  double orth_residual = 0, orth_residual_half = 0; // max_i |int grad u : grad K_i|
  double degree_u = 0;
  double quad_err_bound = 0;
  int proj_iterations = 0;
  bool proj_converged = true;
  bool converged = true;
};

struct ReportOptions {
  int jobs = 0;
  bool project = true; // also measure the distance through the projector
};

CounterexampleReport counterexample_report(double r, double eps, const ReportOptions& opts = {});

} // namespace hm
