#pragma once

#include "hm/kernel_basis.hpp"

namespace hm {

struct ProjectionResult {
  ParamVec alpha_star;
  double dist_sq = 0.0;
  double grad_norm = 0.0; // ||int grad u : grad K_i|| at alpha_star
  int iterations = 0;
  bool converged = false;
};

struct ProjectOptions {
  int max_iterations = 50;
  int max_halvings = 20;
  double tol_factor = 1e-9; // stop when ||g|| <= tol_factor (1 + ||grad u||^2)
  int jobs = 0;
};

// H^1 squared distance from u to the family member at alpha, integral
// |grad u - grad S(Psi[alpha])|^2, through the pointwise jet difference.
double distance_sq(const SphereField& u, const ParamVec& alpha, const QuadScheme& s, int jobs = 0);

// Gauss-Newton on g_i(alpha) = int grad u : grad K_i[alpha] with model matrix
// J[alpha], steps taken in the scaled direction basis, halving on ascent.
ProjectionResult project(const SphereField& u, const ParamVec& alpha0, double r,
                         const QuadScheme& s, const ProjectOptions& opts = {});

struct StabilityProbeSample {
  double deficit;
  double dist_sq;
  double ratio;
};

// For n random compactly-concentrated tangent perturbations of S(Psi[alpha]),
// measure deficit, projected distance and their ratio; the empirical max
// ratio is a lower bound for the local stability constant.
std::vector<StabilityProbeSample> local_stability_probe(const ParamVec& alpha, double r,
                                                        int n_trials, double eps, uint64_t seed,
                                                        const QuadScheme& s,
                                                        const ProjectOptions& opts = {});

} // namespace hm
