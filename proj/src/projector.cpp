#include "hm/projector.hpp"

#include <cmath>
#include <random>

namespace hm {

double distance_sq(const SphereField& u, const ParamVec& alpha, const QuadScheme& s, int jobs) {
  auto Phi = lift(alpha.map());
  IntegralResult r = integrate(
      s,
      [&](Cx z) {
        VJet a = u.eval(z);
        VJet b = Phi->eval(z);
        Vec3 gx = a.dx - b.dx, gy = a.dy - b.dy;
        return dot(gx, gx) + dot(gy, gy);
      },
      jobs, 1e-13);
  return r.value;
}

namespace {

// cross gradients against all ten kernel fields in one pass
struct CrossIntegrand : MultiIntegrand {
  const SphereField& u;
  const KernelBasisEvaluator& basis;
  CrossIntegrand(const SphereField& u_, const KernelBasisEvaluator& b) : u(u_), basis(b) {}
  int size() const override { return 10; }
  void eval(Cx z, double* out) const override {
    VJet ju = u.eval(z);
    std::array<VJet, 10> K;
    basis.eval(z, K);
    for (int i = 0; i < 10; ++i) out[i] = dot(ju.dx, K[i].dx) + dot(ju.dy, K[i].dy);
  }
};

std::array<double, 10> gradient(const SphereField& u, const ParamVec& alpha, double r,
                                const QuadScheme& s, int jobs) {
  KernelBasisEvaluator basis(alpha, r);
  CrossIntegrand f(u, basis);
  std::vector<double> tols(10, 1e-11);
  std::vector<IntegralResult> res = integrate_multi(s, f, tols, jobs);
  std::array<double, 10> g;
  for (int i = 0; i < 10; ++i) g[i] = res[i].value;
  return g;
}

} // namespace

ProjectionResult project(const SphereField& u, const ParamVec& alpha0, double r,
                         const QuadScheme& s, const ProjectOptions& opts) {
  ProjectionResult out;
  ParamVec alpha = alpha0;
  double unorm2 = 2.0 * energy(u, s, opts.jobs).value;
  double tol = opts.tol_factor * (1.0 + unorm2);

  double dist = distance_sq(u, alpha, s, opts.jobs);
  for (int it = 0; it < opts.max_iterations; ++it) {
    std::array<double, 10> g = gradient(u, alpha, r, s, opts.jobs);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    out.iterations = it;
    out.grad_norm = gn;
    if (gn <= tol) {
      out.converged = true;
      break;
    }
    GramMatrix J = gram_matrix(alpha, r, s, opts.jobs);
    Mat L;
    if (!cholesky(J.entries, L)) throw SingularModel();
    std::vector<double> rhs(g.begin(), g.end());
    std::vector<double> step = cholesky_solve(L, rhs);

    // backtracking on the true objective
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      std::array<double, 10> d;
      for (int i = 0; i < 10; ++i) d[i] = lambda * step[i];
      ParamVec trial = apply_step(alpha, d, r);
      double tdist = distance_sq(u, trial, s, opts.jobs);
      if (tdist <= dist * (1.0 + 1e-12) || tdist <= dist + 1e-15) {
        alpha = trial;
        dist = tdist;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break; // stalled; report best iterate, flagged
  }
  out.alpha_star = alpha;
  out.dist_sq = dist;
  if (!out.converged) {
    // one final gradient readout for the report
    std::array<double, 10> g = gradient(u, alpha, r, s, opts.jobs);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    out.grad_norm = std::sqrt(gn);
    out.converged = out.grad_norm <= tol;
  }
  if (out.converged) {
    // second-order test: the model matrix must stay positive definite at the
    // reported minimizer
    GramMatrix J = gram_matrix(alpha, r, s, opts.jobs);
    Mat L;
    if (!cholesky(J.entries, L)) out.converged = false;
  }
  return out;
}

namespace {

// sum of isotropic bumps with jets
struct BumpField {
  struct Bump {
    Cx center;
    double inv2s2; // 1/(2 sigma^2)
    Vec3 amp;
  };
  std::vector<Bump> bumps;
  VJet eval(Cx z) const {
    VJet acc{};
    for (const Bump& b : bumps) {
      double dx = z.real() - b.center.real(), dy = z.imag() - b.center.imag();
      double e = std::exp(-(dx * dx + dy * dy) * b.inv2s2);
      RJet g{e, -2.0 * dx * b.inv2s2 * e, -2.0 * dy * b.inv2s2 * e};
      acc = acc + g * VJet{b.amp, {}, {}};
    }
    return acc;
  }
};

} // namespace

std::vector<StabilityProbeSample> local_stability_probe(const ParamVec& alpha, double r,
                                                        int n_trials, double eps, uint64_t seed,
                                                        const QuadScheme& s,
                                                        const ProjectOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto Phi = lift(alpha.map());
  std::vector<StabilityProbeSample> out;
  for (int t = 0; t < n_trials; ++t) {
    BumpField w;
    for (int k = 0; k < 5; ++k) {
      double rho = 2.0 * r * std::sqrt(unif(rng));
      double th = 2.0 * M_PI * unif(rng);
      double sigma = r / 10.0 + (r - r / 10.0) * unif(rng);
      Vec3 amp{2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0};
      w.bumps.push_back({Cx(rho * std::cos(th), rho * std::sin(th)),
                         1.0 / (2.0 * sigma * sigma), amp});
    }
    // project tangent and normalize the amplitude so eps sup|v| stays small
    double sup = 0.0;
    for (int probe = 0; probe < 500; ++probe) {
      double rho = 3.0 * r * std::sqrt(unif(rng));
      double th = 2.0 * M_PI * unif(rng);
      Cx z(rho * std::cos(th), rho * std::sin(th));
      VJet pv = Phi->eval(z);
      VJet raw = w.eval(z);
      VJet v = raw - dot(raw, pv) * pv;
      sup = std::max(sup, norm(v.v));
    }
    // factor-2 margin: the sampled sup can undershoot the true one
    double scale = sup > 0 ? 1.0 / (2.0 * sup) : 1.0;
    auto dir = std::make_shared<FuncVectorField>([w, Phi, scale](Cx z) {
      VJet pv = Phi->eval(z);
      VJet raw = w.eval(z);
      VJet v = raw - dot(raw, pv) * pv;
      return scale * v;
    });
    auto u = perturb_on_sphere(Phi, dir, eps);
    double deficit = energy_deficit(*u, s, +1, opts.jobs).value;
    ProjectionResult proj = project(*u, alpha, r, s, opts);
    out.push_back({deficit, proj.dist_sq, proj.dist_sq / deficit});
  }
  return out;
}

} // namespace hm
