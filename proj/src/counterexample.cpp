#include "hm/counterexample.hpp"

#include <cmath>

#include "hm/projector.hpp"

namespace hm {

namespace {

RJet theta_jet(Cx z, Cx center, double r) {
  double dx = z.real() - center.real(), dy = z.imag() - center.imag();
  double s2 = dx * dx + dy * dy;
  double s = std::sqrt(s2);
  if (s < std::sqrt(r)) return {1.0, 0.0, 0.0};
  if (s > r) return {0.0, 0.0, 0.0};
  double lr = std::log(r);
  double g = -2.0 / (lr * s2);
  return {2.0 - 2.0 * std::log(s) / lr, g * dx, g * dy};
}

} // namespace

RJet CutoffField::eval(Cx z) const {
  Cx c(r, r);
  return theta_jet(z, c, r) - theta_jet(z, -c, r);
}

VJet ScriptKField::eval(Cx z) const {
  std::array<VJet, 10> K;
  basis.eval(z, K);
  return 2.0 * K[1] - K[8];
}

VJet HKField::eval(Cx z) const {
  std::array<VJet, 10> K;
  basis.eval(z, K);
  VJet v = cutoff.eval(z) * (2.0 * K[1] - K[8]);
  for (int i = 0; i < 10; ++i) v = v - c[i] * K[i];
  return v;
}

std::shared_ptr<VectorField> script_k(double r) { return std::make_shared<ScriptKField>(r); }

namespace {

// weighted integrand 128(x^2+y^2) f (2 I_2j - I_9j)/(1+W)^4 for all j at once
struct PVectorIntegrand : MultiIntegrand {
  double r;
  CutoffField f;
  explicit PVectorIntegrand(double r_) : r(r_), f(r_) {}
  int size() const override { return 10; }
  void eval(Cx z, double* out) const override {
    double fv = f.eval(z).v;
    if (fv == 0.0) {
      for (int j = 0; j < 10; ++j) out[j] = 0.0;
      return;
    }
    Cx w = z * z - Cx(0.0, 2.0 * r * r);
    double W = std::norm(w);
    double x = z.real(), y = z.imag();
    double n = 1.0 + W;
    double pref = 128.0 * (x * x + y * y) * fv / (n * n * n * n);
    Cx zw = z * w, z2w = z * zw;
    const Cx I(0, 1);
    Cx V[10] = {w,  I * w,  z / r,      I * z / r,     Cx(1.0),
                I,  zw / r, I * zw / r, z2w / (r * r), I * z2w / (r * r)};
    Cx script = 2.0 * V[1] - V[8]; // 2 K_2 - K_9 in the V representation
    for (int j = 0; j < 10; ++j) out[j] = pref * (script * std::conj(V[j])).real();
  }
};

} // namespace

std::array<double, 10> p_vector(double r, const QuadScheme& s, int jobs,
                                std::array<double, 10>* err) {
  PVectorIntegrand f(r);
  // entries range down to O(r^{-13/2}); tight absolute tolerances
  std::vector<double> tols(10, 1e-12);
  std::vector<IntegralResult> res = integrate_multi(s, f, tols, jobs);
  std::array<double, 10> p;
  for (int j = 0; j < 10; ++j) {
    p[j] = res[j].value;
    if (err) (*err)[j] = res[j].err_est;
  }
  return p;
}

std::array<double, 10> solve_c(const GramMatrix& J, const std::array<double, 10>& p,
                               double* residual) {
  // permuted block factorization, one full-matrix refinement step
  std::array<std::vector<int>, 4> blocks;
  {
    int id = 0;
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < kBlockSizes[b]; ++k) blocks[b].push_back(kBlockPerm[id++]);
  }
  auto block_solve = [&](const std::array<double, 10>& rhs) {
    std::array<double, 10> x{};
    for (const std::vector<int>& idx : blocks) {
      int n = (int)idx.size();
      Mat A(n);
      std::vector<double> b(n);
      for (int i = 0; i < n; ++i) {
        b[i] = rhs[idx[i]];
        for (int j = 0; j < n; ++j) A(i, j) = J.entries(idx[i], idx[j]);
      }
      std::vector<double> sol = solve_lu(A, b);
      for (int i = 0; i < n; ++i) x[idx[i]] = sol[i];
    }
    return x;
  };

  std::array<double, 10> c = block_solve(p);
  // one step of iterative refinement against the full matrix
  std::array<double, 10> res{};
  for (int i = 0; i < 10; ++i) {
    double ri = p[i];
    for (int j = 0; j < 10; ++j) ri -= J.entries(i, j) * c[j];
    res[i] = ri;
  }
  std::array<double, 10> corr = block_solve(res);
  for (int i = 0; i < 10; ++i) c[i] += corr[i];

  double rn = 0.0, pn = 0.0;
  for (int i = 0; i < 10; ++i) {
    double ri = p[i];
    for (int j = 0; j < 10; ++j) ri -= J.entries(i, j) * c[j];
    rn += ri * ri;
    pn += p[i] * p[i];
  }
  double rel = std::sqrt(rn) / std::max(std::sqrt(pn), 1e-300);
  if (residual) *residual = rel;
  if (rel > 1e-8) throw IllConditioned(rel);
  return c;
}

std::shared_ptr<SphereField> build_u(double r, double eps, const std::array<double, 10>& c) {
  auto Phi = lift(two_bubble_map(r));
  auto v = std::make_shared<HKField>(r, c);
  return perturb_on_sphere(Phi, v, eps);
}

namespace {

struct OrthIntegrand : MultiIntegrand {
  const SphereField& u;
  const KernelBasisEvaluator& basis;
  OrthIntegrand(const SphereField& u_, const KernelBasisEvaluator& b) : u(u_), basis(b) {}
  int size() const override { return 10; }
  void eval(Cx z, double* out) const override {
    VJet ju = u.eval(z);
    std::array<VJet, 10> K;
    basis.eval(z, K);
    for (int i = 0; i < 10; ++i)
      out[i] = dot(ju.dx, K[i].dx) + dot(ju.dy, K[i].dy);
  }
};

double max_abs(const std::vector<IntegralResult>& v) {
  double m = 0.0;
  for (const IntegralResult& r : v) m = std::max(m, std::abs(r.value));
  return m;
}

} // namespace

CounterexampleReport counterexample_report(double r, double eps, const ReportOptions& opts) {
  if (r < 5.0) throw std::invalid_argument("counterexample report needs r >= 5");
  if (eps <= 0.0) throw std::invalid_argument("counterexample report needs eps > 0");
  CounterexampleReport rep;
  rep.r = r;
  rep.eps = eps;
  QuadScheme s = default_scheme(r);
  int jobs = opts.jobs;

  GramMatrix J = gram_matrix(ParamVec::base_point(r), r, s, jobs);
  rep.converged = J.converged;
  std::array<double, 10> perr{};
  rep.p = p_vector(r, s, jobs, &perr);
  rep.c = solve_c(J, rep.p, &rep.solve_residual);

  double qb = 0.0;
  for (int i = 0; i < 10; ++i) {
    qb = std::max(qb, perr[i]);
    for (int j = 0; j < 10; ++j) qb = std::max(qb, J.err_est(i, j));
  }

  // split pieces: |grad(f K)|^2, |grad f|^2 |K|^2, |grad Phi|^2 |f K|^2
  CutoffField f(r);
  ScriptKField K(r);
  KernelBasisEvaluator basis(ParamVec::base_point(r), r);
  {
    IntegralResult a = integrate(
        s,
        [&](Cx z) {
          RJet fj = f.eval(z);
          VJet kj = K.eval(z);
          VJet fk = fj * kj;
          return dot(fk.dx, fk.dx) + dot(fk.dy, fk.dy);
        },
        jobs, 1e-12 * std::pow(r, -2.0));
    IntegralResult b = integrate(
        s,
        [&](Cx z) {
          RJet fj = f.eval(z);
          double g2 = fj.dx * fj.dx + fj.dy * fj.dy;
          if (g2 == 0.0) return 0.0;
          Vec3 kv = K.eval(z).v;
          return g2 * dot(kv, kv);
        },
        jobs, 1e-12 * std::pow(r, -2.0));
    IntegralResult c2 = integrate(
        s,
        [&](Cx z) {
          double fv = f.eval(z).v;
          if (fv == 0.0) return 0.0;
          Vec3 kv = K.eval(z).v;
          return basis.weight(z) * fv * fv * dot(kv, kv);
        },
        jobs, 1e-12 * std::pow(r, -2.0));
    rep.grad_fk_sq = a.value;
    rep.gradf_k_sq = b.value;
    rep.weight_fk_sq = c2.value;
    qb = std::max({qb, a.err_est, b.err_est, c2.err_est});
  }

  // ||hK||^2 = integral |grad(f K - c.K)|^2
  HKField hk(r, rep.c);
  {
    IntegralResult n = integrate(
        s,
        [&](Cx z) {
          VJet v = hk.eval(z);
          return dot(v.dx, v.dx) + dot(v.dy, v.dy);
        },
        jobs, 1e-12 * std::pow(r, -2.0));
    rep.hk_norm_sq = n.value;
    qb = std::max(qb, n.err_est);
  }
  rep.dist_sq_formula = eps * eps * rep.hk_norm_sq;

  // deficits and orthogonality residuals at eps and eps/2
  auto measure = [&](double e, double& deficit, double& orth) {
    auto u = build_u(r, e, rep.c);
    IntegralResult d = energy_deficit(*u, s, +1, jobs);
    deficit = d.value;
    qb = std::max(qb, d.err_est);
    OrthIntegrand g(*u, basis);
    std::vector<double> tols(10, 1e-11);
    orth = max_abs(integrate_multi(s, g, tols, jobs));
  };
  measure(eps, rep.deficit, rep.orth_residual);
  measure(eps / 2.0, rep.deficit_half, rep.orth_residual_half);
  rep.deficit_eps2_coeff = (8.0 * rep.deficit_half - rep.deficit) / (eps * eps);

  {
    auto u = build_u(r, eps, rep.c);
    rep.degree_u = degree(*u, s, jobs).value;
  }

  if (opts.project) {
    ParamVec a0 = ParamVec::base_point(r);
    ProjectOptions po;
    po.jobs = jobs;
    auto ue = build_u(r, eps, rep.c);
    ProjectionResult pe = project(*ue, a0, r, s, po);
    auto uh = build_u(r, eps / 2.0, rep.c);
    ProjectionResult ph = project(*uh, a0, r, s, po);
    rep.dist_sq_projected = pe.dist_sq;
    rep.dist_sq_projected_half = ph.dist_sq;
    rep.proj_iterations = std::max(pe.iterations, ph.iterations);
    rep.proj_converged = pe.converged && ph.converged;
    rep.dist2_eps2_coeff = (8.0 * ph.dist_sq - pe.dist_sq) / (eps * eps);
  } else {
    rep.dist_sq_projected = rep.dist_sq_formula;
    rep.dist_sq_projected_half = rep.hk_norm_sq * eps * eps / 4.0;
    rep.dist2_eps2_coeff = rep.hk_norm_sq;
  }

  rep.ratio = rep.dist2_eps2_coeff / rep.deficit_eps2_coeff;
  rep.log_ratio = rep.ratio / std::log(r);
  double def_at_eps = rep.deficit_eps2_coeff * eps * eps;
  rep.conj_ratio = rep.dist2_eps2_coeff * eps * eps /
                   (def_at_eps * (1.0 + std::abs(std::log(def_at_eps))));
  rep.quad_err_bound = qb;
  return rep;
}

} // namespace hm
