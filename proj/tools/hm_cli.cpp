// Command-line front end: energies, degrees, gram matrices, expansion checks,
// the two-bubble counterexample pipeline and the nearest-harmonic projector.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hm/asymptotics.hpp"
#include "hm/counterexample.hpp"
#include "hm/io.hpp"
#include "hm/projector.hpp"

using namespace hm;
using nlohmann::json;

namespace {

int g_jobs = 0;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

RationalMap parse_map(const std::string& spec) {
  if (spec.rfind("json:", 0) == 0) return map_from_json(spec.substr(5));
  return map_from_json(slurp(spec));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::string config_json(const std::string& cmd, std::initializer_list<std::pair<std::string, std::string>> kv) {
  json j;
  j["command"] = cmd;
  for (const auto& [k, v] : kv) j[k] = v;
  j["per_quadrature_rel_tol"] = 1e-10;
  return j.dump();
}

int run_map_scalar(const std::string& cmd, const std::string& mapspec, const std::string& jsonout,
                   const std::string& samples_out = "", const std::string& scheme_out = "") {
  RationalMap m = parse_map(mapspec);
  QuadScheme s = scheme_for_map(m);
  auto u = lift(m);
  if (!samples_out.empty()) {
    double hw = 1.0;
    for (Cx c : poly_roots(m.p)) hw = std::max(hw, 1.5 * std::abs(c));
    for (Cx c : poly_roots(m.q)) hw = std::max(hw, 1.5 * std::abs(c));
    spill(samples_out, field_samples_csv(*u, hw, 101));
  }
  if (!scheme_out.empty()) spill(scheme_out, scheme_to_json(s) + "\n");
  IntegralResult res = cmd == "energy" ? energy(*u, s, g_jobs) : degree(*u, s, g_jobs);
  std::string cfg = config_json(cmd, {{"map", map_to_json(m)}});
  std::cout << cmd << " = " << fmt17(res.value) << " +- " << fmt17(res.err_est)
            << (res.converged ? "" : "  [TOLERANCE NOT MET]") << "\n";
  if (cmd == "degree")
    std::cout << "rounded = " << (long)std::llround(res.value)
              << " (|residual| = " << fmt17(std::abs(res.value - std::llround(res.value)))
              << ")\n";
  if (!jsonout.empty()) {
    json j;
    j["config"] = json::parse(cfg);
    j["value"] = res.value;
    j["err_est"] = res.err_est;
    j["converged"] = res.converged;
    spill(jsonout, j.dump(2) + "\n");
  }
  return res.converged ? 0 : 2;
}

int run_gram(double r, const std::string& csvout, const std::string& jsonout, bool via_gradients,
             const std::string& scheme_out = "") {
  QuadScheme s = default_scheme(r);
  if (!scheme_out.empty()) spill(scheme_out, scheme_to_json(s) + "\n");
  ParamVec a = ParamVec::base_point(r);
  GramMatrix g = via_gradients ? gram_via_gradients(a, r, s, g_jobs) : gram_matrix(a, r, s, g_jobs);
  std::string cfg = config_json("gram", {{"r", fmt17(r)},
                                         {"route", via_gradients ? "gradients" : "weighted"}});
  double maxerr = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) maxerr = std::max(maxerr, g.err_est(i, j));
  std::cout << "gram matrix at r = " << fmt17(r) << ", max entry err " << fmt17(maxerr)
            << (g.converged ? "" : "  [TOLERANCE NOT MET]") << "\n";
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) std::cout << fmt17(g.entries(i, j)) << (j == 9 ? "\n" : " ");
  }
  std::vector<double> ev = g.eigenvalues();
  std::cout << "eigenvalues: ";
  for (double v : ev) std::cout << fmt17(v) << " ";
  std::cout << "\ndet = " << fmt17(det_lu(g.entries)) << " +- (entrywise "
            << fmt17(maxerr) << ")\n";
  if (!csvout.empty()) spill(csvout, "# " + cfg + "\n" + gram_to_csv(g));
  if (!jsonout.empty()) spill(jsonout, gram_meta_to_json(g, cfg) + "\n");
  return g.converged ? 0 : 2;
}

int run_asym_check(double r, const std::string& csvout) {
  QuadScheme s = default_scheme(r);
  GramMatrix g = gram_matrix(ParamVec::base_point(r), r, s, g_jobs);
  std::string cfg = config_json("asym-check", {{"r", fmt17(r)}});
  std::ostringstream csv;
  csv << "# " << cfg << "\n";
  csv << "entry,quadrature,prediction,abs_diff,allowed_band,status\n";
  bool all_ok = true;
  for (const GramEntryOracle& e : gram_entry_oracles()) {
    double q = g.entries(e.i - 1, e.j - 1);
    double pred = e.prediction(r);
    double diff = std::abs(q - pred);
    // band: generous constant times the remainder order, floored by the
    // quadrature error estimate
    double band = std::max(40.0 * std::pow(r, e.band_exponent()),
                           10.0 * g.err_est(e.i - 1, e.j - 1) + 1e-12);
    bool ok = diff <= band;
    all_ok = all_ok && ok;
    csv << "J_" << e.i << "_" << e.j << "," << fmt17(q) << "," << fmt17(pred) << ","
        << fmt17(diff) << "," << fmt17(band) << "," << (ok ? "PASS" : "FAIL") << "\n";
  }
  for (auto [i, j] : gram_zero_pairs()) {
    double q = g.entries(i - 1, j - 1);
    double band = 1e-8 * g.max_diag();
    bool ok = std::abs(q) <= band;
    all_ok = all_ok && ok;
    csv << "J_" << i << "_" << j << "," << fmt17(q) << ",0," << fmt17(std::abs(q)) << ","
        << fmt17(band) << "," << (ok ? "PASS" : "FAIL") << "\n";
  }
  std::cout << csv.str();
  if (!csvout.empty()) spill(csvout, csv.str());
  return all_ok ? 0 : 2;
}

int run_counterexample(double r, double eps, const std::string& jsonout, bool project) {
  ReportOptions opts;
  opts.jobs = g_jobs;
  opts.project = project;
  CounterexampleReport rep = counterexample_report(r, eps, opts);
  std::string cfg = config_json("counterexample",
                                {{"r", fmt17(r)}, {"eps", fmt17(eps)},
                                 {"eps_schedule", "eps, eps/2 (Richardson)"}});
  std::cout << "r = " << fmt17(r) << " eps = " << fmt17(eps) << "\n"
            << "deficit           = " << fmt17(rep.deficit) << " +- " << fmt17(rep.quad_err_bound)
            << "\n"
            << "dist^2 (formula)  = " << fmt17(rep.dist_sq_formula) << " +- "
            << fmt17(rep.quad_err_bound) << "\n"
            << "dist^2 (project)  = " << fmt17(rep.dist_sq_projected) << " +- "
            << fmt17(rep.quad_err_bound) << "\n"
            << "eps^2 coeffs: deficit " << fmt17(rep.deficit_eps2_coeff) << ", dist^2 "
            << fmt17(rep.dist2_eps2_coeff) << "\n"
            << "ratio = " << fmt17(rep.ratio) << "  ratio/ln r = " << fmt17(rep.log_ratio)
            << "  conj_ratio = " << fmt17(rep.conj_ratio) << "\n"
            << "degree(u) = " << fmt17(rep.degree_u) << " +- 1e-6\n";
  if (!rep.converged || !rep.proj_converged) std::cout << "[TOLERANCE NOT MET]\n";
  if (!jsonout.empty()) spill(jsonout, report_to_json(rep, cfg) + "\n");
  return (rep.converged && rep.proj_converged) ? 0 : 2;
}

int run_sweep(const std::string& rlist, const std::string& epslist, const std::string& csvout,
              bool project) {
  std::vector<double> rs = parse_list(rlist);
  std::vector<double> es = parse_list(epslist);
  std::string cfg = config_json("sweep", {{"r_list", rlist}, {"eps_list", epslist}});
  std::ostringstream csv;
  csv << "# " << cfg << "\n";
  csv << "r,eps,deficit_eps2_coeff,dist2_eps2_coeff,ratio,ratio_over_lnr,conj_ratio,"
         "quad_err_bound\n";
  bool all_ok = true;
  for (double r : rs) {
    for (double eps : es) {
      ReportOptions opts;
      opts.jobs = g_jobs;
      opts.project = project;
      CounterexampleReport rep = counterexample_report(r, eps, opts);
      all_ok = all_ok && rep.converged && rep.proj_converged;
      csv << fmt17(r) << "," << fmt17(eps) << "," << fmt17(rep.deficit_eps2_coeff) << ","
          << fmt17(rep.dist2_eps2_coeff) << "," << fmt17(rep.ratio) << ","
          << fmt17(rep.log_ratio) << "," << fmt17(rep.conj_ratio) << ","
          << fmt17(rep.quad_err_bound) << "\n";
    }
  }
  std::cout << csv.str();
  if (!csvout.empty()) spill(csvout, csv.str());
  return all_ok ? 0 : 2;
}

int run_project(const std::string& fieldspec, const std::string& init, const std::string& jsonout) {
  std::shared_ptr<SphereField> u;
  double r = 0.0;
  if (fieldspec.rfind("build:", 0) == 0) {
    std::vector<double> v = parse_list(fieldspec.substr(6));
    if (v.size() != 2) throw CLI::ValidationError("--field build:<r>,<eps>");
    r = v[0];
    QuadScheme s = default_scheme(r);
    GramMatrix J = gram_matrix(ParamVec::base_point(r), r, s, g_jobs);
    std::array<double, 10> p = p_vector(r, s, g_jobs);
    std::array<double, 10> c = solve_c(J, p);
    u = build_u(r, v[1], c);
  } else if (fieldspec.rfind("map:", 0) == 0) {
    RationalMap m = parse_map(fieldspec.substr(4));
    if (m.p.is_zero()) throw std::invalid_argument("map numerator is identically zero");
    u = lift(m);
    r = std::max(2.0, std::sqrt(std::abs(m.p.coeffs[0]) / 2.0)); // scale guess
  } else {
    throw CLI::ValidationError("--field must be build:<r>,<eps> or map:<spec>");
  }
  ParamVec a0;
  if (init == "alpha_r")
    a0 = ParamVec::base_point(r);
  else if (init.rfind("json:", 0) == 0)
    a0 = alpha_from_json(init.substr(5));
  else
    throw CLI::ValidationError("--init must be alpha_r or json:[...]");
  QuadScheme s = default_scheme(r);
  ProjectOptions opts;
  opts.jobs = g_jobs;
  ProjectionResult res = project(*u, a0, r, s, opts);
  std::string cfg = config_json("project", {{"field", fieldspec}, {"init", init}});
  std::cout << "converged = " << (res.converged ? "yes" : "no") << " in " << res.iterations
            << " iterations\n"
            << "dist^2 = " << fmt17(res.dist_sq) << "  grad_norm = " << fmt17(res.grad_norm)
            << "\nalpha* = " << alpha_to_json(res.alpha_star) << "\n";
  if (!jsonout.empty()) spill(jsonout, projection_to_json(res, cfg) + "\n");
  return res.converged ? 0 : 2;
}

int run_probe(double r, int trials, uint64_t seed, double eps, const std::string& csvout) {
  QuadScheme s = default_scheme(r);
  ParamVec a = ParamVec::base_point(r);
  ProjectOptions opts;
  opts.jobs = g_jobs;
  std::vector<StabilityProbeSample> samples = local_stability_probe(a, r, trials, eps, seed, s, opts);
  std::string cfg = config_json("stability-probe",
                                {{"r", fmt17(r)}, {"trials", std::to_string(trials)},
                                 {"seed", std::to_string(seed)}, {"eps", fmt17(eps)}});
  std::ostringstream csv;
  csv << "# " << cfg << "\n";
  csv << "trial,deficit,dist_sq,ratio\n";
  double worst = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    csv << i << "," << fmt17(samples[i].deficit) << "," << fmt17(samples[i].dist_sq) << ","
        << fmt17(samples[i].ratio) << "\n";
    worst = std::max(worst, samples[i].ratio);
  }
  csv << "# empirical_max_ratio," << fmt17(worst) << "\n";
  std::cout << csv.str();
  if (!csvout.empty()) spill(csvout, csv.str());
  return 0;
}

int run_selftest() {
  int fails = 0;
  auto check = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++fails;
  };
  // constant polynomial jet
  ComplexPoly one = ComplexPoly::constant(1.0);
  CJet j = one.eval_jet(Cx(0.4, -0.2));
  check(j.v == Cx(1.0) && j.dx == Cx(0.0), "constant polynomial has zero derivative");
  // psi_r root
  RationalMap psi = two_bubble_map(3.0);
  check(std::abs(psi.eval(Cx(3, 3))) < 1e-12, "two-bubble map vanishes at (r, r)");
  // lift anchors
  RationalMap idm{ComplexPoly({0.0, 1.0}), ComplexPoly::constant(1.0)};
  auto u = lift(idm);
  check(norm(u->eval(0.0).v - Vec3{0, 0, -1}) < 1e-14, "lift(z) sends 0 to the south pole");
  check(std::abs(degree_density(*u, 0.0) - 4.0) < 1e-12, "degree density anchor at the origin");
  // monic normalization idempotent
  RationalMap m{ComplexPoly({Cx(1, 1), Cx(0.5, 0), Cx(2, 1)}), ComplexPoly::constant(1.0)};
  RationalMap n1 = normalize_monic(m), n2 = normalize_monic(n1);
  check(coeff_distance(n1.p, n2.p) == 0.0, "monic normalization is idempotent");
  // cutoff values
  CutoffField f(9.0);
  check(f.eval(Cx(9, 9)).v == 1.0 && f.eval(Cx(-9, -9)).v == -1.0 && f.eval(Cx(0, 0)).v == 0.0,
        "cutoff takes values 1, -1, 0 at the anchors");
  // script K pointwise identity
  ScriptKField K(6.0);
  Cx z(2.0, -1.0);
  double W = std::norm(z * z - Cx(0, 72.0));
  Vec3 kv = K.eval(z).v;
  double lhs = dot(kv, kv) * std::pow(6.0, 4.0) * (1 + W) * (1 + W);
  check(std::abs(lhs / (4.0 * W * W) - 1.0) < 1e-10, "script K norm identity");
  // base-point family map
  ParamVec ar = ParamVec::base_point(4.0);
  check(std::abs(psi_eval(ar, Cx(0, 0)).v - Cx(0, -32.0)) < 1e-12,
        "family map at the base point");
  // gram symmetry + positive definiteness at small r
  GramMatrix g = gram_matrix(ParamVec::base_point(2.0), 2.0, default_scheme(2.0), g_jobs);
  bool sym = true;
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) sym = sym && g.entries(i, k) == g.entries(k, i);
  check(sym, "gram matrix symmetric");
  check(g.eigenvalues().front() > 0.0, "gram matrix positive definite");
  // degree quadrature anchor
  QuadScheme s = scheme_for_map(idm);
  check(std::abs(degree(*u, s, g_jobs).value - 1.0) < 1e-6, "degree(lift(z)) = 1");
  std::cout << (fails == 0 ? "selftest OK\n" : "selftest FAILED\n");
  return fails == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for degree-2 harmonic map stability"};
  app.require_subcommand(1);
  app.fallthrough(); // allow --jobs after the subcommand name
  app.add_option("--jobs", g_jobs, "worker threads (0 = all cores; results are identical)");

  std::string mapspec, jsonout, csvout;
  double r = 10.0, eps = 1e-2;
  bool via_gradients = false, no_project = false;
  std::string rlist = "10,20,40,80", epslist = "0.01";
  std::string fieldspec, init = "alpha_r";
  std::string samples_out, scheme_out;
  int trials = 8;
  uint64_t seed = 1;

  CLI::App* c_energy = app.add_subcommand("energy", "Dirichlet energy of a lifted map");
  c_energy->add_option("--map", mapspec, "json:{...} or a file path")->required();
  c_energy->add_option("--json", jsonout, "write result JSON here");
  c_energy->add_option("--dump-samples", samples_out, "write x,y,u1,u2,u3 grid CSV here");
  c_energy->add_option("--dump-scheme", scheme_out, "write the quadrature scheme JSON here");

  CLI::App* c_degree = app.add_subcommand("degree", "topological degree of a lifted map");
  c_degree->add_option("--map", mapspec)->required();
  c_degree->add_option("--json", jsonout);

  CLI::App* c_gram = app.add_subcommand("gram", "10x10 gram matrix of the kernel basis");
  c_gram->add_option("--r", r)->required();
  c_gram->add_option("--csv", csvout);
  c_gram->add_option("--json", jsonout);
  c_gram->add_flag("--via-gradients", via_gradients, "use the grad K : grad K route");
  c_gram->add_option("--dump-scheme", scheme_out, "write the quadrature scheme JSON here");

  CLI::App* c_asym = app.add_subcommand("asym-check", "quadrature vs asymptotic predictions");
  c_asym->add_option("--r", r)->required();
  c_asym->add_option("--csv", csvout);

  CLI::App* c_cex = app.add_subcommand("counterexample", "two-bubble construction report");
  c_cex->add_option("--r", r)->required();
  c_cex->add_option("--eps", eps);
  c_cex->add_option("--json", jsonout);
  c_cex->add_flag("--no-project", no_project, "skip the projector distance");

  CLI::App* c_sweep = app.add_subcommand("sweep", "stability-ratio sweep over r");
  c_sweep->add_option("--r-list", rlist, "comma-separated radii");
  c_sweep->add_option("--eps-list", epslist, "comma-separated epsilons");
  c_sweep->add_option("--csv", csvout,
                      "columns: r,eps,deficit_eps2_coeff,dist2_eps2_coeff,ratio,"
                      "ratio_over_lnr,conj_ratio,quad_err_bound (17 significant digits)");
  c_sweep->add_flag("--no-project", no_project);

  CLI::App* c_proj = app.add_subcommand("project", "nearest harmonic map projection");
  c_proj->add_option("--field", fieldspec, "build:<r>,<eps> or map:<spec>")->required();
  c_proj->add_option("--init", init, "alpha_r or json:[10 reals]");
  c_proj->add_option("--json", jsonout);

  CLI::App* c_probe = app.add_subcommand("stability-probe", "random tangent perturbation probe");
  c_probe->add_option("--r", r)->required();
  c_probe->add_option("--trials", trials);
  c_probe->add_option("--seed", seed);
  c_probe->add_option("--eps", eps);
  c_probe->add_option("--csv", csvout, "columns: trial,deficit,dist_sq,ratio");

  app.add_subcommand("selftest", "quick invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1; // usage errors exit 1
  }

  try {
    if (c_energy->parsed())
      return run_map_scalar("energy", mapspec, jsonout, samples_out, scheme_out);
    if (c_degree->parsed()) return run_map_scalar("degree", mapspec, jsonout);
    if (c_gram->parsed()) return run_gram(r, csvout, jsonout, via_gradients, scheme_out);
    if (c_asym->parsed()) return run_asym_check(r, csvout);
    if (c_cex->parsed()) return run_counterexample(r, eps, jsonout, !no_project);
    if (c_sweep->parsed()) return run_sweep(rlist, epslist, csvout, !no_project);
    if (c_proj->parsed()) return run_project(fieldspec, init, jsonout);
    if (c_probe->parsed()) return run_probe(r, trials, seed, eps, csvout);
    return run_selftest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
