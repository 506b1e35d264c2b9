#include "hm/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace hm {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json poly_to_json(const ComplexPoly& p) {
  json arr = json::array();
  for (const Cx& c : p.coeffs) arr.push_back({c.real(), c.imag()});
  return arr;
}

ComplexPoly poly_from_json(const json& arr) {
  std::vector<Cx> c;
  for (const auto& e : arr) c.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return ComplexPoly(std::move(c));
}

} // namespace

std::string map_to_json(const RationalMap& m) {
  json j;
  j["p"] = poly_to_json(m.p);
  j["q"] = poly_to_json(m.q);
  j["orientation"] = m.orientation == Orientation::Holomorphic ? "holo" : "anti";
  return j.dump();
}

RationalMap map_from_json(const std::string& text) {
  json j = json::parse(text);
  RationalMap m;
  m.p = poly_from_json(j.at("p"));
  m.q = poly_from_json(j.at("q"));
  std::string o = j.value("orientation", "holo");
  if (o != "holo" && o != "anti")
    throw std::invalid_argument("orientation must be \"holo\" or \"anti\"");
  m.orientation = o == "holo" ? Orientation::Holomorphic : Orientation::AntiHolomorphic;
  if (m.q.is_zero()) throw std::invalid_argument("map denominator is identically zero");
  return m;
}

std::string alpha_to_json(const ParamVec& a) {
  json j = json::array();
  for (double v : a.alpha) j.push_back(v);
  return j.dump();
}

ParamVec alpha_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array() || j.size() != 10)
    throw std::invalid_argument("alpha must be an array of 10 reals");
  ParamVec a;
  for (int i = 0; i < 10; ++i) a.alpha[i] = j[i].get<double>();
  return a;
}

std::string field_samples_csv(const SphereField& u, double half_width, int n_per_side) {
  std::string out = "x,y,u1,u2,u3\n";
  for (int i = 0; i < n_per_side; ++i) {
    for (int j = 0; j < n_per_side; ++j) {
      double x = -half_width + 2.0 * half_width * i / (n_per_side - 1);
      double y = -half_width + 2.0 * half_width * j / (n_per_side - 1);
      Vec3 v = u.eval(Cx(x, y)).v;
      out += fmt17(x) + "," + fmt17(y) + "," + fmt17(v.x) + "," + fmt17(v.y) + "," + fmt17(v.z) +
             "\n";
    }
  }
  return out;
}

std::string report_to_json(const CounterexampleReport& rep, const std::string& config_json) {
  json j;
  j["config"] = json::parse(config_json);
  j["r"] = rep.r;
  j["eps"] = rep.eps;
  j["deficit"] = rep.deficit;
  j["deficit_half_eps"] = rep.deficit_half;
  j["deficit_eps2_coeff"] = rep.deficit_eps2_coeff;
  j["dist_sq_formula"] = rep.dist_sq_formula;
  j["dist_sq_projected"] = rep.dist_sq_projected;
  j["dist_sq_projected_half_eps"] = rep.dist_sq_projected_half;
  j["dist2_eps2_coeff"] = rep.dist2_eps2_coeff;
  j["ratio"] = rep.ratio;
  j["ratio_over_lnr"] = rep.log_ratio;
  j["conj_ratio"] = rep.conj_ratio;
  j["hk_norm_sq"] = rep.hk_norm_sq;
  j["split_grad_fk_sq"] = rep.grad_fk_sq;
  j["split_gradf_k_sq"] = rep.gradf_k_sq;
  j["split_weight_fk_sq"] = rep.weight_fk_sq;
  j["p"] = rep.p;
  j["c"] = rep.c;
  j["solve_residual"] = rep.solve_residual;
  j["orthogonality_residual"] = rep.orth_residual;
  j["orthogonality_residual_half_eps"] = rep.orth_residual_half;
  j["degree_u"] = rep.degree_u;
  j["quad_err_bound"] = rep.quad_err_bound;
  j["projector_iterations"] = rep.proj_iterations;
  j["projector_converged"] = rep.proj_converged;
  j["converged"] = rep.converged;
  return j.dump(2);
}

std::string projection_to_json(const ProjectionResult& res, const std::string& config_json) {
  json j;
  j["config"] = json::parse(config_json);
  j["alpha_star"] = res.alpha_star.alpha;
  j["dist_sq"] = res.dist_sq;
  j["grad_norm"] = res.grad_norm;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  return j.dump(2);
}

std::string gram_to_csv(const GramMatrix& g) {
  std::string out;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      out += fmt17(g.entries(i, j));
      out += (j == 9) ? "\n" : ",";
    }
  }
  return out;
}

std::string gram_meta_to_json(const GramMatrix& g, const std::string& config_json) {
  json j;
  j["config"] = json::parse(config_json);
  j["r"] = g.r;
  j["per_entry_abs_tol"] = 1e-9;
  j["converged"] = g.converged;
  json err = json::array();
  for (int i = 0; i < 10; ++i) {
    json row = json::array();
    for (int k = 0; k < 10; ++k) row.push_back(g.err_est(i, k));
    err.push_back(row);
  }
  j["err_est"] = err;
  json eig = json::array();
  for (double v : g.eigenvalues()) eig.push_back(v);
  j["eigenvalues"] = eig;
  return j.dump(2);
}

} // namespace hm
