#include "hm/sphere_fields.hpp"

namespace hm {

VJet LiftedField::eval(Cx z) const {
  CJet P = map.p.eval_jet(z, map.orientation);
  CJet Q = map.q.eval_jet(z, map.orientation);
  RJet p2 = abs2(P), q2 = abs2(Q);
  RJet S = p2 + q2;
  CJet num = 2.0 * (P * conj(Q));
  RJet h = p2 - q2;
  CJet c = num / cjet(S);
  RJet s3 = h / S;
  return vjet_from(c, s3);
}

VJet PerturbedField::eval(Cx z) const {
  VJet v = dir->eval(z);
  VJet Phi = base->eval(z);
  double tang = std::abs(dot(v.v, Phi.v));
  if (tang > tangency_tol) throw TangencyViolation(tang);
  RJet m = dot(v, v);
  if (eps * eps * m.v >= 1.0) throw AmplitudeTooLarge();
  RJet G = sqrt(RJet{1.0, 0.0, 0.0} - (eps * eps) * m);
  VJet u = eps * v + G * Phi;
  return u;
}

std::shared_ptr<SphereField> lift(const RationalMap& m) {
  return std::make_shared<LiftedField>(m);
}

std::shared_ptr<SphereField> perturb_on_sphere(std::shared_ptr<const SphereField> Phi,
                                               std::shared_ptr<const VectorField> v, double eps) {
  return std::make_shared<PerturbedField>(std::move(Phi), std::move(v), eps);
}

double dirichlet_density(const RationalMap& m, Cx z) {
  Cx w = m.orientation == Orientation::Holomorphic ? z : std::conj(z);
  CJet P = m.p.eval_jet(w), Q = m.q.eval_jet(w); // holomorphic jets of the data
  Cx wr = P.dx * Q.v - P.v * Q.dx;               // p'q - pq'
  double n2 = std::norm(P.v) + std::norm(Q.v);
  double a = std::abs(wr);
  return 8.0 * (a / n2) * (a / n2);
}

double degree_density(const VJet& j) { return dot(j.v, cross(j.dy, j.dx)); }
double degree_density(const SphereField& u, Cx z) { return degree_density(u.eval(z)); }

Cx hopf_differential(const SphereField& u, Cx z) {
  VJet j = u.eval(z);
  return Cx(dot(j.dy, j.dy) - dot(j.dx, j.dx), 2.0 * dot(j.dx, j.dy));
}

double deficit_density(const VJet& j, int sign) {
  Vec3 w = j.dx - double(sign) * cross(j.v, j.dy);
  return dot(w, w);
}

DensitySample density_sample(const SphereField& u, Cx z) {
  VJet j = u.eval(z);
  return {dot(j.dx, j.dx) + dot(j.dy, j.dy), degree_density(j)};
}

} // namespace hm
