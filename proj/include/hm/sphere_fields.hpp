#pragma once

#include <functional>
#include <memory>

#include "hm/rational_map.hpp"

namespace hm {

struct TangencyViolation : std::runtime_error {
  TangencyViolation(double v)
      : std::runtime_error("perturbation not tangent to base map, |v.Phi| = " + std::to_string(v)) {}
};
struct AmplitudeTooLarge : std::runtime_error {
  AmplitudeTooLarge() : std::runtime_error("eps^2 |v|^2 >= 1 at an evaluation point") {}
};

// S^2-valued field with first-derivative jets.  |u(z)| = 1 pointwise.
struct SphereField {
  virtual ~SphereField() = default;
  virtual VJet eval(Cx z) const = 0;
};

// R^3-valued perturbation direction with jets.
struct VectorField {
  virtual ~VectorField() = default;
  virtual VJet eval(Cx z) const = 0;
};

struct FuncVectorField : VectorField {
  std::function<VJet(Cx)> f;
  explicit FuncVectorField(std::function<VJet(Cx)> fn) : f(std::move(fn)) {}
  VJet eval(Cx z) const override { return f(z); }
};

// Stereographic lift of p/q through the homogeneous form
// (2 p conj(q), |p|^2-|q|^2) / (|p|^2+|q|^2), smooth across poles.
struct LiftedField : SphereField {
  RationalMap map;
  explicit LiftedField(RationalMap m) : map(std::move(m)) {}
  VJet eval(Cx z) const override;
};

struct ConstantField : SphereField {
  Vec3 value;
  explicit ConstantField(Vec3 v) : value(v) {}
  VJet eval(Cx) const override { return {value, {}, {}}; }
};

// u = eps v + sqrt(1 - eps^2 |v|^2) Phi; |u| = 1 by construction.
struct PerturbedField : SphereField {
  std::shared_ptr<const SphereField> base;
  std::shared_ptr<const VectorField> dir;
  double eps;
  double tangency_tol = 1e-8;

  PerturbedField(std::shared_ptr<const SphereField> Phi, std::shared_ptr<const VectorField> v,
                 double e)
      : base(std::move(Phi)), dir(std::move(v)), eps(e) {}
  VJet eval(Cx z) const override;
};

std::shared_ptr<SphereField> lift(const RationalMap& m);
std::shared_ptr<SphereField> perturb_on_sphere(std::shared_ptr<const SphereField> Phi,
                                               std::shared_ptr<const VectorField> v, double eps);

// |grad u|^2 of the lift in the pole-safe cleared form.
double dirichlet_density(const RationalMap& m, Cx z);
// u . (u_y x u_x); integrates to 4*pi*deg.
double degree_density(const SphereField& u, Cx z);
double degree_density(const VJet& j);
// u_y.u_y - u_x.u_x + 2i u_x.u_y; vanishes for harmonic maps.
Cx hopf_differential(const SphereField& u, Cx z);
// |u_x - s u x u_y|^2 = |grad u|^2 - 2 s u.(u_y x u_x); s = sign of the degree.
// Nonnegative, vanishes identically on harmonic lifts; twice the energy-deficit
// density.
double deficit_density(const VJet& j, int sign);

struct DensitySample {
  double dirichlet;
  double degree;
};
DensitySample density_sample(const SphereField& u, Cx z);

} // namespace hm
