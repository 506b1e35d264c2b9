#pragma once

#include <stdexcept>
#include <vector>

#include "hm/jet.hpp"

namespace hm {

enum class Orientation { Holomorphic, AntiHolomorphic };

// Dense complex polynomial, coefficients in ascending degree.  The zero
// polynomial has an empty coefficient list; otherwise the last entry is
// nonzero (enforced by trim()).
struct ComplexPoly {
  std::vector<Cx> coeffs;

  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Cx> c) : coeffs(std::move(c)) { trim(); }
  static ComplexPoly constant(Cx c) { return ComplexPoly({c}); }
  static ComplexPoly from_roots(const std::vector<Cx>& roots, Cx lead = 1.0);

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double max_coeff() const;
  void trim(double tol = 0.0);

  Cx eval(Cx z) const; // Horner
  ComplexPoly derivative() const;
  // (p(z), d/dx, d/dy); anti-holomorphic orientation evaluates at conj(z).
  CJet eval_jet(Cx z, Orientation o = Orientation::Holomorphic) const;

  ComplexPoly operator+(const ComplexPoly& o) const;
  ComplexPoly operator-(const ComplexPoly& o) const;
  ComplexPoly operator*(const ComplexPoly& o) const;
  ComplexPoly operator*(Cx s) const;
};

// Coefficient sup-metric over zero-padded lists.
double coeff_distance(const ComplexPoly& a, const ComplexPoly& b);

// Degree of the numerical gcd via the Euclidean remainder sequence with a
// relative coefficient threshold.
int gcd_degree(const ComplexPoly& p, const ComplexPoly& q, double tol = 1e-10);

} // namespace hm
