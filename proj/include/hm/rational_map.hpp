#pragma once

#include "hm/complex_poly.hpp"

namespace hm {

struct ZeroNumerator : std::runtime_error {
  ZeroNumerator() : std::runtime_error("normalize_monic: numerator is identically zero") {}
};
struct DegenerateMoebius : std::runtime_error {
  DegenerateMoebius() : std::runtime_error("Moebius transform has |ad-bc| below tolerance") {}
};

struct Moebius {
  Cx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  Cx det() const { return a * d - b * c; }
  Cx apply(Cx z) const { return (a * z + b) / (c * z + d); }
  Moebius inverse() const { return {d, -b, -c, a}; }
  Moebius compose(const Moebius& o) const { // this ∘ o
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Moebius conj_coeffs() const {
    return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)};
  }
};

// Irreducible pair (p, q); q not identically zero.  Anti-holomorphic maps keep
// the same coefficient data and evaluate at conj(z).
struct RationalMap {
  ComplexPoly p, q;
  Orientation orientation = Orientation::Holomorphic;

  int algebraic_degree() const { return std::max(p.degree(), q.degree()); }
  int topological_degree() const {
    int d = algebraic_degree();
    return orientation == Orientation::Holomorphic ? d : -d;
  }
  Cx eval(Cx z) const {
    Cx w = orientation == Orientation::Holomorphic ? z : std::conj(z);
    return p.eval(w) / q.eval(w);
  }
  // (value, d/dx, d/dy) of p/q; not pole-safe (use the lift for that).
  CJet eval_jet(Cx z) const;

  bool is_irreducible(double tol = 1e-10) const { return gcd_degree(p, q, tol) == 0; }
};

RationalMap normalize_monic(const RationalMap& m);
RationalMap compose_moebius(const RationalMap& m, const Moebius& F, double tol = 1e-12);

// The degree-2 two-bubble map psi_r(z) = (z-r-ir)(z+r+ir) = z^2 - 2ir^2.
RationalMap two_bubble_map(double r);

} // namespace hm
