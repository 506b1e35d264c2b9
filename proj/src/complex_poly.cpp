#include "hm/complex_poly.hpp"

#include <algorithm>
#include <cmath>

namespace hm {

ComplexPoly ComplexPoly::from_roots(const std::vector<Cx>& roots, Cx lead) {
  ComplexPoly p = constant(lead);
  for (Cx r : roots) p = p * ComplexPoly({-r, 1.0});
  return p;
}

double ComplexPoly::max_coeff() const {
  double m = 0.0;
  for (const Cx& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void ComplexPoly::trim(double tol) {
  double m = max_coeff();
  while (!coeffs.empty() && std::abs(coeffs.back()) <= tol * m) coeffs.pop_back();
}

Cx ComplexPoly::eval(Cx z) const {
  Cx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs.size() <= 1) return {};
  std::vector<Cx> d(coeffs.size() - 1);
  for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
  return ComplexPoly(std::move(d));
}

CJet ComplexPoly::eval_jet(Cx z, Orientation o) const {
  Cx w = (o == Orientation::Holomorphic) ? z : std::conj(z);
  // Horner for value and derivative in one sweep.
  Cx val = 0.0, der = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    der = der * w + val;
    val = val * w + *it;
  }
  if (o == Orientation::Holomorphic) return {val, der, Cx(0, 1) * der};
  return {val, der, Cx(0, -1) * der};
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& o) const {
  std::vector<Cx> c(std::max(coeffs.size(), o.coeffs.size()), 0.0);
  for (size_t k = 0; k < coeffs.size(); ++k) c[k] += coeffs[k];
  for (size_t k = 0; k < o.coeffs.size(); ++k) c[k] += o.coeffs[k];
  ComplexPoly r(std::move(c));
  r.trim(1e-300);
  return r;
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& o) const { return *this + o * Cx(-1.0); }

ComplexPoly ComplexPoly::operator*(const ComplexPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Cx> c(coeffs.size() + o.coeffs.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator*(Cx s) const {
  std::vector<Cx> c = coeffs;
  for (Cx& x : c) x *= s;
  return ComplexPoly(std::move(c));
}

double coeff_distance(const ComplexPoly& a, const ComplexPoly& b) {
  size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  double m = 0.0;
  for (size_t k = 0; k < n; ++k) {
    Cx ca = k < a.coeffs.size() ? a.coeffs[k] : Cx(0);
    Cx cb = k < b.coeffs.size() ? b.coeffs[k] : Cx(0);
    m = std::max(m, std::abs(ca - cb));
  }
  return m;
}

namespace {

// Remainder of a by b, both scaled to unit max coefficient by the caller.
ComplexPoly poly_mod(ComplexPoly a, const ComplexPoly& b) {
  int db = b.degree();
  Cx lead = b.coeffs.back();
  while (!a.is_zero() && a.degree() >= db) {
    int da = a.degree();
    Cx f = a.coeffs.back() / lead;
    for (int k = 0; k <= db; ++k) a.coeffs[da - db + k] -= f * b.coeffs[k];
    a.coeffs.pop_back();
    a.trim(1e-300);
  }
  return a;
}

} // namespace

int gcd_degree(const ComplexPoly& p, const ComplexPoly& q, double tol) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd_degree: both zero");
  ComplexPoly a = p, b = q;
  auto scale1 = [](ComplexPoly& x) {
    double m = x.max_coeff();
    if (m > 0) x = x * Cx(1.0 / m);
  };
  // Trailing coefficients at or below the (absolute) threshold count as zero;
  // the working polynomials are kept at unit max coefficient so the threshold
  // stays a relative one.
  auto chop = [](ComplexPoly& x, double thr) {
    while (!x.coeffs.empty() && std::abs(x.coeffs.back()) <= thr) x.coeffs.pop_back();
  };
  scale1(a);
  scale1(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero() && b.degree() > 0) {
    ComplexPoly r = poly_mod(a, b);
    chop(r, tol);
    if (r.is_zero()) return b.degree();
    a = b;
    b = r;
    scale1(b);
  }
  return 0; // constant (or empty after tolerance) gcd
}

} // namespace hm
