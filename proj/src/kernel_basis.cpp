#include "hm/kernel_basis.hpp"

#include <cmath>

namespace hm {

ParamVec ParamVec::from_complex(Cx a, Cx b, Cx c, Cx d, Cx e) {
  ParamVec v;
  v.alpha = {a.real(), a.imag(), b.real(), b.imag(), c.real(),
             c.imag(), d.real(), d.imag(), e.real(), e.imag()};
  return v;
}

ParamVec ParamVec::base_point(double r) {
  return from_complex(1.0, 0.0, Cx(0.0, -2.0 * r * r), 0.0, 0.0);
}

ComplexPoly ParamVec::numerator() const { return ComplexPoly({c(), b(), a()}); }
ComplexPoly ParamVec::denominator() const { return ComplexPoly({1.0, -d(), -e()}); }

bool ParamVec::admissible(double tol) const {
  if (std::abs(a()) <= tol) return false;
  return gcd_degree(numerator(), denominator(), tol) == 0;
}

CJet psi_eval(const ParamVec& alpha, Cx z) {
  CJet Nj = alpha.numerator().eval_jet(z);
  CJet Dj = alpha.denominator().eval_jet(z);
  if (std::abs(Dj.v) < 1e-300) throw PoleHit();
  return Nj / Dj;
}

KernelBasisEvaluator::KernelBasisEvaluator(const ParamVec& a, double r_)
    : alpha(a), r(r_), N(a.numerator()), D(a.denominator()) {
  for (int i = 0; i < 10; ++i) scale[i] = std::pow(r, kBeta[i]);
}

namespace {

// K for one direction, direct chart: K = (2 t V - 2 t^2 s Psi, 2 t^2 s),
// t = 1/(1+|Psi|^2), s = 2 Re(conj(Psi) V).
inline VJet assemble(const CJet& psi, const RJet& t, const RJet& t2, const CJet& V) {
  RJet s = 2.0 * real(conj(psi) * V);
  RJet t2s = t2 * s;
  CJet cpart = 2.0 * (t * V) - 2.0 * (t2s * psi);
  RJet hpart = 2.0 * t2s;
  return vjet_from(cpart, hpart);
}

inline VJet flip_chart(const VJet& k) {
  // S(psi) = sigma(S(1/psi)) with sigma(a1,a2,a3) = (a1,-a2,-a3)
  return {{k.v.x, -k.v.y, -k.v.z}, {k.dx.x, -k.dx.y, -k.dx.z}, {k.dy.x, -k.dy.y, -k.dy.z}};
}

} // namespace

void KernelBasisEvaluator::eval(Cx z, std::array<VJet, 10>& out) const {
  CJet Nj = N.eval_jet(z);
  CJet Dj = D.eval_jet(z);
  CJet zj(z, 1.0, Cx(0, 1));
  const Cx I(0, 1);
  if (std::abs(Nj.v) <= std::abs(Dj.v)) {
    CJet psi = Nj / Dj;
    RJet W = abs2(psi);
    RJet t = RJet{1.0, 0.0, 0.0} / (W + 1.0);
    RJet t2 = t * t;
    CJet invD = CJet{Cx(1.0)} / Dj;
    CJet Vodd[5];
    Vodd[0] = psi;                  // numerator scaling
    Vodd[1] = zj * invD;            // b
    Vodd[2] = invD;                 // c
    Vodd[3] = zj * psi * invD;      // d
    Vodd[4] = zj * zj * psi * invD; // e
    for (int k = 0; k < 5; ++k) {
      out[2 * k] = scale[2 * k] * assemble(psi, t, t2, Vodd[k]);
      out[2 * k + 1] = scale[2 * k + 1] * assemble(psi, t, t2, CJet{I} * Vodd[k]);
    }
  } else {
    // inverted chart: 1/Psi with direction derivatives -V/Psi^2
    CJet psi = Dj / Nj;
    RJet W = abs2(psi);
    RJet t = RJet{1.0, 0.0, 0.0} / (W + 1.0);
    RJet t2 = t * t;
    CJet invN = CJet{Cx(1.0)} / Nj;
    CJet Vodd[5];
    Vodd[0] = -psi;                       // -D/N
    Vodd[1] = -(zj * Dj * (invN * invN)); // -z D / N^2
    Vodd[2] = -(Dj * (invN * invN));      // -D / N^2
    Vodd[3] = -(zj * invN);               // -z / N
    Vodd[4] = -(zj * zj * invN);          // -z^2 / N
    for (int k = 0; k < 5; ++k) {
      out[2 * k] = scale[2 * k] * flip_chart(assemble(psi, t, t2, Vodd[k]));
      out[2 * k + 1] = scale[2 * k + 1] * flip_chart(assemble(psi, t, t2, CJet{I} * Vodd[k]));
    }
  }
}

VJet KernelBasisEvaluator::eval_one(Cx z, int i) const {
  std::array<VJet, 10> all;
  eval(z, all);
  return all[i - 1];
}

double KernelBasisEvaluator::weight(Cx z) const {
  CJet Nj = N.eval_jet(z);
  CJet Dj = D.eval_jet(z);
  Cx wr = Nj.dx * Dj.v - Nj.v * Dj.dx;
  double n2 = std::norm(Nj.v) + std::norm(Dj.v);
  double a = std::abs(wr);
  return 8.0 * (a / n2) * (a / n2);
}

KernelField::KernelField(const ParamVec& a, int i, double r) : basis(a, r), index(i) {
  if (i < 1 || i > 10) throw std::invalid_argument("kernel field index must be in 1..10");
}

VJet KernelField::eval(Cx z) const { return basis.eval_one(z, index); }

Mat inner_product_table(double r, Cx z) {
  Cx w = z * z - Cx(0.0, 2.0 * r * r);
  Cx zw = z * w, z2w = z * zw;
  const Cx I(0, 1);
  std::array<Cx, 10> V = {w,  I * w,  z / r,      I * z / r,      Cx(1.0),
                          I,  zw / r, I * zw / r, z2w / (r * r),  I * z2w / (r * r)};
  Mat m(10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) m(i, j) = (V[i] * std::conj(V[j])).real();
  return m;
}

namespace {

bool is_base_point(const ParamVec& alpha, double r) {
  ParamVec b = ParamVec::base_point(r);
  double scale = 1.0 + 2.0 * r * r;
  for (int k = 0; k < 10; ++k)
    if (std::abs(alpha.alpha[k] - b.alpha[k]) > 1e-13 * scale) return false;
  return true;
}

constexpr int kPairs = 55;

struct BaseGramIntegrand : MultiIntegrand {
  double r;
  explicit BaseGramIntegrand(double r_) : r(r_) {}
  int size() const override { return kPairs; }
  void eval(Cx z, double* out) const override {
    Cx w = z * z - Cx(0.0, 2.0 * r * r);
    double W = std::norm(w);
    if (W > 1e70) {
      for (int k = 0; k < kPairs; ++k) out[k] = 0.0;
      return;
    }
    double x = z.real(), y = z.imag();
    double n = 1.0 + W;
    double pref = 128.0 * (x * x + y * y) / (n * n * n * n);
    Cx zw = z * w, z2w = z * zw;
    const Cx I(0, 1);
    Cx V[10] = {w,  I * w,  z / r,      I * z / r,     Cx(1.0),
                I,  zw / r, I * zw / r, z2w / (r * r), I * z2w / (r * r)};
    int k = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = i; j < 10; ++j) out[k++] = pref * (V[i] * std::conj(V[j])).real();
  }
};

struct GeneralGramIntegrand : MultiIntegrand {
  const KernelBasisEvaluator& ev;
  explicit GeneralGramIntegrand(const KernelBasisEvaluator& e) : ev(e) {}
  int size() const override { return kPairs; }
  void eval(Cx z, double* out) const override {
    std::array<VJet, 10> K;
    ev.eval(z, K);
    double wgt = ev.weight(z);
    int k = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = i; j < 10; ++j) out[k++] = wgt * dot(K[i].v, K[j].v);
  }
};

struct GradGramIntegrand : MultiIntegrand {
  const KernelBasisEvaluator& ev;
  explicit GradGramIntegrand(const KernelBasisEvaluator& e) : ev(e) {}
  int size() const override { return kPairs; }
  void eval(Cx z, double* out) const override {
    std::array<VJet, 10> K;
    ev.eval(z, K);
    int k = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = i; j < 10; ++j)
        out[k++] = dot(K[i].dx, K[j].dx) + dot(K[i].dy, K[j].dy);
  }
};

GramMatrix assemble_gram(const QuadScheme& s, const MultiIntegrand& f, double r, int jobs) {
  std::vector<double> tols(kPairs, 1e-9);
  std::vector<IntegralResult> res = integrate_multi(s, f, tols, jobs);
  GramMatrix g;
  g.r = r;
  int k = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = i; j < 10; ++j) {
      // single quadrature per pair; the (i,j)/(j,i) average is a no-op
      g.entries(i, j) = res[k].value;
      g.entries(j, i) = res[k].value;
      g.err_est(i, j) = res[k].err_est;
      g.err_est(j, i) = res[k].err_est;
      g.converged = g.converged && res[k].converged;
      ++k;
    }
  }
  return g;
}

} // namespace

double GramMatrix::max_diag() const {
  double m = 0.0;
  for (int i = 0; i < 10; ++i) m = std::max(m, entries(i, i));
  return m;
}

GramMatrix gram_matrix(const ParamVec& alpha, double r, const QuadScheme& s, int jobs) {
  if (is_base_point(alpha, r)) {
    BaseGramIntegrand f(r);
    return assemble_gram(s, f, r, jobs);
  }
  KernelBasisEvaluator ev(alpha, r);
  GeneralGramIntegrand f(ev);
  return assemble_gram(s, f, r, jobs);
}

GramMatrix gram_via_gradients(const ParamVec& alpha, double r, const QuadScheme& s, int jobs) {
  KernelBasisEvaluator ev(alpha, r);
  GradGramIntegrand f(ev);
  return assemble_gram(s, f, r, jobs);
}

ParamVec apply_step(const ParamVec& alpha, const std::array<double, 10>& delta, double r) {
  Cx a = alpha.a(), b = alpha.b(), c = alpha.c(), d = alpha.d(), e = alpha.e();
  Cx s1(delta[0], delta[1]); // numerator scaling, beta = 0
  a += s1 * a;
  Cx b2 = b + s1 * b + Cx(delta[2], delta[3]) / r;
  Cx c2 = c + s1 * c + Cx(delta[4], delta[5]);
  d += Cx(delta[6], delta[7]) / r;
  e += Cx(delta[8], delta[9]) / (r * r);
  return ParamVec::from_complex(a, b2, c2, d, e);
}

std::array<double, 10> scaled_coords(const ParamVec& alpha1, const ParamVec& alpha0, double r) {
  // columns of T are the direction vectors t_i(alpha0) * r^{beta_i}
  Mat T(10);
  Cx a = alpha0.a(), b = alpha0.b(), c = alpha0.c();
  auto setcol = [&](int col, std::array<double, 10> v) {
    for (int i = 0; i < 10; ++i) T(i, col) = v[i];
  };
  setcol(0, {a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(), 0, 0, 0, 0});
  setcol(1, {-a.imag(), a.real(), -b.imag(), b.real(), -c.imag(), c.real(), 0, 0, 0, 0});
  double ir = 1.0 / r, ir2 = 1.0 / (r * r);
  setcol(2, {0, 0, ir, 0, 0, 0, 0, 0, 0, 0});
  setcol(3, {0, 0, 0, ir, 0, 0, 0, 0, 0, 0});
  setcol(4, {0, 0, 0, 0, 1, 0, 0, 0, 0, 0});
  setcol(5, {0, 0, 0, 0, 0, 1, 0, 0, 0, 0});
  setcol(6, {0, 0, 0, 0, 0, 0, ir, 0, 0, 0});
  setcol(7, {0, 0, 0, 0, 0, 0, 0, ir, 0, 0});
  setcol(8, {0, 0, 0, 0, 0, 0, 0, 0, ir2, 0});
  setcol(9, {0, 0, 0, 0, 0, 0, 0, 0, 0, ir2});
  std::vector<double> rhs(10);
  for (int i = 0; i < 10; ++i) rhs[i] = alpha1.alpha[i] - alpha0.alpha[i];
  std::vector<double> sol = solve_lu(T, rhs);
  std::array<double, 10> out;
  for (int i = 0; i < 10; ++i) out[i] = sol[i];
  return out;
}

} // namespace hm
