#include "hm/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace hm {

HomogPoly3::HomogPoly3(std::vector<Mono> m) : monos(std::move(m)) {
  // merge duplicates, drop zeros
  std::sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  std::vector<Mono> out;
  for (const Mono& m2 : monos) {
    if (!out.empty() && out.back().i == m2.i && out.back().j == m2.j && out.back().k == m2.k)
      out.back().coeff += m2.coeff;
    else
      out.push_back(m2);
  }
  monos.clear();
  for (const Mono& m2 : out)
    if (m2.coeff != 0.0) monos.push_back(m2);
  int deg = -1;
  for (const Mono& m2 : monos) {
    int d = m2.i + m2.j + m2.k;
    if (deg < 0) deg = d;
    if (d != deg) throw std::invalid_argument("HomogPoly3: mixed total degrees");
  }
}

int HomogPoly3::degree() const {
  if (monos.empty()) return -1;
  return monos[0].i + monos[0].j + monos[0].k;
}

double HomogPoly3::eval(double x, double y, double r) const {
  double acc = 0.0;
  for (const Mono& m : monos)
    acc += m.coeff * std::pow(x, m.i) * std::pow(y, m.j) * std::pow(r, m.k);
  return acc;
}

HomogPoly3 HomogPoly3::dx() const {
  std::vector<Mono> out;
  for (const Mono& m : monos)
    if (m.i > 0) out.push_back({m.i - 1, m.j, m.k, m.coeff * m.i});
  return HomogPoly3(out);
}

HomogPoly3 HomogPoly3::dy() const {
  std::vector<Mono> out;
  for (const Mono& m : monos)
    if (m.j > 0) out.push_back({m.i, m.j - 1, m.k, m.coeff * m.j});
  return HomogPoly3(out);
}

HomogPoly3 HomogPoly3::laplacian() const { return dx().dx() + dy().dy(); }

HomogPoly3 HomogPoly3::operator+(const HomogPoly3& o) const {
  std::vector<Mono> out = monos;
  out.insert(out.end(), o.monos.begin(), o.monos.end());
  return HomogPoly3(out);
}

HomogPoly3 HomogPoly3::operator*(const HomogPoly3& o) const {
  std::vector<Mono> out;
  for (const Mono& a : monos)
    for (const Mono& b : o.monos) out.push_back({a.i + b.i, a.j + b.j, a.k + b.k, a.coeff * b.coeff});
  return HomogPoly3(out);
}

HomogPoly3 HomogPoly3::operator*(double s) const {
  std::vector<Mono> out = monos;
  for (Mono& m : out) m.coeff *= s;
  return HomogPoly3(out);
}

HomogPoly3 HomogPoly3::X() { return HomogPoly3({{1, 0, 0, 1.0}}); }
HomogPoly3 HomogPoly3::Y() { return HomogPoly3({{0, 1, 0, 1.0}}); }
HomogPoly3 HomogPoly3::R() { return HomogPoly3({{0, 0, 1, 1.0}}); }
HomogPoly3 HomogPoly3::constant(double c) { return HomogPoly3({{0, 0, 0, c}}); }

namespace {

struct PointData {
  double pP, pM;       // p at (1,1,1), (-1,-1,1)
  double lapP, lapM;   // laplacian
  double pxP, pxM, pyP, pyM;
};

PointData corner_data(const HomogPoly3& p) {
  HomogPoly3 lap = p.laplacian(), px = p.dx(), py = p.dy();
  return {p.eval(1, 1, 1),   p.eval(-1, -1, 1), lap.eval(1, 1, 1), lap.eval(-1, -1, 1),
          px.eval(1, 1, 1),  px.eval(-1, -1, 1), py.eval(1, 1, 1), py.eval(-1, -1, 1)};
}

} // namespace

AsymptoticPrediction expand_plain(const HomogPoly3& p, int l, double r) {
  int k = std::max(0, p.degree());
  if (!(l >= 3 && l > k / 4.0 + 0.5))
    throw HypothesisViolated("expand_plain needs l >= 3 and l > k/4 + 1/2");
  PointData d = corner_data(p);
  AsymptoticPrediction out;
  out.leading = M_PI / (8.0 * (l - 1)) * (d.pP + d.pM) * std::pow(r, k - 2);
  double c1 = M_PI * (d.lapP + d.lapM) / (256.0 * (l - 1) * (l - 2));
  double c2 = M_PI * (-d.pxP - d.pyP + d.pxM + d.pyM + d.pP + d.pM) / (128.0 * (l - 1) * (l - 2));
  out.correction = (c1 + c2) * std::pow(r, k - 6);
  out.remainder_exponent = k - 8;
  return out;
}

AsymptoticPrediction expand_weighted(const HomogPoly3& p, int l, double r) {
  int k = std::max(0, p.degree());
  if (!(l >= 4 && l > k / 4.0 + 1.5))
    throw HypothesisViolated("expand_weighted needs l >= 4 and l > k/4 + 3/2");
  PointData d = corner_data(p);
  AsymptoticPrediction out;
  out.leading = M_PI / (8.0 * (l - 1) * (l - 2)) * (d.pP + d.pM) * std::pow(r, k - 2);
  double c1 = M_PI * (d.lapP + d.lapM) / (128.0 * (l - 1) * (l - 2) * (l - 3));
  double c2 = M_PI * (-d.pxP - d.pyP + d.pxM + d.pyM + d.pP + d.pM) /
              (64.0 * (l - 1) * (l - 2) * (l - 3));
  out.correction = (c1 + c2) * std::pow(r, k - 6);
  out.remainder_exponent = k - 8;
  return out;
}

AsymptoticPrediction expand_centered_zero(const HomogPoly3& p, int l, double r) {
  int k = std::max(0, p.degree());
  if (!(l >= 3 && l > k / 4.0 + 0.5))
    throw HypothesisViolated("expand_centered_zero needs l >= 3 and l > k/4 + 1/2");
  PointData d = corner_data(p);
  if (d.pP != 0.0 || d.pM != 0.0)
    throw HypothesisViolated("expand_centered_zero needs p(1,1,1) = p(-1,-1,1) = 0");
  AsymptoticPrediction out;
  out.leading = 0.0;
  out.correction = M_PI *
                   (d.lapP + d.lapM - 2.0 * d.pxP - 2.0 * d.pyP + 2.0 * d.pxM + 2.0 * d.pyM) /
                   (256.0 * (l - 1) * (l - 2)) * std::pow(r, k - 6);
  out.remainder_exponent = k - 8.5;
  return out;
}

PredictedBlocks predicted_blocks(double r) {
  if (r < 2.0) throw std::invalid_argument("predicted_blocks: r >= 2 required");
  PredictedBlocks b;
  const double u = 16.0 * M_PI / 3.0;
  double r2 = 1.0 / (r * r), r4 = r2 * r2;
  double l1 = 8.0 + 0.25 * r4, l2 = 4.0 + 0.5 * r4, l3 = 8.0 + 4.0 * r4;
  auto fill3 = [&](Mat& A, double sgn) {
    A(0, 0) = 2.0 * u;
    A(0, 1) = A(1, 0) = sgn * 4.0 * u;
    A(1, 1) = l3 * u;
    A(2, 2) = 4.0 * u;
    A(0, 2) = A(2, 0) = A(1, 2) = A(2, 1) = 0.0;
  };
  fill3(b.A1, -1.0); // {1, 10, 6}
  fill3(b.A2, +1.0); // {2, 9, 5}
  auto fill2 = [&](Mat& A, double sgn) {
    A(0, 0) = l1 * u;
    A(1, 1) = l2 * u;
    A(0, 1) = A(1, 0) = sgn * r2 * u;
  };
  fill2(b.A3, -1.0); // {3, 8}
  fill2(b.A4, +1.0); // {4, 7}

  auto put = [&](int i, int j, double v) {
    b.full(i - 1, j - 1) = v;
    b.full(j - 1, i - 1) = v;
  };
  put(1, 1, 2 * u);
  put(1, 10, -4 * u);
  put(10, 10, l3 * u);
  put(6, 6, 4 * u);
  put(2, 2, 2 * u);
  put(2, 9, 4 * u);
  put(9, 9, l3 * u);
  put(5, 5, 4 * u);
  put(3, 3, l1 * u);
  put(3, 8, -r2 * u);
  put(8, 8, l2 * u);
  put(4, 4, l1 * u);
  put(4, 7, r2 * u);
  put(7, 7, l2 * u);

  b.det_prediction = std::pow(2.0, 60) * std::pow(M_PI, 10) / std::pow(3.0, 10) * std::pow(r, -8.0);
  return b;
}

double GramEntryOracle::prediction(double r) const {
  AsymptoticPrediction a = centered ? expand_centered_zero(p, 4, r)
                                    : (weighted ? expand_weighted(p, 4, r) : expand_plain(p, 4, r));
  return a.total() * std::pow(r, -mexp);
}

double GramEntryOracle::band_exponent() const {
  int k = std::max(0, p.degree());
  double rem = centered ? (k - 8.5) : (k - 8.0);
  // full-prediction entries carry O(r^{-6}) remainders after the r^{-m} scaling;
  // centered entries carry O(r^{-9/2}).
  return rem - mexp;
}

const std::vector<GramEntryOracle>& gram_entry_oracles() {
  using P = HomogPoly3;
  static const std::vector<GramEntryOracle> catalog = [] {
    P x = P::X(), y = P::Y(), r = P::R();
    P x2y2 = x * x + y * y;
    P xy = x * y, r2 = r * r;
    P minus = P::constant(-1.0);
    std::vector<GramEntryOracle> v;
    // weighted entries
    v.push_back({1, 1, x2y2 * 128.0, 0, true, false});
    v.push_back({2, 2, x2y2 * 128.0, 0, true, false});
    v.push_back({1, 10, xy * x2y2 * (-256.0), 2, true, false});
    v.push_back({2, 9, xy * x2y2 * 256.0, 2, true, false});
    v.push_back({7, 7, x2y2 * x2y2 * 128.0, 2, true, false});
    v.push_back({8, 8, x2y2 * x2y2 * 128.0, 2, true, false});
    v.push_back({9, 9, x2y2 * x2y2 * x2y2 * 128.0, 4, true, false});
    v.push_back({10, 10, x2y2 * x2y2 * x2y2 * 128.0, 4, true, false});
    // plain entries
    v.push_back({3, 3, x2y2 * x2y2 * 128.0, 2, false, false});
    v.push_back({4, 4, x2y2 * x2y2 * 128.0, 2, false, false});
    v.push_back({5, 5, x2y2 * 128.0, 0, false, false});
    v.push_back({6, 6, x2y2 * 128.0, 0, false, false});
    // centered (vanishing corner values): O(r^{-9/2}) class and the
    // r^{-2}-leading couplings
    P rxy = r2 + xy * (-1.0); // r^2 - xy
    v.push_back({1, 6, x2y2 * (xy + r2 * (-1.0)) * 256.0, 0, false, true});
    v.push_back({2, 5, x2y2 * rxy * 256.0, 0, false, true});
    v.push_back({3, 8, x2y2 * x2y2 * rxy * 256.0, 2, false, true});
    v.push_back({4, 7, x2y2 * x2y2 * rxy * (-256.0), 2, false, true});
    P quart = x * x * x * x + xy * r2 * 4.0 + x * x * y * y * (-6.0) + y * y * y * y;
    v.push_back({5, 9, x2y2 * quart * 128.0, 2, false, true});
    v.push_back({6, 10, x2y2 * quart * 128.0, 2, false, true});
    (void)minus;
    return v;
  }();
  return catalog;
}

const std::vector<std::pair<int, int>>& gram_zero_pairs() {
  static const std::vector<std::pair<int, int>> zeros = {
      {1, 2}, {1, 3}, {1, 4},  {1, 5}, {1, 7}, {1, 8}, {1, 9},  {2, 3},  {2, 4},  {2, 6},
      {2, 7}, {2, 8}, {2, 10}, {3, 4}, {3, 5}, {3, 6}, {3, 7},  {3, 9},  {3, 10}, {4, 5},
      {4, 6}, {4, 8}, {4, 9},  {4, 10}, {5, 6}, {5, 7}, {5, 8}, {5, 10}, {6, 7},  {6, 8},
      {6, 9}, {7, 8}, {7, 9},  {7, 10}, {8, 9}, {8, 10}, {9, 10}};
  return zeros;
}

} // namespace hm
