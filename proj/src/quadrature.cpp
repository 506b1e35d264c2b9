#include "hm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace hm {

namespace {

// Gauss-Legendre abscissae/weights on [-1,1], positive half; mirrored on use.
constexpr double GX8[4] = {0.18343464249564980, 0.52553240991632899, 0.79666647741362674,
                           0.96028985649753623};
constexpr double GW8[4] = {0.36268378337836198, 0.31370664587788729, 0.22238103445337447,
                           0.10122853629037626};
constexpr double GX16[8] = {0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
                            0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
                            0.94457502307323258, 0.98940093499164993};
constexpr double GW16[8] = {0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
                            0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
                            0.06225352393864789, 0.02715245941175409};

void gauss_rule(int order, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  const double* gx = order == 8 ? GX8 : GX16;
  const double* gw = order == 8 ? GW8 : GW16;
  int h = order / 2;
  for (int i = h - 1; i >= 0; --i) {
    x.push_back(-gx[i]);
    w.push_back(gw[i]);
  }
  for (int i = 0; i < h; ++i) {
    x.push_back(gx[i]);
    w.push_back(gw[i]);
  }
}

constexpr double kQuarterPi = 0.78539816339744831;

} // namespace

void cell_nodes(const Cell& c, int order, std::vector<QuadNode>& out) {
  std::vector<double> gx, gw;
  gauss_rule(order, gx, gw);
  out.clear();
  out.reserve(gx.size() * gx.size());
  const double amid = 0.5 * (c.a0 + c.a1), ahalf = 0.5 * (c.a1 - c.a0);
  const double tmid = 0.5 * (c.t0 + c.t1), thalf = 0.5 * (c.t1 - c.t0);
  const double la0 = (c.chart == Chart::PolarLog) ? std::log(c.a0) : 0.0;
  const double la1 = (c.chart == Chart::PolarLog) ? std::log(c.a1) : 0.0;
  const double lmid = 0.5 * (la0 + la1), lhalf = 0.5 * (la1 - la0);

  auto emit = [&](double dx, double dy, double w) {
    switch (c.sym) {
      case Sym::Id: out.push_back({c.cx + dx, c.cy + dy, w}); break;
      case Sym::Diag: out.push_back({c.cy + dy, c.cx + dx, w}); break;
      case Sym::Cent: out.push_back({-c.cx - dx, -c.cy - dy, w}); break;
      case Sym::DiagCent: out.push_back({-c.cy - dy, -c.cx - dx, w}); break;
    }
  };

  for (size_t i = 0; i < gx.size(); ++i) {
    for (size_t j = 0; j < gx.size(); ++j) {
      switch (c.chart) {
        case Chart::PolarLin: {
          double rho = amid + ahalf * gx[i];
          double th = tmid + thalf * gx[j];
          emit(rho * std::cos(th), rho * std::sin(th), gw[i] * gw[j] * ahalf * thalf * rho);
          break;
        }
        case Chart::PolarLog: {
          double rho = std::exp(lmid + lhalf * gx[i]);
          double th = tmid + thalf * gx[j];
          emit(rho * std::cos(th), rho * std::sin(th), gw[i] * gw[j] * lhalf * thalf * rho * rho);
          break;
        }
        case Chart::Collar: {
          double s = amid + ahalf * gx[i];
          double th = tmid + thalf * gx[j];
          double h = c.p0 * std::cos(th - kQuarterPi);
          double rho = h + s * (c.p1 - h);
          emit(rho * std::cos(th), rho * std::sin(th),
               gw[i] * gw[j] * ahalf * thalf * (c.p1 - h) * rho);
          break;
        }
        case Chart::ExtPolar: {
          double rw = amid + ahalf * gx[i];
          double ph = tmid + thalf * gx[j];
          double R = 1.0 / rw;
          emit(R * std::cos(ph), R * std::sin(ph),
               gw[i] * gw[j] * ahalf * thalf / (rw * rw * rw));
          break;
        }
        case Chart::CartRect: {
          double x = amid + ahalf * gx[i];
          double y = tmid + thalf * gx[j];
          emit(x - c.cx, y - c.cy, gw[i] * gw[j] * ahalf * thalf);
          break;
        }
      }
    }
  }
}

namespace {

// Approximate extents in the z plane, for split-direction choices.
double radial_extent(const Cell& c) {
  switch (c.chart) {
    case Chart::PolarLin:
    case Chart::PolarLog: return c.a1 - c.a0;
    case Chart::Collar: return (c.a1 - c.a0) * (c.p1 - 0.5 * c.p0);
    case Chart::ExtPolar: return (c.a1 - c.a0); // compare in the w plane
    case Chart::CartRect: return c.a1 - c.a0;
  }
  return 0.0;
}

double angular_extent(const Cell& c) {
  switch (c.chart) {
    case Chart::PolarLin:
    case Chart::PolarLog: return c.a1 * (c.t1 - c.t0);
    case Chart::Collar: return c.p1 * (c.t1 - c.t0);
    case Chart::ExtPolar: return 0.5 * (c.a0 + c.a1) * (c.t1 - c.t0);
    case Chart::CartRect: return c.t1 - c.t0;
  }
  return 0.0;
}

std::pair<Cell, Cell> split_cell(const Cell& c) {
  Cell a = c, b = c;
  a.depth = b.depth = c.depth + 1;
  bool radial = radial_extent(c) >= angular_extent(c);
  if (radial) {
    double mid;
    if (c.chart == Chart::PolarLog)
      mid = std::sqrt(c.a0 * c.a1);
    else
      mid = 0.5 * (c.a0 + c.a1);
    a.a1 = mid;
    b.a0 = mid;
  } else {
    double mid = 0.5 * (c.t0 + c.t1);
    a.t1 = mid;
    b.t0 = mid;
  }
  return {a, b};
}

double pairwise_sum(const double* v, size_t n, size_t stride) {
  if (n == 1) return v[0];
  size_t h = n / 2;
  return pairwise_sum(v, h, stride) + pairwise_sum(v + h * stride, n - h, stride);
}

struct CellEval {
  std::vector<double> hi, lo;   // M entries each
  std::vector<double> absmass;  // sum |w f| on the high rule (roundoff floor)
  bool nonfinite = false;
  Cx bad{};
  std::exception_ptr thrown; // field evaluators may throw; rethrown in order
};

void eval_cell(const Cell& c, const MultiIntegrand& f, int order, CellEval& out,
               std::vector<QuadNode>& scratch, std::vector<double>& buf) {
  const int M = f.size();
  cell_nodes(c, order, scratch);
  std::vector<double>& acc = order == 16 ? out.hi : out.lo;
  acc.assign(M, 0.0);
  if (order == 16) out.absmass.assign(M, 0.0);
  std::vector<double> comp(M, 0.0); // Kahan compensation
  for (const QuadNode& nd : scratch) {
    Cx z(nd.x, nd.y);
    f.eval(z, buf.data());
    for (int k = 0; k < M; ++k) {
      double term = nd.w * buf[k];
      if (!std::isfinite(term)) {
        out.nonfinite = true;
        out.bad = z;
        return;
      }
      if (order == 16) out.absmass[k] += std::abs(term);
      double y = term - comp[k];
      double t = acc[k] + y;
      comp[k] = (t - acc[k]) - y;
      acc[k] = t;
    }
  }
}

} // namespace

std::vector<IntegralResult> integrate_multi(const QuadScheme& s, const MultiIntegrand& f,
                                            const std::vector<double>& abs_tols, int jobs) {
  const int M = f.size();
  std::vector<Cell> cells = s.cells;
  std::vector<CellEval> data(cells.size());
  int nthreads = jobs > 0 ? jobs : omp_get_max_threads();

  auto eval_one_cell = [&](size_t i, std::vector<QuadNode>& scratch, std::vector<double>& buf) {
    try {
      eval_cell(cells[i], f, 16, data[i], scratch, buf);
      if (!data[i].nonfinite) eval_cell(cells[i], f, 8, data[i], scratch, buf);
    } catch (...) {
      data[i].thrown = std::current_exception();
    }
  };
  auto eval_range = [&](const std::vector<size_t>& idx) {
    if (jobs == 1) {
      // serial reference path
      std::vector<QuadNode> scratch;
      std::vector<double> buf(M);
      for (size_t ii = 0; ii < idx.size(); ++ii) eval_one_cell(idx[ii], scratch, buf);
    } else {
#pragma omp parallel num_threads(nthreads)
      {
        std::vector<QuadNode> scratch;
        std::vector<double> buf(M);
#pragma omp for schedule(dynamic, 1)
        for (long ii = 0; ii < (long)idx.size(); ++ii) eval_one_cell(idx[ii], scratch, buf);
      }
    }
    for (size_t i : idx) {
      if (data[i].thrown) std::rethrow_exception(data[i].thrown);
      if (data[i].nonfinite) throw NonFiniteSample(data[i].bad);
    }
  };

  std::vector<size_t> all(cells.size());
  std::iota(all.begin(), all.end(), 0);
  eval_range(all);

  std::vector<double> value(M), err(M), tol(M);
  auto totals = [&]() {
    std::vector<double> col(cells.size());
    for (int k = 0; k < M; ++k) {
      for (size_t i = 0; i < cells.size(); ++i) col[i] = data[i].hi[k];
      value[k] = cells.empty() ? 0.0 : pairwise_sum(col.data(), col.size(), 1);
      double e = 0.0, mass = 0.0;
      for (size_t i = 0; i < cells.size(); ++i) {
        e += std::abs(data[i].hi[k] - data[i].lo[k]);
        mass += data[i].absmass[k];
      }
      err[k] = e;
      double at = k < (int)abs_tols.size() ? abs_tols[k] : 0.0;
      // the 5e-16 * mass term is the roundoff floor of the accumulation;
      // tolerances below it are unreachable in double precision
      tol[k] = std::max({s.target_abs_tol, at, s.target_rel_tol * std::abs(value[k]),
                         5e-16 * mass});
      if (tol[k] == 0.0) tol[k] = 1e-14;
    }
  };

  bool converged = false;
  const int max_waves = 200;
  double best_err = 1e300;
  int stalls = 0;
  for (int wave = 0; wave < max_waves; ++wave) {
    totals();
    bool ok = true;
    double werr = 0.0;
    for (int k = 0; k < M; ++k) {
      ok = ok && err[k] <= tol[k];
      werr = std::max(werr, err[k] / tol[k]);
    }
    if (ok) {
      converged = true;
      break;
    }
    // refinement that no longer reduces the error is rounding-limited
    if (werr >= 0.99 * best_err) {
      if (++stalls >= 5) break;
    } else {
      stalls = 0;
    }
    best_err = std::min(best_err, werr);
    if (cells.size() >= s.max_cells) break;

    // score refinement groups by their worst normalized error contribution
    std::vector<double> gscore;
    std::vector<std::vector<size_t>> gmembers;
    {
      std::vector<int> gid_of;
      std::vector<int> remap; // group id -> slot
      for (size_t i = 0; i < cells.size(); ++i) {
        int g = cells[i].group;
        size_t slot;
        if (g < 0) {
          slot = gmembers.size();
          gmembers.emplace_back();
          gscore.push_back(0.0);
        } else {
          if ((size_t)g >= remap.size()) remap.resize(g + 1, -1);
          if (remap[g] < 0) {
            remap[g] = (int)gmembers.size();
            gmembers.emplace_back();
            gscore.push_back(0.0);
          }
          slot = remap[g];
        }
        gmembers[slot].push_back(i);
      }
      for (size_t gI = 0; gI < gmembers.size(); ++gI) {
        double sc = 0.0;
        bool at_floor = true;
        for (size_t i : gmembers[gI]) {
          if (cells[i].depth >= s.max_refinement_depth) { sc = -1.0; break; }
          for (int k = 0; k < M; ++k) {
            double e = std::abs(data[i].hi[k] - data[i].lo[k]);
            sc = std::max(sc, e / tol[k]);
            // a nested-rule difference at the rounding level of the cell's
            // own mass cannot be reduced by splitting
            if (e > 100.0 * 2.3e-16 * data[i].absmass[k] + 1e-305) at_floor = false;
          }
        }
        gscore[gI] = at_floor ? -1.0 : sc;
      }
    }
    std::vector<size_t> order(gmembers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return gscore[a] > gscore[b]; });
    size_t take = std::max<size_t>(1, gmembers.size() / 6);
    std::vector<size_t> to_split; // cell indices
    double floor_score = 1.0 / (8.0 * std::max<size_t>(1, gmembers.size()));
    for (size_t oi = 0; oi < order.size() && to_split.size() / 2 < take; ++oi) {
      size_t g = order[oi];
      if (gscore[g] <= floor_score) break;
      for (size_t i : gmembers[g]) to_split.push_back(i);
    }
    if (to_split.empty()) break; // nothing splittable
    std::sort(to_split.begin(), to_split.end());

    static_assert(sizeof(size_t) >= 8, "");
    int next_group = 0;
    for (const Cell& c : cells) next_group = std::max(next_group, c.group + 1);
    // split: child A replaces parent in place, child B appended (paired by group)
    std::vector<size_t> fresh;
    size_t nb = cells.size();
    std::vector<std::pair<size_t, int>> pending; // (parent idx, new group base)
    // group-coherent new ids: members of one old group get the same two new ids
    std::vector<int> newidA(to_split.size()), newidB(to_split.size());
    {
      std::vector<std::pair<int, int>> assigned; // old group -> (idA, idB)
      for (size_t t = 0; t < to_split.size(); ++t) {
        int og = cells[to_split[t]].group;
        int ia = -1, ib = -1;
        if (og >= 0) {
          for (auto& pr : assigned)
            if (pr.first == og) { ia = pr.second; ib = pr.second + 1; }
          if (ia < 0) {
            ia = next_group;
            ib = next_group + 1;
            next_group += 2;
            assigned.push_back({og, ia});
          }
        } else {
          ia = -1;
          ib = -1;
        }
        newidA[t] = ia;
        newidB[t] = ib;
      }
    }
    for (size_t t = 0; t < to_split.size(); ++t) {
      size_t i = to_split[t];
      auto [ca, cb] = split_cell(cells[i]);
      ca.group = newidA[t];
      cb.group = newidB[t];
      cells[i] = ca;
      cells.push_back(cb);
      fresh.push_back(i);
      fresh.push_back(nb++);
    }
    data.resize(cells.size());
    eval_range(fresh);
  }

  totals();
  std::vector<IntegralResult> res(M);
  for (int k = 0; k < M; ++k) {
    double mass = 0.0;
    for (size_t i = 0; i < cells.size(); ++i) mass += data[i].absmass[k];
    bool ok = converged || err[k] <= std::max(tol[k], 100.0 * 2.3e-16 * mass);
    res[k] = {value[k], err[k], ok, (long)cells.size()};
  }
  return res;
}

namespace {

struct ScalarWrap : MultiIntegrand {
  const std::function<double(Cx)>& f;
  explicit ScalarWrap(const std::function<double(Cx)>& fn) : f(fn) {}
  int size() const override { return 1; }
  void eval(Cx z, double* out) const override { out[0] = f(z); }
};

} // namespace

IntegralResult integrate(const QuadScheme& s, const std::function<double(Cx)>& f, int jobs,
                         double abs_tol) {
  ScalarWrap w(f);
  return integrate_multi(s, w, {abs_tol}, jobs)[0];
}

// ---------------------------------------------------------------------------
// Scheme builders

namespace {

void push_group4(QuadScheme& s, Cell c, int& group) {
  c.group = group++;
  for (Sym sym : {Sym::Id, Sym::Diag, Sym::Cent, Sym::DiagCent}) {
    Cell m = c;
    m.sym = sym;
    s.cells.push_back(m);
  }
}

void push_log_ring(QuadScheme& s, double cx, double cy, double r0, double r1, double ratio,
                   const std::vector<std::pair<double, double>>& theta_panels, int& group,
                   bool symmetric) {
  if (r1 <= r0 * (1.0 + 1e-12)) return; // degenerate ring (e.g. r = 1)
  int n = std::max(1, (int)std::ceil(std::log(r1 / r0) / std::log(ratio)));
  for (int k = 0; k < n; ++k) {
    double a = r0 * std::pow(r1 / r0, double(k) / n);
    double b = (k == n - 1) ? r1 : r0 * std::pow(r1 / r0, double(k + 1) / n);
    for (auto [t0, t1] : theta_panels) {
      Cell c;
      c.chart = Chart::PolarLog;
      c.cx = cx;
      c.cy = cy;
      c.a0 = a;
      c.a1 = b;
      c.t0 = t0;
      c.t1 = t1;
      if (symmetric)
        push_group4(s, c, group);
      else {
        c.group = group++;
        s.cells.push_back(c);
      }
    }
  }
}

} // namespace

QuadScheme default_scheme(double r) {
  if (r < 1.0) throw std::invalid_argument("default_scheme: r >= 1 required");
  QuadScheme s;
  s.kind = "bubble";
  s.r = r;
  int group = 0;
  const double sq2 = std::sqrt(2.0);
  const double rho0 = 1e-4 / r;
  const double sqr = std::sqrt(r);

  // bubble disks about +-(r, r); canonical theta range [pi/4, 5pi/4] in 4 panels
  std::vector<std::pair<double, double>> th;
  for (int k = 0; k < 4; ++k)
    th.push_back({kQuarterPi + k * kQuarterPi, kQuarterPi + (k + 1) * kQuarterPi});
  // innermost disk
  for (auto [t0, t1] : th) {
    Cell c;
    c.chart = Chart::PolarLin;
    c.cx = r;
    c.cy = r;
    c.a0 = 0.0;
    c.a1 = rho0;
    c.t0 = t0;
    c.t1 = t1;
    push_group4(s, c, group);
  }
  // log-graded annuli: core, cutoff band (kinks at sqrt(r) and r), rim
  push_log_ring(s, r, r, rho0, sqr, 2.5, th, group, true);
  push_log_ring(s, r, r, sqr, r, 2.2, th, group, true);
  push_log_ring(s, r, r, r, sq2 * r, 1.5, th, group, true);

  // collar between the kissing circles and |z| = 3r
  const double hcoef = 2.0 * sq2 * r, rout = 3.0 * r;
  const double sbk[4] = {0.0, 0.2, 0.55, 1.0};
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 2; ++j) {
      Cell c;
      c.chart = Chart::Collar;
      c.a0 = sbk[k];
      c.a1 = sbk[k + 1];
      c.t0 = kQuarterPi + j * kQuarterPi;
      c.t1 = kQuarterPi + (j + 1) * kQuarterPi;
      c.p0 = hcoef;
      c.p1 = rout;
      push_group4(s, c, group);
    }
  }

  // inverted exterior |z| > 3r
  const double wmax = 1.0 / rout;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 2; ++j) {
      Cell c;
      c.chart = Chart::ExtPolar;
      c.a0 = wmax * k / 3.0;
      c.a1 = wmax * (k + 1) / 3.0;
      c.t0 = kQuarterPi + j * kQuarterPi;
      c.t1 = kQuarterPi + (j + 1) * kQuarterPi;
      push_group4(s, c, group);
    }
  }
  return s;
}

std::vector<Cx> poly_roots(const ComplexPoly& p) {
  int n = p.degree();
  if (n <= 0) return {};
  std::vector<Cx> c = p.coeffs;
  Cx lead = c.back();
  for (Cx& x : c) x /= lead;
  if (n == 1) return {-c[0]};
  double R = 1.0;
  for (int k = 0; k < n; ++k) R = std::max(R, std::abs(c[k]));
  R = 1.0 + R;
  std::vector<Cx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = R * std::exp(Cx(0, 2.0 * M_PI * k / n + 0.4));
  auto eval = [&](Cx x) {
    Cx acc = 1.0;
    for (int k = n - 1; k >= 0; --k) acc = acc * x + c[k];
    return acc;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      Cx denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      Cx step = eval(z[i]) / denom;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14 * R) break;
  }
  return z;
}

QuadScheme scheme_for_map(const RationalMap& m) {
  std::vector<Cx> centers;
  for (Cx z : poly_roots(m.p)) centers.push_back(z);
  for (Cx z : poly_roots(m.q)) centers.push_back(z);
  if (centers.empty()) centers.push_back(0.0);
  // anti-holomorphic maps evaluate at conj(z): features sit at conjugate roots
  if (m.orientation == Orientation::AntiHolomorphic)
    for (Cx& c : centers) c = std::conj(c);

  // local concentration scale at each center
  std::vector<double> sigma(centers.size());
  for (size_t k = 0; k < centers.size(); ++k) {
    Cx a = centers[k];
    double pv = std::abs(m.p.eval(a)), qv = std::abs(m.q.eval(a));
    double pd = std::abs(m.p.derivative().eval(a)), qd = std::abs(m.q.derivative().eval(a));
    double sc;
    if (pv <= qv) { // root of p
      sc = pd > 1e-12 ? qv / pd : std::sqrt(std::max(qv, 1e-12));
    } else {
      sc = qd > 1e-12 ? pv / qd : std::sqrt(std::max(pv, 1e-12));
    }
    double base = 1.0 + std::abs(a);
    sigma[k] = std::clamp(sc, 1e-6 * base, 0.5 * base);
  }

  double cmax = 0.0, smin = 1e300;
  for (size_t k = 0; k < centers.size(); ++k) {
    cmax = std::max(cmax, std::abs(centers[k]));
    smin = std::min(smin, sigma[k]);
  }
  double rout = 3.0 * std::max(1.0, 2.0 * cmax);
  double rho_min = 0.25 * std::min(1.0, smin);

  QuadScheme s;
  s.kind = "general";
  s.max_refinement_depth = 26;
  int group = 0;
  std::vector<std::pair<double, double>> th;
  for (int k = 0; k < 8; ++k)
    th.push_back({2.0 * M_PI * k / 8.0, 2.0 * M_PI * (k + 1) / 8.0});
  for (auto [t0, t1] : th) {
    Cell c;
    c.chart = Chart::PolarLin;
    c.a0 = 0.0;
    c.a1 = rho_min;
    c.t0 = t0;
    c.t1 = t1;
    c.group = group++;
    s.cells.push_back(c);
  }
  push_log_ring(s, 0.0, 0.0, rho_min, rout, 2.0, th, group, false);
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 4; ++j) {
      Cell c;
      c.chart = Chart::ExtPolar;
      c.a0 = 0.5 * k / rout;
      c.a1 = 0.5 * (k + 1) / rout;
      c.t0 = 2.0 * M_PI * j / 4.0;
      c.t1 = 2.0 * M_PI * (j + 1) / 4.0;
      c.group = group++;
      s.cells.push_back(c);
    }
  }

  // structure seeding: split cells that overlap a concentration disk until
  // they resolve its scale (nested rules are blind to unseen sub-cell bubbles)
  auto cell_probe = [&](const Cell& c, Cx& mid, double& diam) {
    double am = 0.5 * (c.a0 + c.a1), tm = 0.5 * (c.t0 + c.t1);
    if (c.chart == Chart::ExtPolar) {
      double R = 1.0 / std::max(am, 1e-12);
      mid = Cx(R * std::cos(tm), R * std::sin(tm));
      diam = 2.0 * R; // crude
      return;
    }
    if (c.chart == Chart::PolarLog) am = std::sqrt(c.a0 * c.a1);
    mid = Cx(c.cx + am * std::cos(tm), c.cy + am * std::sin(tm));
    diam = std::max(c.a1 - c.a0, c.a1 * (c.t1 - c.t0));
  };
  for (int round = 0; round < 80; ++round) {
    bool changed = false;
    size_t ncur = s.cells.size();
    for (size_t i = 0; i < ncur; ++i) {
      Cell& c = s.cells[i];
      if (c.chart == Chart::ExtPolar) continue;
      Cx mid;
      double diam;
      cell_probe(c, mid, diam);
      for (size_t k = 0; k < centers.size(); ++k) {
        double d = std::abs(mid - centers[k]);
        if (d <= 3.0 * sigma[k] + 0.75 * diam && diam > 0.75 * sigma[k] && c.depth < 40) {
          auto [ca, cb] = split_cell(c);
          ca.group = group++;
          cb.group = group++;
          s.cells[i] = ca;
          s.cells.push_back(cb);
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return s;
}

QuadScheme make_rect_scheme(double x0, double x1, double y0, double y1, int nx, int ny) {
  QuadScheme s;
  s.kind = "rect";
  int group = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      Cell c;
      c.chart = Chart::CartRect;
      c.a0 = x0 + (x1 - x0) * i / nx;
      c.a1 = x0 + (x1 - x0) * (i + 1) / nx;
      c.t0 = y0 + (y1 - y0) * j / ny;
      c.t1 = y0 + (y1 - y0) * (j + 1) / ny;
      c.group = group++;
      s.cells.push_back(c);
    }
  }
  return s;
}

std::string scheme_to_json(const QuadScheme& s) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"kind\":\"" << s.kind << "\",\"r\":" << s.r
     << ",\"target_rel_tol\":" << s.target_rel_tol
     << ",\"max_refinement_depth\":" << s.max_refinement_depth << ",\"cells\":[";
  const char* chart_names[] = {"polar_lin", "polar_log", "collar", "ext_polar", "cart_rect"};
  for (size_t i = 0; i < s.cells.size(); ++i) {
    const Cell& c = s.cells[i];
    if (i) os << ",";
    os << "{\"chart\":\"" << chart_names[(int)c.chart] << "\",\"sym\":" << (int)c.sym
       << ",\"center\":[" << c.cx << "," << c.cy << "],\"a\":[" << c.a0 << "," << c.a1
       << "],\"t\":[" << c.t0 << "," << c.t1 << "]}";
  }
  os << "]}";
  return os.str();
}

IntegralResult energy(const SphereField& u, const QuadScheme& s, int jobs) {
  IntegralResult r = integrate(
      s,
      [&](Cx z) {
        VJet j = u.eval(z);
        return 0.5 * (dot(j.dx, j.dx) + dot(j.dy, j.dy));
      },
      jobs);
  return r;
}

IntegralResult degree(const SphereField& u, const QuadScheme& s, int jobs) {
  IntegralResult r = integrate(
      s, [&](Cx z) { return degree_density(u, z) / (4.0 * M_PI); }, jobs);
  return r;
}

IntegralResult energy_deficit(const SphereField& u, const QuadScheme& s, int deg_sign, int jobs) {
  return integrate(
      s,
      [&](Cx z) {
        VJet j = u.eval(z);
        return 0.5 * deficit_density(j, deg_sign);
      },
      jobs);
}

} // namespace hm
