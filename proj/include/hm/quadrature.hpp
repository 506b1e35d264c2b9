#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hm/sphere_fields.hpp"

namespace hm {

struct NonFiniteSample : std::runtime_error {
  Cx where;
  explicit NonFiniteSample(Cx z)
      : std::runtime_error("non-finite integrand sample at (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ")"),
        where(z) {}
};

enum class Chart { PolarLin, PolarLog, Collar, ExtPolar, CartRect };
// Node emission transform; canonical offsets (dx,dy) map to (dx,dy), (dy,dx),
// (-dx,-dy), (-dy,-dx).  Swaps and negations are exact in floating point, so a
// symmetric scheme yields exactly mirrored node sets.
enum class Sym { Id, Diag, Cent, DiagCent };

struct Cell {
  Chart chart;
  Sym sym = Sym::Id;
  double cx = 0, cy = 0; // canonical center (PolarLin/PolarLog)
  double a0 = 0, a1 = 0; // radial: rho | rho (log) | s in [0,1] (Collar) | rho_w (ExtPolar) | x (CartRect)
  double t0 = 0, t1 = 0; // angular: theta | phi; CartRect: y
  double p0 = 0, p1 = 0; // Collar: h-coefficient, R_out
  int depth = 0;
  int group = -1; // linked-refinement group (symmetry siblings split together)
};

struct QuadNode {
  double x, y, w;
};

// Scheme = list of cells plus refinement policy.  Patch boundaries are chosen
// by the builders so that integrand kinks (cutoff circles) lie on cell edges.
struct QuadScheme {
  std::vector<Cell> cells;
  double target_rel_tol = 1e-10;
  double target_abs_tol = 0.0;
  int max_refinement_depth = 12;
  size_t max_cells = 300000;
  std::string kind;
  double r = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = true;
  long n_cells = 0;
};

// Multi-output integrand evaluated at a point; all outputs share refinement.
struct MultiIntegrand {
  virtual ~MultiIntegrand() = default;
  virtual int size() const = 0;
  virtual void eval(Cx z, double* out) const = 0;
};

void cell_nodes(const Cell& c, int order, std::vector<QuadNode>& out);

// jobs = 0: use the OpenMP default; 1: serial reference path.
std::vector<IntegralResult> integrate_multi(const QuadScheme& s, const MultiIntegrand& f,
                                            const std::vector<double>& abs_tols, int jobs = 0);
IntegralResult integrate(const QuadScheme& s, const std::function<double(Cx)>& f, int jobs = 0,
                         double abs_tol = 0.0);

// Scheme builders.
// Two-bubble scheme for psi_r-type maps: kink-aligned polar disks of radius
// sqrt(2) r about +-(r, r) (boundaries at 1e-4/r, sqrt(r), r), cosine collar to
// |z| = 3r, inverted exterior.  Node set is exactly symmetric under the
// diagonal swap and the central flip.
QuadScheme default_scheme(double r);
// Root-seeded origin-polar scheme for arbitrary rational maps.
QuadScheme scheme_for_map(const RationalMap& m);
QuadScheme make_rect_scheme(double x0, double x1, double y0, double y1, int nx, int ny);

std::string scheme_to_json(const QuadScheme& s);

// 0.5 * integral |grad u|^2
IntegralResult energy(const SphereField& u, const QuadScheme& s, int jobs = 0);
// (1/4pi) * integral u.(u_y x u_x)
IntegralResult degree(const SphereField& u, const QuadScheme& s, int jobs = 0);
// E(u) - 4 pi |deg| through the completed square |u_x - s u x u_y|^2; exact
// relative accuracy even when the deficit is ~1e-12.
IntegralResult energy_deficit(const SphereField& u, const QuadScheme& s, int deg_sign,
                              int jobs = 0);

// Roots of a complex polynomial (Durand-Kerner), for scheme seeding.
std::vector<Cx> poly_roots(const ComplexPoly& p);

} // namespace hm
