#pragma once

// Symplectic potential of a toric cone built from its facet data, the
// Legendre map to complex coordinates, and Reeb determination.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "skf/exterior.hpp"
#include "skf/linalg.hpp"
#include "skf/report.hpp"
#include "skf/toric.hpp"

namespace skf {

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// G(y) = 1/2 sum_A l_A log l_A + 1/2 l_B log l_B - 1/2 l_inf log l_inf + h(y).
// The optional h is differentiated by central differences with step h_step.
struct SymplecticPotential {
  ToricData td;
  std::function<double(const RealVec&)> h;
  double h_step = 1e-5;

  explicit SymplecticPotential(ToricData data, std::function<double(const RealVec&)> extra = {});
};

double eval_G(const SymplecticPotential& sp, const RealVec& y);
RealVec grad_G(const SymplecticPotential& sp, const RealVec& y);

struct Hessian {
  Matrix G;  // G_ij
  Matrix F;  // (G_ij)^-1
  double det = 0.0;
};

Hessian hessian_G(const SymplecticPotential& sp, const RealVec& y);

struct LegendreResult {
  double F = 0.0;
  RealVec x;
  // |F(x) + G(y) - <x, y>|
  double duality_residual = 0.0;
};

LegendreResult legendre_F(const SymplecticPotential& sp, const RealVec& y);

struct LegendreData {
  RealVec y;
  RealVec x;
  Matrix G;
  Matrix F;
};

LegendreData legendre_data(const SymplecticPotential& sp, const RealVec& y);

// Solves grad_G(y) = x by Newton iteration from `seed`. Steps are damped to
// stay inside the domain. Throws Error when it does not converge.
RealVec invert_gradient(const SymplecticPotential& sp, const RealVec& x, RealVec seed, double tol = 1e-13,
                        int max_iter = 100);

// s(y) = log det G_ij + 2 x^1. Ricci-flatness of the cone metric is
// constancy of s; the report holds the max deviation from the mean and
// fitted["c"] = -mean.
double ricci_flat_scalar(const SymplecticPotential& sp, const RealVec& y);
ResidualReport ricci_flat_residual(const SymplecticPotential& sp, const std::vector<RealVec>& points,
                                   double tolerance = 1e-8);

// Random points with every l_A(y) > margin |y| and |y| in [0.25, 2].
std::vector<RealVec> sample_cone_interior(const ToricData& td, int n, std::uint64_t seed, double margin = 0.05);

// Population variance of s over the points; +inf when B leaves the domain
// at any point or the Hessian degenerates.
double reeb_objective(const ToricData& td, const RealVec& reeb, const std::vector<RealVec>& points);

struct ReebSearchOptions {
  std::optional<double> fixed_first;  // defaults to n
  RealVec start;                      // free components; defaults to fixed_first / n each
  std::vector<RealVec> points;        // defaults to sample_cone_interior(td, n_points, seed)
  int n_points = 60;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  int max_iterations = 500;
};

struct ReebSearchResult {
  RealVec reeb;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

ReebSearchResult reeb_search(const ToricData& td, const ReebSearchOptions& opts = {});

// Nelder-Mead minimisation, exposed for testing.
struct MinimizeResult {
  RealVec x;
  double f = 0.0;
  int iterations = 0;
};

MinimizeResult nelder_mead(const std::function<double(const RealVec&)>& f, RealVec start, double initial_step,
                           int max_iterations, double f_tol, double x_tol);

// Complex coordinates of the conifold cone. kHolomorphic uses
// Im z^2 = (psi - phi1 + phi2) / 2; kPrinted keeps (psi + phi1 + phi2) / 2,
// which is not holomorphic for the cone's complex structure and is exposed
// only for diagnostics.
enum class ZVariant { kHolomorphic, kPrinted };

template <class T>
std::array<Cx<T>, 3> t11_complex_coords(const Point<T>& x, ZVariant variant = ZVariant::kHolomorphic) {
  const T& r = x[0];
  const T &th1 = x[1], &ph1 = x[2], &th2 = x[3], &ph2 = x[4], &psi = x[5];
  T lr = log(r);
  T s1h = log(sin(0.5 * th1));
  T im2 = variant == ZVariant::kHolomorphic ? 0.5 * (psi - ph1 + ph2) : 0.5 * (psi + ph1 + ph2);
  return {Cx<T>(3.0 * lr + log(sin(th1)) + log(sin(th2)), psi),
          Cx<T>(1.5 * lr + s1h + log(cos(0.5 * th2)), im2),
          Cx<T>(1.5 * lr + s1h + log(sin(0.5 * th2)), 0.5 * (psi - ph1 - ph2))};
}

// Throws OutOfDomain when a theta is within 1e-12 of 0 or pi.
std::array<Complex, 3> complex_coords_t11(const ChartPoint& p, ZVariant variant = ZVariant::kHolomorphic);

// z^k (k = 0, 1, 2) as a complex 0-form on the cone chart.
DiffForm complex_coordinate_form(const ChartPtr& cone, int k, ZVariant variant = ZVariant::kHolomorphic);

SymplecticPotential conifold_potential();

}  // namespace skf
