#pragma once

// Residual evaluators for the Killing-type equations, the Kahler structure of
// the cone, and geodesic conserved quantities.

#include <cstdint>
#include <string>
#include <vector>

#include "skf/killing.hpp"
#include "skf/metric.hpp"
#include "skf/report.hpp"

namespace skf {

// nabla_X psi - 1/(p+1) X _| d psi + 1/(n-p+1) X^flat ^ d* psi over the
// coordinate directions X.
ResidualReport cky_residual(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                            double tolerance = 1e-7, Differentiation diff = {});

// max |d psi|; closed conformal Killing forms must vanish here.
ResidualReport closedness_residual(const DiffForm& psi, const std::vector<ChartPoint>& points,
                                   double tolerance = 1e-9, Differentiation diff = {});

// Symmetrised covariant derivative nabla_j psi_{i I} + nabla_i psi_{j I}.
// The part "coclosed" carries max |d* psi|; both must pass.
ResidualReport killing_yano_residual(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                                     double tolerance = 1e-7, Differentiation diff = {});

// Least-squares fit of c in nabla_X (d psi) = c X^flat ^ psi. The report
// residual is max |nabla_X d psi - c X^flat ^ psi| after the fit; fitted
// holds c, c_im, c_stddev (spread of per-point estimates) and degenerate
// (1 when psi has top degree, where both sides vanish and c = 0).
ResidualReport special_killing_fit(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                                   double tolerance = 1e-7, double stddev_tolerance = 1e-6, Differentiation diff = {});

// max |nabla_i Theta_J| on the given metric.
ResidualReport parallel_residual(const MetricField& g, const DiffForm& theta, const std::vector<ChartPoint>& points,
                                 double tolerance = 1e-6, Differentiation diff = {});

// Complex structure of the cone over T^{1,1} from the contact data:
// J(r d_r) = B, J Y = phi Y - eta(Y) r d_r with phi = nabla B. This sign
// is the one for which omega(X, Y) = gbar(J X, Y).
// Indexed J[a][b] = J^a_b on the cone chart.
Matrix cone_complex_structure(const MetricField& base_g, const ChartPoint& cone_point, Differentiation diff = {});

// omega = 1/2 d(r^2 eta) on the cone over T^{1,1}.
DiffForm kahler_form_t11(const ChartPtr& cone, Differentiation diff = {});

// Kahler form on the cone as written out in the coordinates.
DiffForm symplectic_form_display(const ChartPtr& cone);

struct KahlerTolerances {
  double j_squared = 1e-10;
  double parallel = 1e-6;
  double display = 1e-10;
};

// Parts: J^2, nabla-J, nabla-omega, omega-compatibility, omega-display.
ResidualReport kahler_checks(const MetricField& base_g, const std::vector<ChartPoint>& cone_points,
                             KahlerTolerances tol = {}, Differentiation diff = {});

struct GeodesicState {
  double t = 0.0;
  ChartPoint point;
  std::vector<double> velocity;
};

struct GeodesicTrajectory {
  MetricField metric;
  double step = 0.0;
  std::vector<GeodesicState> states;
  bool truncated = false;
  std::string note;
};

// RK4 for x'' + Gamma(x', x') = 0. Integration stops early (truncated) when
// a coordinate with a singular margin comes within half its margin of the
// chart boundary.
GeodesicTrajectory geodesic_flow(const MetricField& g, const ChartPoint& p0, const std::vector<double>& v0, double t_end,
                                 double dt, Differentiation diff = {});

// Unit-speed geodesic from random initial data; initial conditions are
// redrawn until the whole trajectory stays inside the sampling region.
GeodesicTrajectory random_geodesic(const MetricField& g, double t_end, double dt, std::uint64_t seed,
                                   int max_attempts = 200, Differentiation diff = {});

// max_t |Q(t) - Q(0)| / max(|Q(0)|, eps) with Q = K(v, v). fitted holds
// Q0 and K_max, the largest |K_ij| seen along the trajectory; a tensor that
// vanishes identically has K_max at rounding level and only eps keeps the
// ratio meaningful.
ResidualReport conserved_quantity_drift(const StackelKillingTensor& k, const GeodesicTrajectory& traj,
                                        double tolerance = 1e-6, double eps = 1e-6);

// Same for a linear quantity Q = alpha(v), e.g. the momentum of a Killing field.
ResidualReport linear_quantity_drift(const DiffForm& alpha, const GeodesicTrajectory& traj, double tolerance = 1e-8,
                                     double eps = 1e-12);

}  // namespace skf
