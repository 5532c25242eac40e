#pragma once

// Closed-form expressions for the T^{1,1} forms as they are customarily
// written out, and diagnostics comparing them with what the engine computes.
// Nothing here feeds back into the engine.

#include <array>
#include <vector>

#include "skf/killing.hpp"
#include "skf/report.hpp"

namespace skf {

// T_1, T_2, T_3 with the Im z^2 angle (psi - phi1 + phi2) / 2.
std::array<DiffForm, 3> written_t_forms(const ChartPtr& base);

// T_2^T_3, T_1^T_3, T_1^T_2 as written out term by term.
std::array<DiffForm, 3> written_t_wedges(const ChartPtr& base);

// 3 sin th1 sin th2 e^{i psi} (a T2^T3 - 1/2 T1^T3 + 1/2 T1^T2) built from
// the engine's T_i. The customary coefficient is a = 1/4.
DiffForm psi_from_t_forms(const ChartPtr& cone, const ChartPtr& base, double a);

// e^{i psi} [2 dth1^dth2 - 2i sin th2 X + 2i sin th1 dth2^dph1
//            - 2 sin th1 sin th2 dph1^dph2]
// with X = dth1^dth2 as printed (`as_printed`) or X = dth1^dph2.
DiffForm bracketed_psi(const ChartPtr& base, bool as_printed);

// The canonical forms in their written-out coefficients.
CanonicalForms written_canonical_forms(const ChartPtr& base);

// Additive constants of x^k - Re z^k as written out.
std::array<double, 3> written_x_constants();

// One report per comparison. They are informational: `pass` means the
// comparison was computed, and fitted["agrees"] records the outcome.
std::vector<ResidualReport> display_diagnostics(const std::vector<ChartPoint>& base_points,
                                                const std::vector<ChartPoint>& cone_points);

}  // namespace skf
