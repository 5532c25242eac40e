#include "skf/displays.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skf/verify.hpp"

namespace skf {

namespace {

template <class T>
Cx<T> imag_unit(const T& v) {
  return Cx<T>(T(0.0), v);
}

double max_diff_over(const DiffForm& a, const DiffForm& b, const std::vector<ChartPoint>& points) {
  double worst = 0.0;
  for (const auto& p : points) {
    auto ca = a.components(p), cb = b.components(p);
    for (std::size_t k = 0; k < ca.size(); ++k) worst = std::max(worst, abs(ca[k] - cb[k]));
  }
  return worst;
}

ResidualReport diagnostic(std::string name, int n, double value, bool agrees, std::string note) {
  ResidualReport r;
  r.check = std::move(name);
  r.n_points = n;
  r.max_abs = value;
  r.mean_abs = value;
  r.pass = true;
  r.fitted["agrees"] = agrees ? 1.0 : 0.0;
  r.notes.push_back(std::move(note));
  return r;
}

// max over points and k of |dz^k o J - i dz^k| on the cone.
double holomorphy_defect(const MetricField& g, const std::vector<ChartPoint>& cone_points, ZVariant variant) {
  const auto& cone = cone_points.front().chart;
  std::array<DiffForm, 3> dz{exterior_derivative(complex_coordinate_form(cone, 0, variant)),
                             exterior_derivative(complex_coordinate_form(cone, 1, variant)),
                             exterior_derivative(complex_coordinate_form(cone, 2, variant))};
  double worst = 0.0;
  for (const auto& p : cone_points) {
    auto j = cone_complex_structure(g, p);
    for (const auto& form : dz) {
      auto c = form.components(p);
      for (std::size_t b = 0; b < 6; ++b) {
        Complex s{0.0, 0.0};
        for (std::size_t a = 0; a < 6; ++a) s += c[a] * j[a][b];
        worst = std::max(worst, abs(s - Complex(0.0, 1.0) * c[b]));
      }
    }
  }
  return worst;
}

}  // namespace

std::array<DiffForm, 3> written_t_forms(const ChartPtr& base) {
  auto t1 = lambda_form(base, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kTheta1}, cot(x[kTheta1]));
    w.add({kTheta2}, cot(x[kTheta2]));
    w.add({kPsi}, imag_unit(T(1.0)));
  });
  auto t2 = lambda_form(base, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kTheta1}, 0.5 * cot(0.5 * x[kTheta1]));
    w.add({kTheta2}, -0.5 * tan(0.5 * x[kTheta2]));
    w.add({kPsi}, imag_unit(T(0.5)));
    w.add({kPhi1}, imag_unit(T(-0.5)));
    w.add({kPhi2}, imag_unit(T(0.5)));
  });
  auto t3 = lambda_form(base, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kTheta1}, 0.5 * cot(0.5 * x[kTheta1]));
    w.add({kTheta2}, 0.5 * cot(0.5 * x[kTheta2]));
    w.add({kPsi}, imag_unit(T(0.5)));
    w.add({kPhi1}, imag_unit(T(-0.5)));
    w.add({kPhi2}, imag_unit(T(-0.5)));
  });
  return {t1, t2, t3};
}

std::array<DiffForm, 3> written_t_wedges(const ChartPtr& base) {
  auto t23 = lambda_form(base, 2, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    const T s2 = sin(x[kTheta2]);
    const T ch1 = cot(0.5 * x[kTheta1]);
    w.add({kTheta1, kTheta2}, 0.5 * ch1 / s2);
    w.add({kTheta1, kPhi2}, imag_unit(T(-0.5 * ch1)));
    w.add({kTheta2, kPsi}, imag_unit(T(-0.5 / s2)));
    w.add({kTheta2, kPhi1}, imag_unit(T(0.5 / s2)));
    w.add({kTheta2, kPhi2}, imag_unit(T(-0.5 * cot(x[kTheta2]))));
    w.add({kPhi1, kPhi2}, T(-0.5));
    w.add({kPsi, kPhi2}, T(0.5));
  });
  auto t13 = lambda_form(base, 2, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    const T c1 = cot(x[kTheta1]), c2 = cot(x[kTheta2]);
    w.add({kTheta1, kTheta2}, 0.5 * (c1 * cot(0.5 * x[kTheta2]) - c2 * cot(0.5 * x[kTheta1])));
    w.add({kTheta1, kPsi}, imag_unit(T(-0.5 / sin(x[kTheta1]))));
    w.add({kTheta1, kPhi1}, imag_unit(T(-0.5 * c1)));
    w.add({kTheta1, kPhi2}, imag_unit(T(-0.5 * c1)));
    w.add({kTheta2, kPsi}, imag_unit(T(-0.5 / sin(x[kTheta2]))));
    w.add({kTheta2, kPhi1}, imag_unit(T(-0.5 * c2)));
    w.add({kTheta2, kPhi2}, imag_unit(T(-0.5 * c2)));
    w.add({kPsi, kPhi1}, T(0.5));
    w.add({kPsi, kPhi2}, T(0.5));
  });
  auto t12 = lambda_form(base, 2, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    const T c1 = cot(x[kTheta1]), c2 = cot(x[kTheta2]);
    w.add({kTheta1, kTheta2}, -0.5 * (c1 * tan(0.5 * x[kTheta2]) - c2 * cot(0.5 * x[kTheta1])));
    w.add({kTheta1, kPsi}, imag_unit(T(-0.5 / sin(x[kTheta1]))));
    w.add({kTheta1, kPhi1}, imag_unit(T(-0.5 * c1)));
    w.add({kTheta1, kPhi2}, imag_unit(T(0.5 * c1)));
    w.add({kTheta2, kPsi}, imag_unit(T(0.5 / sin(x[kTheta2]))));
    w.add({kTheta2, kPhi1}, imag_unit(T(-0.5 * c2)));
    w.add({kTheta2, kPhi2}, imag_unit(T(0.5 * c2)));
    w.add({kPsi, kPhi1}, T(0.5));
    w.add({kPsi, kPhi2}, T(-0.5));
  });
  return {t23, t13, t12};
}

DiffForm psi_from_t_forms(const ChartPtr& cone, const ChartPtr& base, double a) {
  auto t = t_one_forms(cone, base);
  auto prefactor = lambda_form(base, 0, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    const T m = 3.0 * sin(x[kTheta1]) * sin(x[kTheta2]);
    w.set_scalar(Cx<T>(m * cos(x[kPsi]), m * sin(x[kPsi])));
  });
  auto sum = a * wedge(t[1], t[2]) - 0.5 * wedge(t[0], t[2]) + 0.5 * wedge(t[0], t[1]);
  return wedge(prefactor, sum);
}

DiffForm bracketed_psi(const ChartPtr& base, bool as_printed) {
  return lambda_form(base, 2, [as_printed](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    const Cx<T> e(cos(x[kPsi]), sin(x[kPsi]));
    const T s1 = sin(x[kTheta1]), s2 = sin(x[kTheta2]);
    w.add({kTheta1, kTheta2}, Cx<T>(T(2.0)) * e);
    if (as_printed) {
      w.add({kTheta1, kTheta2}, imag_unit(T(-2.0 * s2)) * e);
    } else {
      w.add({kTheta1, kPhi2}, imag_unit(T(-2.0 * s2)) * e);
    }
    w.add({kTheta2, kPhi1}, imag_unit(T(2.0 * s1)) * e);
    w.add({kPhi1, kPhi2}, Cx<T>(T(-2.0 * s1 * s2)) * e);
  });
}

CanonicalForms written_canonical_forms(const ChartPtr& base) {
  CanonicalForms f{
      lambda_form(base, 3, [](const auto& x, auto& w) {
        const auto s1 = sin(x[kTheta1]), s2 = sin(x[kTheta2]);
        w.add({kPsi, kTheta1, kPhi1}, s1 / 9.0);
        w.add({kPsi, kTheta2, kPhi2}, s2 / 9.0);
        w.add({kTheta2, kPhi1, kPhi2}, -(cos(x[kTheta1]) * s2) / 9.0);
        w.add({kTheta1, kPhi1, kPhi2}, cos(x[kTheta2]) * s1 / 9.0);
      }),
      lambda_form(base, 5, [](const auto& x, auto& w) {
        w.add({kPsi, kTheta1, kTheta2, kPhi1, kPhi2}, -2.0 / 27.0 * sin(x[kTheta1]) * sin(x[kTheta2]));
      }),
      lambda_form(base, 2, [](const auto& x, auto& w) {
        w.add({kTheta1, kPhi1}, -sin(x[kTheta1]) / 3.0);
        w.add({kTheta2, kPhi2}, -sin(x[kTheta2]) / 3.0);
      }),
      lambda_form(base, 4, [](const auto& x, auto& w) {
        w.add({kTheta1, kTheta2, kPhi1, kPhi2}, -2.0 / 9.0 * sin(x[kTheta1]) * sin(x[kTheta2]));
      }),
  };
  return f;
}

std::array<double, 3> written_x_constants() {
  const double l2 = std::numbers::ln2;
  return {1.5 - 5.5 * l2, 0.75 - 2.75 * l2, 0.75 - 2.75 * l2};
}

std::vector<ResidualReport> display_diagnostics(const std::vector<ChartPoint>& base_points,
                                                const std::vector<ChartPoint>& cone_points) {
  if (base_points.empty() || cone_points.empty()) throw Error("display_diagnostics: no points");
  const auto& base = base_points.front().chart;
  const auto& cone = cone_points.front().chart;
  const int nb = static_cast<int>(base_points.size());
  const int nc = static_cast<int>(cone_points.size());
  const double agree_tol = 1e-9;
  std::vector<ResidualReport> out;

  // T_i against the complex coordinates, and holomorphy of each choice of z^2.
  auto written = written_t_forms(base);
  auto t_holo = t_one_forms(cone, base);
  auto t_printed = t_one_forms(cone, base, ZVariant::kPrinted);
  double d_printed = 0.0, d_holo = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    d_printed = std::max(d_printed, max_diff_over(written[k], t_printed[k], base_points));
    d_holo = std::max(d_holo, max_diff_over(written[k], t_holo[k], base_points));
  }
  out.push_back(diagnostic("T-vs-z", nb, d_printed, d_printed < agree_tol,
                           "written T_2 against d of z^2 with Im z^2 = (psi + phi1 + phi2)/2"));
  out.push_back(diagnostic("T-vs-holomorphic-z", nb, d_holo, d_holo < agree_tol,
                           "written T_i against d of z with Im z^2 = (psi - phi1 + phi2)/2"));
  auto g = t11_metric(base);
  const double h_printed = holomorphy_defect(g, cone_points, ZVariant::kPrinted);
  const double h_holo = holomorphy_defect(g, cone_points, ZVariant::kHolomorphic);
  out.push_back(diagnostic("z-holomorphy", nc, h_printed, h_printed < agree_tol,
                           "max |dz o J - i dz| with Im z^2 = (psi + phi1 + phi2)/2"));
  out.push_back(diagnostic("z-holomorphy-corrected", nc, h_holo, h_holo < agree_tol,
                           "max |dz o J - i dz| with Im z^2 = (psi - phi1 + phi2)/2"));

  // Wedge products of the T_i.
  auto wedges = written_t_wedges(base);
  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {0, 2}, {0, 1}}};
  const std::array<const char*, 3> names{"T2^T3", "T1^T3", "T1^T2"};
  for (std::size_t k = 0; k < 3; ++k) {
    auto engine = wedge(t_holo[static_cast<std::size_t>(pairs[k].first)], t_holo[static_cast<std::size_t>(pairs[k].second)]);
    const double d = max_diff_over(engine, wedges[k], base_points);
    out.push_back(diagnostic(std::string("wedge-") + names[k], nb, d, d < agree_tol,
                             std::string("written ") + names[k] + " against the wedge of the engine's T_i"));
  }

  // Extraction of Psi from Omega against the T-expansion and the displays.
  auto extracted = extract_base_form(holomorphic_volume_form(cone), base).form;
  for (double a : {0.25, 1.0}) {
    const double d = max_diff_over(extracted, psi_from_t_forms(cone, base, a), base_points);
    out.push_back(diagnostic(a == 0.25 ? "T-expansion" : "T-expansion-corrected", nb, d, d < agree_tol,
                             "Psi extracted from Omega against 3 sin th1 sin th2 e^{i psi}(a T2^T3 - 1/2 T1^T3 + "
                             "1/2 T1^T2) with a = " +
                                 std::string(a == 0.25 ? "1/4" : "1")));
  }
  auto shown = re_im_psi_closed_forms(base);
  auto psi = shown.re + Complex(0.0, 1.0) * shown.im;
  for (bool printed : {true, false}) {
    auto fit = fit_global_scale(bracketed_psi(base, printed), psi, base_points);
    auto r = diagnostic(printed ? "bracketed-psi" : "bracketed-psi-corrected", nb, fit.residual,
                        fit.residual < agree_tol,
                        printed ? "bracketed Psi with -2i sin th2 dth1^dth2 against Re Psi + i Im Psi"
                                : "bracketed Psi with -2i sin th2 dth1^dph2 against Re Psi + i Im Psi");
    r.fitted["scale_re"] = fit.scale.re;
    r.fitted["scale_im"] = fit.scale.im;
    out.push_back(std::move(r));
  }
  {
    auto fit = fit_global_scale(extracted, psi, base_points);
    auto r = diagnostic("extracted-psi", nb, fit.residual, fit.residual < agree_tol,
                        "Psi extracted from Omega against Re Psi + i Im Psi up to one global constant");
    r.fitted["scale_re"] = fit.scale.re;
    r.fitted["scale_im"] = fit.scale.im;
    out.push_back(std::move(r));
  }

  // Additive constants x^k - Re z^k.
  {
    auto sp = conifold_potential();
    std::vector<std::array<double, 3>> diffs;
    std::array<double, 3> sum{};
    for (const auto& p : cone_points) {
      auto x = grad_G(sp, momentum_map_t11(p, MomentumBasis::kTransformed));
      auto z = complex_coords_t11(p);
      std::array<double, 3> d{};
      for (std::size_t k = 0; k < 3; ++k) {
        d[k] = x[k] - z[k].re;
        sum[k] += d[k];
      }
      diffs.push_back(d);
    }
    const auto shown_c = written_x_constants();
    for (std::size_t k = 0; k < 3; ++k) {
      const double mean = sum[k] / nc;
      double spread = 0.0;
      for (const auto& d : diffs) spread = std::max(spread, std::abs(d[k] - mean));
      const double d = std::abs(mean - shown_c[k]);
      auto r = diagnostic("x" + std::to_string(k + 1) + "-constant", nc, d, d < agree_tol,
                          "mean of x^k - Re z^k against the written additive constant");
      r.fitted["engine"] = mean;
      r.fitted["written"] = shown_c[k];
      r.fitted["spread"] = spread;
      out.push_back(std::move(r));
    }
  }

  // Canonical forms against their written coefficients.
  {
    auto engine = canonical_forms(contact_form_t11(base));
    auto shown_f = written_canonical_forms(base);
    const std::array<std::pair<const char*, std::pair<const DiffForm*, const DiffForm*>>, 4> forms{{
        {"Phi1", {&engine.phi1, &shown_f.phi1}},
        {"Phi2", {&engine.phi2, &shown_f.phi2}},
        {"Psi1", {&engine.psi1, &shown_f.psi1}},
        {"Psi2", {&engine.psi2, &shown_f.psi2}},
    }};
    for (const auto& [label, pr] : forms) {
      const double d = max_diff_over(*pr.first, *pr.second, base_points);
      auto fit = fit_global_scale(*pr.first, *pr.second, base_points);
      auto r = diagnostic(std::string(label) + "-display", nb, d, d < agree_tol,
                          std::string("engine ") + label + " against its written coefficients");
      r.fitted["scale_re"] = fit.scale.re;
      r.fitted["scale_residual"] = fit.residual;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace skf
