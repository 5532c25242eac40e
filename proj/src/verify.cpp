#include "skf/verify.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace skf {

namespace {

using CVec = std::vector<Complex>;

// (alpha ^ b) for a real 1-form alpha and a q-form b, at a point.
CVec one_form_wedge(const std::vector<double>& alpha, const CVec& b, int q, int n) {
  const auto& bq = FormBasis::get(n, q);
  const auto& bout = FormBasis::get(n, q + 1);
  CVec out(static_cast<std::size_t>(bout.size()), Complex(0.0));
  for (int i = 0; i < n; ++i) {
    const double a = alpha[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    const Mask mi = Mask(1) << i;
    for (int k = 0; k < bq.size(); ++k) {
      const Mask mk = bq.mask(k);
      if (mk & mi) continue;
      const double s = shuffle_sign(mi, mk) * a;
      out[static_cast<std::size_t>(bout.index(mi | mk))] += s * b[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

// (d_i _| w) for a (q+1)-form w.
CVec coordinate_contraction(const CVec& w, int i, int q, int n) {
  const auto& bq = FormBasis::get(n, q);
  CVec out(static_cast<std::size_t>(bq.size()));
  std::vector<int> idx(static_cast<std::size_t>(q + 1));
  for (int k = 0; k < bq.size(); ++k) {
    auto t = bq.tuple(k);
    idx[0] = i;
    std::copy(t.begin(), t.end(), idx.begin() + 1);
    out[static_cast<std::size_t>(k)] = component_at(w, n, idx);
  }
  return out;
}

std::vector<double> metric_row(const Mat<double>& g, int i, int n) {
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = g[i][k];
  return row;
}

void require_chart(const MetricField& g, const DiffForm& a, const char* what) { require_same_chart(g.chart(), a.chart(), what); }

// J^a_b on the cone chart (r, base coordinates), from the base metric.
template <class T>
Mat<T> complex_structure_at(const MetricField& base_g, const Point<T>& x, Differentiation diff) {
  Point<T> xb{};
  for (int i = 0; i < 5; ++i) xb[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i + 1)];
  auto gamma = christoffel_at(base_g, xb, diff);
  const T& r = x[0];
  std::array<T, 5> eta{T(0.0), cos(xb[kTheta1]) / 3.0, T(0.0), cos(xb[kTheta2]) / 3.0, T(1.0 / 3.0)};
  Mat<T> j{};
  for (auto& row : j) row.fill(T(0.0));
  j[1 + kPsi][0] = 3.0 / r;
  for (int b = 0; b < 5; ++b) {
    j[0][b + 1] = -(r * eta[static_cast<std::size_t>(b)]);
    // phi^a_b = nabla_b B^a = 3 Gamma^a_{b psi}
    for (int a = 0; a < 5; ++a) j[a + 1][b + 1] = 3.0 * gamma(a, b, kPsi);
  }
  return j;
}

}  // namespace

ResidualReport cky_residual(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                            double tolerance, Differentiation diff) {
  require_chart(g, psi, "cky_residual");
  const int n = g.dim(), p = psi.degree();
  DiffForm dpsi = p < n ? exterior_derivative(psi, diff) : DiffForm();
  DiffForm dstar = p > 0 ? codifferential(g, psi, diff) : DiffForm();
  ResidualAccumulator acc;
  for (const auto& pt : points) {
    auto nab = covariant_derivative_form(g, psi, pt, diff);
    CVec dv = dpsi ? dpsi.components(pt) : CVec();
    CVec ds = dstar ? dstar.components(pt) : CVec();
    auto gm = g.at(pt);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      CVec r = nab.by_direction[static_cast<std::size_t>(i)];
      if (dpsi) {
        auto c = coordinate_contraction(dv, i, p, n);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c[k] / static_cast<double>(p + 1);
      }
      if (dstar) {
        auto w = one_form_wedge(metric_row(gm, i, n), ds, p - 1, n);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] += w[k] / static_cast<double>(n - p + 1);
      }
      for (const auto& v : r) worst = std::max(worst, abs(v));
    }
    acc.add(worst);
  }
  return acc.finish("cky", tolerance);
}

ResidualReport closedness_residual(const DiffForm& psi, const std::vector<ChartPoint>& points, double tolerance,
                                   Differentiation diff) {
  ResidualAccumulator acc;
  if (psi.degree() == psi.dim()) {
    for (std::size_t k = 0; k < points.size(); ++k) acc.add(0.0);
    return acc.finish("closed", tolerance);
  }
  auto d = exterior_derivative(psi, diff);
  for (const auto& pt : points) {
    double worst = 0.0;
    for (const auto& v : d.components(pt)) worst = std::max(worst, abs(v));
    acc.add(worst);
  }
  return acc.finish("closed", tolerance);
}

ResidualReport killing_yano_residual(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                                     double tolerance, Differentiation diff) {
  require_chart(g, psi, "killing_yano_residual");
  const int n = g.dim(), p = psi.degree();
  if (p < 1) throw Error("killing_yano_residual: needs a form of positive degree");
  const auto& rest = FormBasis::get(n, p - 1);
  auto dstar = codifferential(g, psi, diff);
  ResidualAccumulator sym, cocl;
  std::vector<int> a(static_cast<std::size_t>(p)), b(static_cast<std::size_t>(p));
  for (const auto& pt : points) {
    auto nab = covariant_derivative_form(g, psi, pt, diff);
    double worst = 0.0;
    for (int k = 0; k < rest.size(); ++k) {
      auto t = rest.tuple(k);
      std::copy(t.begin(), t.end(), a.begin() + 1);
      std::copy(t.begin(), t.end(), b.begin() + 1);
      for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) {
          a[0] = i;
          b[0] = j;
          Complex v = component_at(nab.by_direction[static_cast<std::size_t>(j)], n, a) +
                      component_at(nab.by_direction[static_cast<std::size_t>(i)], n, b);
          worst = std::max(worst, abs(v));
        }
    }
    sym.add(worst);
    double cw = 0.0;
    for (const auto& v : dstar.components(pt)) cw = std::max(cw, abs(v));
    cocl.add(cw);
  }
  return aggregate("killing-yano", {sym.finish("symmetrized", tolerance), cocl.finish("coclosed", tolerance)});
}

ResidualReport special_killing_fit(const MetricField& g, const DiffForm& psi, const std::vector<ChartPoint>& points,
                                   double tolerance, double stddev_tolerance, Differentiation diff) {
  require_chart(g, psi, "special_killing_fit");
  const int n = g.dim(), p = psi.degree();
  if (p == n) {
    // d psi vanishes identically and X^flat ^ psi = 0: both sides are zero.
    ResidualAccumulator acc;
    for (std::size_t k = 0; k < points.size(); ++k) acc.add(0.0);
    auto r = acc.finish("special-killing", tolerance);
    r.fitted = {{"c", 0.0}, {"c_im", 0.0}, {"c_stddev", 0.0}, {"degenerate", 1.0}};
    r.notes.push_back("degenerate: form has top degree, d psi = 0");
    return r;
  }
  auto dpsi = exterior_derivative(psi, diff);
  struct Sample {
    std::vector<CVec> lhs, rhs;
  };
  std::vector<Sample> samples;
  Complex num{0.0, 0.0};
  double den = 0.0;
  std::vector<Complex> local;
  for (const auto& pt : points) {
    auto nab = covariant_derivative_form(g, dpsi, pt, diff);
    auto pv = psi.components(pt);
    auto gm = g.at(pt);
    Sample s;
    Complex pn{0.0, 0.0};
    double pd = 0.0;
    for (int i = 0; i < n; ++i) {
      s.lhs.push_back(nab.by_direction[static_cast<std::size_t>(i)]);
      s.rhs.push_back(one_form_wedge(metric_row(gm, i, n), pv, p, n));
      const auto &l = s.lhs.back(), &r = s.rhs.back();
      for (std::size_t k = 0; k < l.size(); ++k) {
        pn += conj(r[k]) * l[k];
        pd += r[k].re * r[k].re + r[k].im * r[k].im;
      }
    }
    num += pn;
    den += pd;
    local.push_back(pd > 0.0 ? Complex(pn.re / pd, pn.im / pd) : Complex(0.0));
    samples.push_back(std::move(s));
  }
  if (!(den > 1e-24)) throw Error("special_killing_fit: X^flat ^ psi vanishes at every point, fit is ill-conditioned");
  const Complex c(num.re / den, num.im / den);
  ResidualAccumulator acc;
  for (const auto& s : samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.lhs.size(); ++i)
      for (std::size_t k = 0; k < s.lhs[i].size(); ++k) worst = std::max(worst, abs(s.lhs[i][k] - c * s.rhs[i][k]));
    acc.add(worst);
  }
  Complex mean{0.0, 0.0};
  for (const auto& v : local) mean += v;
  mean = Complex(mean.re / static_cast<double>(local.size()), mean.im / static_cast<double>(local.size()));
  double var = 0.0;
  for (const auto& v : local) {
    auto d = v - mean;
    var += d.re * d.re + d.im * d.im;
  }
  const double stddev = std::sqrt(var / static_cast<double>(local.size()));
  auto r = acc.finish("special-killing", tolerance);
  r.fitted = {{"c", c.re}, {"c_im", c.im}, {"c_stddev", stddev}, {"degenerate", 0.0}};
  r.pass = r.pass && stddev < stddev_tolerance;
  return r;
}

ResidualReport parallel_residual(const MetricField& g, const DiffForm& theta, const std::vector<ChartPoint>& points,
                                 double tolerance, Differentiation diff) {
  require_chart(g, theta, "parallel_residual");
  ResidualAccumulator acc;
  for (const auto& pt : points) {
    auto nab = covariant_derivative_form(g, theta, pt, diff);
    double worst = 0.0;
    for (const auto& dir : nab.by_direction)
      for (const auto& v : dir) worst = std::max(worst, abs(v));
    acc.add(worst);
  }
  return acc.finish("parallel", tolerance);
}

Matrix cone_complex_structure(const MetricField& base_g, const ChartPoint& cone_point, Differentiation diff) {
  if (cone_point.chart->dim() != base_g.dim() + 1) throw ChartMismatch("cone_complex_structure: expects a cone point");
  auto j = complex_structure_at(base_g, cone_point.coords(), diff);
  Matrix out(6, std::vector<double>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) out[a][b] = j[a][b];
  return out;
}

DiffForm kahler_form_t11(const ChartPtr& cone, Differentiation diff) {
  if (cone->dim() != 6) throw ChartMismatch("kahler_form_t11: expects the cone chart");
  ChartPtr base = std::make_shared<Chart>([&] {
    Chart c = *cone;
    c.name = "slice";
    c.coords.erase(c.coords.begin());
    c.ranges.erase(c.ranges.begin());
    c.margins.erase(c.margins.begin());
    return c;
  }());
  auto r2 = scalar_field(cone, [](const auto& x) { return 0.5 * x[0] * x[0]; });
  return exterior_derivative(wedge(r2, pullback_to_cone(contact_form_t11(base), cone)), diff);
}

DiffForm symplectic_form_display(const ChartPtr& cone) {
  if (cone->dim() != 6) throw ChartMismatch("symplectic_form_display: expects the cone chart");
  return lambda_form(cone, 2, [](const auto& x, auto& w) {
    const auto& r = x[0];
    auto r2 = r * r;
    w.add({1 + kTheta1, 1 + kPhi1}, -(r2 * sin(x[1 + kTheta1])) / 6.0);
    w.add({1 + kTheta2, 1 + kPhi2}, -(r2 * sin(x[1 + kTheta2])) / 6.0);
    w.add({0, 1 + kPsi}, r / 3.0);
    w.add({0, 1 + kPhi1}, r * cos(x[1 + kTheta1]) / 3.0);
    w.add({0, 1 + kPhi2}, r * cos(x[1 + kTheta2]) / 3.0);
  });
}

ResidualReport kahler_checks(const MetricField& base_g, const std::vector<ChartPoint>& cone_points, KahlerTolerances tol,
                             Differentiation diff) {
  if (cone_points.empty()) throw Error("kahler_checks: no points");
  const auto& cone = cone_points.front().chart;
  auto gbar = cone_metric(base_g, cone);
  auto omega = kahler_form_t11(cone, diff);
  auto shown = symplectic_form_display(cone);
  const int n = 6;
  ResidualAccumulator jj, nj, nw, compat, disp;
  for (const auto& pt : cone_points) {
    const auto x = pt.coords();
    auto j = complex_structure_at(base_g, x, diff);

    double w1 = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = a == b ? 1.0 : 0.0;
        for (int c = 0; c < n; ++c) s += j[a][c] * j[c][b];
        w1 = std::max(w1, std::abs(s));
      }
    jj.add(w1);

    // nabla_k J^a_b = d_k J^a_b + Gamma^a_kc J^c_b - Gamma^c_kb J^a_c
    auto gam = christoffel_at(gbar, x, diff);
    std::vector<Mat<double>> dj(static_cast<std::size_t>(n));
    if (diff.analytic()) {
      auto xd = promote(x, n);
      for (int k = 0; k < n; ++k) {
        xd[static_cast<std::size_t>(k)].d = 1.0;
        auto jd = complex_structure_at(base_g, xd, diff);
        xd[static_cast<std::size_t>(k)].d = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) dj[static_cast<std::size_t>(k)][a][b] = jd[a][b].d;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        auto xp = x, xm = x;
        xp[static_cast<std::size_t>(k)] += diff.fd_step;
        xm[static_cast<std::size_t>(k)] -= diff.fd_step;
        auto jp = complex_structure_at(base_g, xp, diff), jm = complex_structure_at(base_g, xm, diff);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) dj[static_cast<std::size_t>(k)][a][b] = (jp[a][b] - jm[a][b]) / (2.0 * diff.fd_step);
      }
    }
    double w2 = 0.0;
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double s = dj[static_cast<std::size_t>(k)][a][b];
          for (int c = 0; c < n; ++c) s += gam(a, k, c) * j[c][b] - gam(c, k, b) * j[a][c];
          w2 = std::max(w2, std::abs(s));
        }
    nj.add(w2);

    auto nab = covariant_derivative_form(gbar, omega, pt, diff);
    double w3 = 0.0;
    for (const auto& dir : nab.by_direction)
      for (const auto& v : dir) w3 = std::max(w3, abs(v));
    nw.add(w3);

    // omega(X, Y) = gbar(J X, Y)
    auto gm = gbar.at(pt);
    auto om = omega.components(pt);
    double w4 = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += j[c][a] * gm[c][b];
        std::vector<int> idx{a, b};
        w4 = std::max(w4, abs(component_at(om, n, idx) - Complex(s)));
      }
    compat.add(w4);

    auto sv = shown.components(pt);
    double w5 = 0.0;
    for (std::size_t k = 0; k < om.size(); ++k) w5 = std::max(w5, abs(om[k] - sv[k]));
    disp.add(w5);
  }
  return aggregate("kahler", {jj.finish("J^2", tol.j_squared), nj.finish("nabla-J", tol.parallel),
                              nw.finish("nabla-omega", tol.parallel), compat.finish("omega-compatibility", tol.parallel),
                              disp.finish("omega-display", tol.display)});
}

GeodesicTrajectory geodesic_flow(const MetricField& g, const ChartPoint& p0, const std::vector<double>& v0, double t_end,
                                 double dt, Differentiation diff) {
  require_same_chart(g.chart(), p0.chart, "geodesic_flow");
  if (!(dt > 0.0)) throw Error("geodesic_flow: dt must be positive");
  const int n = g.dim();
  if (static_cast<int>(v0.size()) != n) throw Error("geodesic_flow: velocity has wrong dimension");
  const auto& chart = *g.chart();

  using State = std::vector<double>;  // x then v
  auto rhs = [&](const State& s) {
    Point<double> x{};
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    auto gam = christoffel_at(g, x, diff);
    State ds(static_cast<std::size_t>(2 * n), 0.0);
    for (int k = 0; k < n; ++k) {
      ds[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(n + k)];
      double a = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a -= gam(k, i, j) * s[static_cast<std::size_t>(n + i)] * s[static_cast<std::size_t>(n + j)];
      ds[static_cast<std::size_t>(n + k)] = a;
    }
    return ds;
  };
  auto inside = [&](const State& s) {
    for (int i = 0; i < n; ++i) {
      const double m = chart.margins[static_cast<std::size_t>(i)];
      if (m <= 0.0) continue;
      const auto& iv = chart.ranges[static_cast<std::size_t>(i)];
      const double v = s[static_cast<std::size_t>(i)];
      if (v < iv.lo + 0.5 * m || v > iv.hi - 0.5 * m) return false;
    }
    return true;
  };
  auto record = [&](GeodesicTrajectory& tr, double t, const State& s) {
    GeodesicState st;
    st.t = t;
    st.point = make_point(g.chart(), State(s.begin(), s.begin() + n));
    st.velocity.assign(s.begin() + n, s.end());
    tr.states.push_back(std::move(st));
  };

  GeodesicTrajectory tr;
  tr.metric = g;
  tr.step = dt;
  State s(p0.values);
  s.insert(s.end(), v0.begin(), v0.end());
  record(tr, 0.0, s);
  const auto steps = static_cast<long>(std::llround(t_end / dt));
  State tmp(s.size());
  for (long it = 1; it <= steps; ++it) {
    auto k1 = rhs(s);
    for (std::size_t q = 0; q < s.size(); ++q) tmp[q] = s[q] + 0.5 * dt * k1[q];
    auto k2 = rhs(tmp);
    for (std::size_t q = 0; q < s.size(); ++q) tmp[q] = s[q] + 0.5 * dt * k2[q];
    auto k3 = rhs(tmp);
    for (std::size_t q = 0; q < s.size(); ++q) tmp[q] = s[q] + dt * k3[q];
    auto k4 = rhs(tmp);
    for (std::size_t q = 0; q < s.size(); ++q) s[q] += dt / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
    if (!inside(s)) {
      tr.truncated = true;
      tr.note = "left the regular region at t = " + std::to_string(static_cast<double>(it) * dt);
      break;
    }
    record(tr, static_cast<double>(it) * dt, s);
  }
  return tr;
}

GeodesicTrajectory random_geodesic(const MetricField& g, double t_end, double dt, std::uint64_t seed, int max_attempts,
                                   Differentiation diff) {
  const int n = g.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto p0 = sample_points(g.chart(), 1, rng())[0];
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& c : v) c = normal(rng);
    auto gm = g.at(p0);
    double e = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e += gm[i][j] * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    for (auto& c : v) c /= std::sqrt(e);
    auto tr = geodesic_flow(g, p0, v, t_end, dt, diff);
    if (!tr.truncated) return tr;
  }
  throw Error("random_geodesic: no trajectory stayed in the regular region");
}

ResidualReport conserved_quantity_drift(const StackelKillingTensor& k, const GeodesicTrajectory& traj, double tolerance,
                                        double eps) {
  if (traj.states.empty()) throw Error("conserved_quantity_drift: empty trajectory");
  require_same_chart(k.chart(), traj.states.front().point.chart, "conserved_quantity_drift");
  const double q0 = k.quadratic(traj.states.front().point, traj.states.front().velocity);
  const double scale = std::max(std::abs(q0), eps);
  ResidualAccumulator acc;
  double kmax = 0.0;
  const int n = static_cast<int>(traj.states.front().velocity.size());
  for (const auto& s : traj.states) {
    auto m = k.at(s.point);
    double q = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        kmax = std::max(kmax, std::abs(m[i][j]));
        q += m[i][j] * s.velocity[static_cast<std::size_t>(i)] * s.velocity[static_cast<std::size_t>(j)];
      }
    acc.add((q - q0) / scale);
  }
  auto r = acc.finish("conserved-quantity", tolerance);
  r.fitted["Q0"] = q0;
  r.fitted["K_max"] = kmax;
  if (kmax < 1e-12) r.notes.push_back("tensor vanishes identically along the trajectory");
  return r;
}

ResidualReport linear_quantity_drift(const DiffForm& alpha, const GeodesicTrajectory& traj, double tolerance, double eps) {
  if (alpha.degree() != 1) throw Error("linear_quantity_drift: needs a 1-form");
  if (traj.states.empty()) throw Error("linear_quantity_drift: empty trajectory");
  auto q = [&](const GeodesicState& s) {
    auto a = alpha.components(s.point);
    double v = 0.0;
    for (std::size_t i = 0; i < s.velocity.size(); ++i) v += a[i].re * s.velocity[i];
    return v;
  };
  const double q0 = q(traj.states.front());
  const double scale = std::max(std::abs(q0), eps);
  ResidualAccumulator acc;
  for (const auto& s : traj.states) acc.add((q(s) - q0) / scale);
  auto r = acc.finish("linear-quantity", tolerance);
  r.fitted["Q0"] = q0;
  return r;
}

}  // namespace skf
