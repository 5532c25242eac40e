#include "skf/metric.hpp"

#include <algorithm>
#include <cmath>

namespace skf {

MetricField t11_metric(ChartPtr chart, double round_coeff, double fiber_coeff) {
  if (chart->dim() != 5) throw Error("t11_metric: needs a 5-dimensional chart");
  return make_metric(std::move(chart), [a = round_coeff, b = fiber_coeff](const auto& x, auto& g) {
    using T = std::decay_t<decltype(x[0])>;
    T c1 = cos(x[0]), s1 = sin(x[0]);
    T c2 = cos(x[2]), s2 = sin(x[2]);
    // Fiber one-form e = dpsi + cos th1 dph1 + cos th2 dph2.
    std::array<T, 5> e{T(0.0), c1, T(0.0), c2, T(1.0)};
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j) g[i][j] = g[j][i] = b * e[i] * e[j];
    g[0][0] += a;
    g[2][2] += a;
    g[1][1] += a * s1 * s1;
    g[3][3] += a * s2 * s2;
  });
}

MetricField cone_metric(const MetricField& g, ChartPtr cone) {
  if (cone->dim() != g.dim() + 1) throw ChartMismatch("cone_metric: cone chart does not match base metric");
  auto base = g.ptr();
  const int nb = g.dim();
  return make_metric(std::move(cone), [base, nb](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    Point<T> xb{};
    for (int i = 0; i < nb; ++i) xb[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i + 1)];
    Mat<T> gb;
    base->eval(xb, gb);
    const T r2 = x[0] * x[0];
    out[0][0] = T(1.0);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) out[i + 1][j + 1] = r2 * gb[i][j];
  });
}

MetricField cone_metric(const MetricField& g) { return cone_metric(g, cone_chart(g.chart())); }

MetricField flat_metric(ChartPtr chart) {
  const int n = chart->dim();
  return make_metric(std::move(chart), [n](const auto& x, auto& g) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < n; ++i) g[i][i] = T(1.0);
  });
}

MetricField round_sphere_metric(ChartPtr chart) {
  if (chart->dim() != 2) throw Error("round_sphere_metric: needs a 2-dimensional chart");
  return make_metric(std::move(chart), [](const auto& x, auto& g) {
    using T = std::decay_t<decltype(x[0])>;
    T s = sin(x[0]);
    g[0][0] = T(1.0);
    g[1][1] = s * s;
  });
}

Array3<double> christoffel(const MetricField& g, const ChartPoint& p, Differentiation diff) {
  require_same_chart(g.chart(), p.chart, "christoffel");
  return christoffel_at(g, p.coords(), diff);
}

FormCovariantDerivative covariant_derivative_form(const MetricField& g, const DiffForm& a, const ChartPoint& p,
                                                  Differentiation diff) {
  require_same_chart(g.chart(), a.chart(), "covariant_derivative_form");
  require_same_chart(g.chart(), p.chart, "covariant_derivative_form");
  const int n = a.dim();
  const int deg = a.degree();
  const auto x = p.coords();
  auto gamma = christoffel_at(g, x, diff);
  const auto& basis = FormBasis::get(n, deg);
  auto c = a.at(x);

  FormCovariantDerivative out;
  out.dim = n;
  out.degree = deg;
  out.by_direction.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(basis.size())));

  // Partial derivatives.
  if (diff.analytic()) {
    auto xd = promote(x, n);
    for (int i = 0; i < n; ++i) {
      xd[static_cast<std::size_t>(i)].d = 1.0;
      auto cd = a.at(xd);
      xd[static_cast<std::size_t>(i)].d = 0.0;
      for (int k = 0; k < basis.size(); ++k)
        out.by_direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = derivative_of(cd[static_cast<std::size_t>(k)]);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(i)] += diff.fd_step;
      xm[static_cast<std::size_t>(i)] -= diff.fd_step;
      auto cp = a.at(xp), cm = a.at(xm);
      for (int k = 0; k < basis.size(); ++k)
        out.by_direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            (cp[static_cast<std::size_t>(k)] - cm[static_cast<std::size_t>(k)]) / (2.0 * diff.fd_step);
    }
  }

  // Connection terms: - sum_m Gamma^l_{i j_m} a_{j_1 .. l .. j_p}.
  std::vector<int> idx(static_cast<std::size_t>(deg));
  for (int k = 0; k < basis.size(); ++k) {
    auto tuple = basis.tuple(k);
    for (int i = 0; i < n; ++i) {
      Complex corr{0.0, 0.0};
      for (int m = 0; m < deg; ++m) {
        for (int l = 0; l < n; ++l) {
          double gam = gamma(l, i, tuple[static_cast<std::size_t>(m)]);
          if (gam == 0.0) continue;
          idx = tuple;
          idx[static_cast<std::size_t>(m)] = l;
          corr += gam * component_at(c, n, idx);
        }
      }
      out.by_direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -= corr;
    }
  }
  return out;
}

Array3<double> covariant_derivative_sym(const MetricField& g, const SymTensorNode& k, const ChartPoint& p,
                                        Differentiation diff) {
  require_same_chart(g.chart(), k.chart(), "covariant_derivative_sym");
  const int n = g.dim();
  const auto x = p.coords();
  auto gamma = christoffel_at(g, x, diff);
  auto dk = metric_derivatives(k, x, n, diff);
  Mat<double> kv;
  k.eval(x, kv);
  Array3<double> out(n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = dk(c, i, j);
        for (int l = 0; l < n; ++l) s -= gamma(l, c, i) * kv[l][j] + gamma(l, c, j) * kv[i][l];
        out(c, i, j) = s;
      }
  return out;
}

Matrix ricci(const MetricField& g, const ChartPoint& p, Differentiation diff) {
  require_same_chart(g.chart(), p.chart, "ricci");
  const int n = g.dim();
  const auto x = p.coords();
  auto gamma = christoffel_at(g, x, diff);
  // dgamma[m](k, i, j) = d_m Gamma^k_ij
  std::vector<Array3<double>> dgamma;
  dgamma.reserve(static_cast<std::size_t>(n));
  if (diff.analytic()) {
    auto xd = promote(x, n);
    for (int m = 0; m < n; ++m) {
      xd[static_cast<std::size_t>(m)].d = 1.0;
      auto gd = christoffel_at(g, xd, diff);
      xd[static_cast<std::size_t>(m)].d = 0.0;
      Array3<double> d(n);
      for (std::size_t q = 0; q < d.data.size(); ++q) d.data[q] = gd.data[q].d;
      dgamma.push_back(std::move(d));
    }
  } else {
    for (int m = 0; m < n; ++m) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(m)] += diff.fd_step;
      xm[static_cast<std::size_t>(m)] -= diff.fd_step;
      auto gp = christoffel_at(g, xp, diff);
      auto gm = christoffel_at(g, xm, diff);
      Array3<double> d(n);
      for (std::size_t q = 0; q < d.data.size(); ++q) d.data[q] = (gp.data[q] - gm.data[q]) / (2.0 * diff.fd_step);
      dgamma.push_back(std::move(d));
    }
  }
  Matrix ric(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += dgamma[static_cast<std::size_t>(k)](k, i, j) - dgamma[static_cast<std::size_t>(j)](k, i, k);
        for (int l = 0; l < n; ++l) s += gamma(k, k, l) * gamma(l, i, j) - gamma(k, j, l) * gamma(l, i, k);
      }
      ric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  return ric;
}

ResidualReport einstein_residual(const MetricField& g, double lambda, const std::vector<ChartPoint>& points,
                                 double tolerance, Differentiation diff) {
  ResidualAccumulator acc;
  for (const auto& p : points) {
    auto ric = ricci(g, p, diff);
    auto gv = g.at(p);
    double worst = 0.0;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        worst = std::max(worst, std::abs(ric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - lambda * gv[i][j]));
    acc.add(worst);
  }
  auto r = acc.finish("einstein", tolerance);
  r.fitted["lambda"] = lambda;
  return r;
}

double metric_compatibility_residual(const MetricField& g, const ChartPoint& p, Differentiation diff) {
  auto ng = covariant_derivative_sym(g, g.node(), p, diff);
  double worst = 0.0;
  for (double v : ng.data) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace skf
