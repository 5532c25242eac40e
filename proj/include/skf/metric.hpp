#pragma once

// Riemannian metrics: built-in fields, Levi-Civita connection, covariant
// derivatives and Ricci curvature in coordinates.

#include <vector>

#include "skf/exterior.hpp"
#include "skf/field.hpp"
#include "skf/linalg.hpp"
#include "skf/report.hpp"

namespace skf {

// ds^2 = a (dth1^2 + sin^2 th1 dph1^2 + dth2^2 + sin^2 th2 dph2^2)
//      + b (dpsi + cos th1 dph1 + cos th2 dph2)^2
// with the Sasaki-Einstein values a = 1/6, b = 1/9 by default.
MetricField t11_metric(ChartPtr chart = t11_chart(), double round_coeff = 1.0 / 6.0, double fiber_coeff = 1.0 / 9.0);

// dr^2 + r^2 g on the cone chart over g's chart.
MetricField cone_metric(const MetricField& g, ChartPtr cone);
MetricField cone_metric(const MetricField& g);

MetricField flat_metric(ChartPtr chart);
MetricField round_sphere_metric(ChartPtr chart = sphere_chart());

// Rank-3 array indexed (k, i, j), row-major.
template <class T>
struct Array3 {
  int n = 0;
  std::vector<T> data;

  explicit Array3(int dim = 0) : n(dim), data(static_cast<std::size_t>(dim * dim * dim), T(0.0)) {}
  T& operator()(int k, int i, int j) { return data[static_cast<std::size_t>((k * n + i) * n + j)]; }
  const T& operator()(int k, int i, int j) const { return data[static_cast<std::size_t>((k * n + i) * n + j)]; }
};

// Coordinate derivatives dg[k](i, j) = d_k g_ij.
template <class T>
Array3<T> metric_derivatives(const SymTensorNode& g, const Point<T>& x, int n, Differentiation diff) {
  Array3<T> dg(n);
  if (diff.analytic()) {
    if constexpr (kCanDifferentiate<T>) {
      auto xd = promote(x, n);
      Mat<Dual<T>> gd;
      for (int k = 0; k < n; ++k) {
        xd[static_cast<std::size_t>(k)].d = T(1.0);
        g.eval(xd, gd);
        xd[static_cast<std::size_t>(k)].d = T(0.0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dg(k, i, j) = gd[i][j].d;
      }
    } else {
      throw DepthError();
    }
  } else {
    const double h = diff.fd_step;
    Mat<T> gp, gm;
    for (int k = 0; k < n; ++k) {
      Point<T> xp = x, xm = x;
      xp[static_cast<std::size_t>(k)] += h;
      xm[static_cast<std::size_t>(k)] -= h;
      g.eval(xp, gp);
      g.eval(xm, gm);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dg(k, i, j) = (gp[i][j] - gm[i][j]) / (2.0 * h);
    }
  }
  return dg;
}

// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), stored as (k, i, j).
template <class T>
Array3<T> christoffel_at(const MetricField& metric, const Point<T>& x, Differentiation diff = {}) {
  const int n = metric.dim();
  Mat<T> g, gi;
  metric.node().eval(x, g);
  T det;
  spd_inverse(g, n, gi, det);
  auto dg = metric_derivatives(metric.node(), x, n, diff);
  Array3<T> lower(n);  // Gamma_{l ij}
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) lower(l, i, j) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
  Array3<T> gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        T s(0.0);
        for (int l = 0; l < n; ++l) s += gi[k][l] * lower(l, i, j);
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
  return gamma;
}

Array3<double> christoffel(const MetricField& g, const ChartPoint& p, Differentiation diff = {});

// Covariant derivative of a p-form: by_direction[i] holds the components of
// nabla_i a on the canonical p-form basis.
struct FormCovariantDerivative {
  int dim = 0;
  int degree = 0;
  std::vector<std::vector<Complex>> by_direction;
};

FormCovariantDerivative covariant_derivative_form(const MetricField& g, const DiffForm& a, const ChartPoint& p,
                                                  Differentiation diff = {});

// nabla_k K_ij for a symmetric covariant 2-tensor, stored as (k, i, j).
Array3<double> covariant_derivative_sym(const MetricField& g, const SymTensorNode& k, const ChartPoint& p,
                                        Differentiation diff = {});

Matrix ricci(const MetricField& g, const ChartPoint& p, Differentiation diff = {});

// max_ij |Ric_ij - lambda g_ij| over the points.
ResidualReport einstein_residual(const MetricField& g, double lambda, const std::vector<ChartPoint>& points,
                                 double tolerance, Differentiation diff = {});

// max_ijk |nabla_k g_ij|, a construction identity of the Levi-Civita connection.
double metric_compatibility_residual(const MetricField& g, const ChartPoint& p, Differentiation diff = {});

}  // namespace skf
