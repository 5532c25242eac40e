#include "skf/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace skf {

namespace {

struct Facets {
  RealVec lA;
  double lB = 0.0;
  double linf = 0.0;
};

Facets facet_values(const FacetFunctions& f, const RealVec& y) {
  Facets v{f.all(y), f.l_reeb(y), f.l_infinity(y)};
  for (double l : v.lA)
    if (!(l > 0.0)) throw OutOfDomain("symplectic potential: y lies on or outside a facet");
  if (!(v.lB > 0.0)) throw OutOfDomain("symplectic potential: <B, y> is not positive");
  if (!(v.linf > 0.0)) throw OutOfDomain("symplectic potential: l_inf(y) is not positive");
  return v;
}

void check_dim(const SymplecticPotential& sp, const RealVec& y) {
  if (static_cast<int>(y.size()) != sp.td.n) throw Error("symplectic potential: dimension mismatch");
}

RealVec h_gradient(const SymplecticPotential& sp, const RealVec& y) {
  RealVec g(y.size(), 0.0);
  if (!sp.h) return g;
  for (std::size_t i = 0; i < y.size(); ++i) {
    RealVec p = y, m = y;
    p[i] += sp.h_step;
    m[i] -= sp.h_step;
    g[i] = (sp.h(p) - sp.h(m)) / (2.0 * sp.h_step);
  }
  return g;
}

Matrix h_hessian(const SymplecticPotential& sp, const RealVec& y) {
  const std::size_t n = y.size();
  Matrix H(n, RealVec(n, 0.0));
  if (!sp.h) return H;
  const double e = sp.h_step;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto at = [&](double a, double b) {
        RealVec p = y;
        p[i] += a;
        p[j] += b;
        return sp.h(p);
      };
      double v = (at(e, e) - at(e, -e) - at(-e, e) + at(-e, -e)) / (4.0 * e * e);
      H[i][j] = H[j][i] = v;
    }
  return H;
}

}  // namespace

SymplecticPotential::SymplecticPotential(ToricData data, std::function<double(const RealVec&)> extra)
    : td(std::move(data)), h(std::move(extra)) {
  td.validate();
  td.require_reeb();
}

double eval_G(const SymplecticPotential& sp, const RealVec& y) {
  check_dim(sp, y);
  FacetFunctions f(sp.td);
  auto v = facet_values(f, y);
  double g = 0.0;
  for (double l : v.lA) g += 0.5 * l * std::log(l);
  g += 0.5 * v.lB * std::log(v.lB) - 0.5 * v.linf * std::log(v.linf);
  if (sp.h) g += sp.h(y);
  return g;
}

RealVec grad_G(const SymplecticPotential& sp, const RealVec& y) {
  check_dim(sp, y);
  FacetFunctions f(sp.td);
  auto v = facet_values(f, y);
  const auto& B = f.reeb();
  const auto& sum = f.normal_sum();
  RealVec x = h_gradient(sp, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (int a = 0; a < f.count(); ++a) x[i] += 0.5 * f.normal(a)[i] * std::log(v.lA[static_cast<std::size_t>(a)]);
    x[i] += 0.5 * B[i] * (1.0 + std::log(v.lB)) - 0.5 * sum[i] * std::log(v.linf);
  }
  return x;
}

Hessian hessian_G(const SymplecticPotential& sp, const RealVec& y) {
  check_dim(sp, y);
  FacetFunctions f(sp.td);
  auto v = facet_values(f, y);
  const auto& B = f.reeb();
  const auto& sum = f.normal_sum();
  const int n = sp.td.n;
  if (n > kMaxDim) throw Error("hessian_G: torus dimension too large");
  Hessian out;
  out.G = h_hessian(sp, y);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      double s = 0.0;
      for (int a = 0; a < f.count(); ++a) s += f.normal(a)[ui] * f.normal(a)[uj] / v.lA[static_cast<std::size_t>(a)];
      s += B[ui] * B[uj] / v.lB - sum[ui] * sum[uj] / v.linf;
      out.G[ui][uj] += 0.5 * s;
    }
  Mat<double> g{}, gi{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = out.G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  try {
    spd_inverse(g, n, gi, out.det);
  } catch (const SingularMetric&) {
    throw NotPositiveDefinite("hessian_G: Hessian is not positive definite at y");
  }
  out.F.assign(static_cast<std::size_t>(n), RealVec(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.F[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = gi[i][j];
  return out;
}

LegendreResult legendre_F(const SymplecticPotential& sp, const RealVec& y) {
  LegendreResult r;
  r.x = grad_G(sp, y);
  const double g = eval_G(sp, y);
  const double xy = dot(r.x, y);
  r.F = xy - g;
  r.duality_residual = std::abs(r.F + g - xy);
  return r;
}

LegendreData legendre_data(const SymplecticPotential& sp, const RealVec& y) {
  auto h = hessian_G(sp, y);
  return {y, grad_G(sp, y), std::move(h.G), std::move(h.F)};
}

RealVec invert_gradient(const SymplecticPotential& sp, const RealVec& x, RealVec y, double tol, int max_iter) {
  check_dim(sp, y);
  const std::size_t n = y.size();
  for (int it = 0; it < max_iter; ++it) {
    auto gx = grad_G(sp, y);
    RealVec res(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res[i] = gx[i] - x[i];
      norm = std::max(norm, std::abs(res[i]));
    }
    if (norm < tol) return y;
    auto h = hessian_G(sp, y);
    RealVec step(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) step[i] -= h.F[i][j] * res[j];
    double t = 1.0;
    for (int halve = 0; halve < 60; ++halve, t *= 0.5) {
      RealVec trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = y[i] + t * step[i];
      try {
        grad_G(sp, trial);
      } catch (const OutOfDomain&) {
        continue;
      }
      y = std::move(trial);
      break;
    }
  }
  throw Error("invert_gradient: Newton iteration did not converge");
}

double ricci_flat_scalar(const SymplecticPotential& sp, const RealVec& y) {
  auto h = hessian_G(sp, y);
  return std::log(h.det) + 2.0 * grad_G(sp, y)[0];
}

ResidualReport ricci_flat_residual(const SymplecticPotential& sp, const std::vector<RealVec>& points, double tolerance) {
  std::vector<double> s;
  s.reserve(points.size());
  for (const auto& y : points) s.push_back(ricci_flat_scalar(sp, y));
  const double mean = s.empty() ? 0.0 : std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  ResidualAccumulator acc;
  for (double v : s) acc.add(v - mean);
  auto r = acc.finish("ricci-flat-potential", tolerance);
  r.fitted["c"] = -mean;
  return r;
}

std::vector<RealVec> sample_cone_interior(const ToricData& td, int n, std::uint64_t seed, double margin) {
  td.validate();
  if (n <= 0) throw Error("sample_cone_interior: need at least one point");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<RealVec> out;
  const auto dim = static_cast<std::size_t>(td.n);
  long attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > 1000000L * n) throw Error("sample_cone_interior: cone interior too thin to sample");
    RealVec y(dim);
    double norm = 0.0;
    for (auto& c : y) {
      c = 2.0 * uniform() - 1.0;
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-3 || norm > 1.0) continue;
    const double scale = (0.25 + 1.75 * uniform()) / norm;
    for (auto& c : y) c *= scale;
    if (in_cone_interior(td, y, margin * std::sqrt(dot(y, y)))) out.push_back(std::move(y));
  }
  return out;
}

double reeb_objective(const ToricData& td, const RealVec& reeb, const std::vector<RealVec>& points) {
  ToricData d = td;
  d.reeb = reeb;
  SymplecticPotential sp(std::move(d));
  std::vector<double> s;
  s.reserve(points.size());
  try {
    for (const auto& y : points) s.push_back(ricci_flat_scalar(sp, y));
  } catch (const OutOfDomain&) {
    return std::numeric_limits<double>::infinity();
  } catch (const NotPositiveDefinite&) {
    return std::numeric_limits<double>::infinity();
  }
  if (s.empty()) return 0.0;
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  return var / static_cast<double>(s.size());
}

MinimizeResult nelder_mead(const std::function<double(const RealVec&)>& f, RealVec start, double initial_step,
                           int max_iterations, double f_tol, double x_tol) {
  const std::size_t k = start.size();
  std::vector<RealVec> simplex{start};
  for (std::size_t i = 0; i < k; ++i) {
    RealVec v = start;
    v[i] += initial_step;
    simplex.push_back(std::move(v));
  }
  std::vector<double> fv;
  for (const auto& v : simplex) fv.push_back(f(v));

  auto combine = [k](const RealVec& a, const RealVec& b, double t) {
    RealVec out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  int it = 0;
  std::vector<std::size_t> order(k + 1);
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[k - 1];

    double diameter = 0.0;
    for (const auto& v : simplex)
      for (std::size_t i = 0; i < k; ++i) diameter = std::max(diameter, std::abs(v[i] - simplex[best][i]));
    if (std::isfinite(fv[worst]) && fv[worst] - fv[best] <= f_tol && diameter <= x_tol) break;

    RealVec centroid(k, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      if (j == worst) continue;
      for (std::size_t i = 0; i < k; ++i) centroid[i] += simplex[j][i] / static_cast<double>(k);
    }
    auto xr = combine(centroid, simplex[worst], -1.0);
    double fr = f(xr);
    if (fr < fv[best]) {
      auto xe = combine(centroid, simplex[worst], -2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = std::move(xr);
      fv[worst] = fr;
      continue;
    }
    // Contract towards the better of the reflected and worst points.
    const bool outside = fr < fv[worst];
    auto xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, simplex[worst], 0.5);
    double fc = f(xc);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = std::move(xc);
      fv[worst] = fc;
      continue;
    }
    for (std::size_t j = 0; j <= k; ++j) {
      if (j == best) continue;
      simplex[j] = combine(simplex[best], simplex[j], 0.5);
      fv[j] = f(simplex[j]);
    }
  }
  auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {simplex[best], fv[best], it};
}

ReebSearchResult reeb_search(const ToricData& td, const ReebSearchOptions& opts) {
  td.validate();
  if (!is_gorenstein(td)) throw Error("reeb_search: toric data is not in Gorenstein form");
  if (td.n < 2) throw Error("reeb_search: nothing to search in dimension 1");
  if (opts.n_points < 1 && opts.points.empty()) throw Error("reeb_search: need sample points");
  const double first = opts.fixed_first.value_or(static_cast<double>(td.n));
  const auto points = opts.points.empty() ? sample_cone_interior(td, opts.n_points, opts.seed) : opts.points;
  RealVec start = opts.start;
  if (start.empty()) start.assign(static_cast<std::size_t>(td.n - 1), first / td.n);
  if (static_cast<int>(start.size()) != td.n - 1) throw Error("reeb_search: start must have n - 1 components");

  auto full = [first](const RealVec& free) {
    RealVec b{first};
    b.insert(b.end(), free.begin(), free.end());
    return b;
  };
  auto objective = [&](const RealVec& free) { return reeb_objective(td, full(free), points); };
  auto m = nelder_mead(objective, start, 0.25, opts.max_iterations, opts.tolerance * 1e-10, 1e-10);

  ReebSearchResult r;
  r.reeb = full(m.x);
  r.objective = m.f;
  r.iterations = m.iterations;
  r.converged = std::isfinite(m.f) && m.f < opts.tolerance;
  return r;
}

std::array<Complex, 3> complex_coords_t11(const ChartPoint& p, ZVariant variant) {
  if (!p.chart || p.chart->dim() != 6 || p.chart->coords[0] != "r")
    throw ChartMismatch("complex_coords_t11: expects a point on the cone chart");
  for (int i : {1, 3}) {
    const double th = p[i];
    if (th < 1e-12 || th > M_PI - 1e-12) throw OutOfDomain("complex_coords_t11: theta at a coordinate singularity");
  }
  if (!(p[0] > 0.0)) throw OutOfDomain("complex_coords_t11: r must be positive");
  return t11_complex_coords(p.coords(), variant);
}

DiffForm complex_coordinate_form(const ChartPtr& cone, int k, ZVariant variant) {
  if (cone->dim() != 6) throw ChartMismatch("complex_coordinate_form: expects the cone chart");
  if (k < 0 || k > 2) throw Error("complex_coordinate_form: index must be 0, 1 or 2");
  return lambda_form(cone, 0, [k, variant](const auto& x, auto& w) {
    w.set_scalar(t11_complex_coords(x, variant)[static_cast<std::size_t>(k)]);
  });
}

SymplecticPotential conifold_potential() { return SymplecticPotential(conifold_toric_data().normalized); }

}  // namespace skf
