#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skf/metric.hpp"

using namespace skf;

namespace {

double max_entry_diff(const Matrix& a, const MetricField& g, const ChartPoint& p, double lambda) {
  auto gv = g.at(p);
  double worst = 0.0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      worst = std::max(worst, std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - lambda * gv[i][j]));
  return worst;
}

}  // namespace

TEST_CASE("t11 metric values") {
  auto g = t11_metric();
  auto p = make_point(g.chart(), {std::numbers::pi / 2, 0.0, std::numbers::pi / 2, 0.0, 0.0});
  auto m = g.at(p);
  CHECK(m[0][0] == doctest::Approx(1.0 / 6.0));
  CHECK(m[4][4] == doctest::Approx(1.0 / 9.0));
  CHECK(m[1][4] == doctest::Approx(0.0).epsilon(1e-15));
  auto q = make_point(g.chart(), {0.7, 0.0, 1.2, 0.0, 0.0});
  auto mq = g.at(q);
  CHECK(mq[1][4] == doctest::Approx(std::cos(0.7) / 9.0));
  CHECK(mq[1][3] == doctest::Approx(std::cos(0.7) * std::cos(1.2) / 9.0));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(mq[i][j] == mq[j][i]);
}

TEST_CASE("cone metric values") {
  auto g = cone_metric(t11_metric());
  auto p = make_point(g.chart(), {2.0, 1.0, 0.0, 1.0, 0.0, 0.0});
  auto m = g.at(p);
  CHECK(m[0][0] == 1.0);
  CHECK(m[1][1] == doctest::Approx(4.0 / 6.0));
  CHECK(m[5][5] == doctest::Approx(4.0 / 9.0));
  for (int i = 1; i < 6; ++i) CHECK(m[0][i] == 0.0);
}

TEST_CASE("flat Christoffel symbols vanish") {
  auto c = flat_chart(4);
  auto g = flat_metric(c);
  auto gam = christoffel(g, make_point(c, {0.1, 0.2, 0.3, 0.4}));
  for (double v : gam.data) CHECK(v == 0.0);
}

TEST_CASE("round sphere connection and curvature") {
  auto g = round_sphere_metric();
  auto p = make_point(g.chart(), {std::numbers::pi / 4, 0.3});
  auto gam = christoffel(g, p);
  CHECK(gam(0, 1, 1) == doctest::Approx(-0.5));
  CHECK(gam(1, 0, 1) == doctest::Approx(1.0));
  CHECK(max_entry_diff(ricci(g, p), g, p, 1.0) < 1e-12);
}

TEST_CASE("Einstein conditions") {
  auto base = t11_metric();
  auto rep = einstein_residual(base, 4.0, sample_points(base.chart(), 100, 12), 1e-8);
  CHECK(rep.pass);
  CHECK(rep.n_points == 100);
  CHECK(rep.max_abs < 1e-10);

  auto cone = cone_metric(base);
  auto flat = einstein_residual(cone, 0.0, sample_points(cone.chart(), 50, 13), 1e-8);
  CHECK(flat.pass);

  // A perturbed round coefficient is not Einstein with constant 4.
  auto bad = t11_metric(t11_chart(), 1.0 / 5.0);
  CHECK_FALSE(einstein_residual(bad, 4.0, sample_points(bad.chart(), 20, 12), 1e-8).pass);
}

TEST_CASE("finite differences reproduce the analytic connection") {
  auto g = t11_metric();
  Differentiation fd{Differentiation::Mode::kFiniteDifference, 1e-5};
  for (const auto& p : sample_points(g.chart(), 30, 14)) {
    auto a = christoffel(g, p);
    auto f = christoffel(g, p, fd);
    for (std::size_t k = 0; k < a.data.size(); ++k) CHECK(std::abs(a.data[k] - f.data[k]) < 1e-4);
    CHECK(max_entry_diff(ricci(g, p, fd), g, p, 4.0) < 1e-4);
  }
}

TEST_CASE("metric compatibility") {
  auto g = t11_metric();
  auto cone = cone_metric(g);
  for (const auto& p : sample_points(g.chart(), 30, 15)) CHECK(metric_compatibility_residual(g, p) < 1e-12);
  for (const auto& p : sample_points(cone.chart(), 30, 16)) CHECK(metric_compatibility_residual(cone, p) < 1e-12);
}

TEST_CASE("degenerate metrics are rejected") {
  auto c = t11_chart();
  auto g = make_metric(c, [](const auto& x, auto& m) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < 4; ++i) m[i][i] = T(1.0);
  });
  CHECK_THROWS_AS(christoffel(g, make_point(c, {1.0, 0.0, 1.0, 0.0, 0.0})), SingularMetric);
}

TEST_CASE("covariant derivative of the contact form is antisymmetric") {
  // The Reeb field is Killing, so nabla eta is a 2-form.
  auto g = t11_metric();
  auto eta = musical_flat(g, constant_vector_field(g.chart(), {0, 0, 0, 0, 3.0}));
  for (const auto& p : sample_points(g.chart(), 30, 17)) {
    auto n = covariant_derivative_form(g, eta, p);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(abs(n.by_direction[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                  n.by_direction[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) < 1e-12);
  }
}
