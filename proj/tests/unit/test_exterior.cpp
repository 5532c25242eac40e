#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "random_forms.hpp"
#include "skf/exterior.hpp"
#include "skf/metric.hpp"

using namespace skf;
using skf::testing::max_abs;
using skf::testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
enum { kTh1 = 0, kPh1 = 1, kTh2 = 2, kPh2 = 3, kPsi = 4 };

DiffForm eta_form(const ChartPtr& c) {
  return lambda_form(c, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kPsi}, T(1.0 / 3.0));
    w.add({kPh1}, skf::cos(x[0]) / 3.0);
    w.add({kPh2}, skf::cos(x[2]) / 3.0);
  });
}

ChartPoint t11_point(double th1, double ph1, double th2, double ph2, double psi) {
  return make_point(t11_chart(), {th1, ph1, th2, ph2, psi});
}

}  // namespace

TEST_CASE("basis enumeration and permutation signs") {
  const auto& b = FormBasis::get(5, 2);
  CHECK(b.size() == 10);
  CHECK(b.tuple(0) == std::vector<int>{0, 1});
  CHECK(b.tuple(9) == std::vector<int>{3, 4});
  for (int k = 0; k < b.size(); ++k) CHECK(b.index(b.mask(k)) == k);
  std::vector<int> even{2, 0, 1}, odd{1, 0, 2}, rep{1, 1, 2};
  CHECK(permutation_sign(even) == 1);
  CHECK(permutation_sign(odd) == -1);
  CHECK(permutation_sign(rep) == 0);
  CHECK(binomial(6, 3) == 20);
}

TEST_CASE("permuted and repeated component queries") {
  auto c = t11_chart();
  auto a = wedge(coordinate_differential(c, kTh1), wedge(coordinate_differential(c, kPh2), eta_form(c)));
  auto p = t11_point(0.8, 0.3, 1.9, 0.4, 2.2);
  std::vector<int> base{0, 3, 4};
  Complex canonical = a.component(p, base);
  std::vector<int> perm = base;
  std::sort(perm.begin(), perm.end());
  do {
    CHECK(abs(a.component(p, perm) - permutation_sign(perm) * canonical) < 1e-15);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(abs(a.component(p, {0, 0, 4})) == 0.0);
}

TEST_CASE("wedge antisymmetry") {
  auto c = t11_chart();
  auto d1 = coordinate_differential(c, kTh1);
  auto d2 = coordinate_differential(c, kTh2);
  auto p = t11_point(1.0, 0.0, 1.0, 0.0, 0.0);
  CHECK(max_abs(wedge(d1, d1).components(p)) == 0.0);
  CHECK(max_abs_diff(wedge(d1, d2).components(p), (-wedge(d2, d1)).components(p)) == 0.0);
  CHECK_THROWS_AS(wedge(d1, coordinate_differential(flat_chart(5), 0)), ChartMismatch);
}

TEST_CASE("T1 ^ T2 against brute-force expansion over index pairs") {
  auto c = t11_chart();
  // One-forms differentiated from the complex coordinates (angular parts).
  auto t1 = lambda_form(c, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kTh1}, skf::cot(x[0]));
    w.add({kTh2}, skf::cot(x[2]));
    w.add({kPsi}, Cx<T>(T(0.0), T(1.0)));
  });
  auto t2 = lambda_form(c, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kTh1}, 0.5 * skf::cot(0.5 * x[0]));
    w.add({kTh2}, -0.5 * skf::tan(0.5 * x[2]));
    w.add({kPsi}, Cx<T>(T(0.0), T(0.5)));
    w.add({kPh1}, Cx<T>(T(0.0), T(-0.5)));
    w.add({kPh2}, Cx<T>(T(0.0), T(0.5)));
  });
  auto p = t11_point(kPi / 2, 0.7, kPi / 2, 1.1, 0.3);
  auto a = t1.components(p), b = t2.components(p);
  auto w = wedge(t1, t2);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      // (a ^ b)(e_i, e_j) = a_i b_j - a_j b_i
      Complex expect = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                       a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)];
      CHECK(abs(w.component(p, {i, j}) - expect) < 1e-14);
    }
  }
}

TEST_CASE("exterior derivative basics") {
  auto c = t11_chart();
  auto pts = sample_points(c, 50, 7);
  auto k = constant_scalar(c, Complex(2.5, -1.0));
  auto f = scalar_field(c, [](const auto& x) { return skf::sin(x[0]) * skf::cos(x[4]); });
  auto ddf = exterior_derivative(exterior_derivative(f));
  CHECK(ddf.degree() == 2);
  for (const auto& p : pts) {
    CHECK(max_abs(exterior_derivative(k).components(p)) == 0.0);
    CHECK(max_abs(ddf.components(p)) < 1e-9);
  }
  CHECK_THROWS_AS(exterior_derivative(zero_form(c, 5)), Error);
}

TEST_CASE("d eta of the contact form") {
  auto c = t11_chart();
  auto deta = exterior_derivative(eta_form(c));
  for (const auto& p : sample_points(c, 50, 11)) {
    CHECK(abs(deta.component(p, {kTh1, kPh1}) - Complex(-std::sin(p[0]) / 3.0)) < 1e-14);
    CHECK(abs(deta.component(p, {kTh2, kPh2}) - Complex(-std::sin(p[2]) / 3.0)) < 1e-14);
    CHECK(abs(deta.component(p, {kTh1, kPsi})) == 0.0);
    CHECK(abs(deta.component(p, {kPh1, kPh2})) == 0.0);
  }
}

TEST_CASE("interior product") {
  auto c = t11_chart();
  auto eta = eta_form(c);
  auto reeb = constant_vector_field(c, {0, 0, 0, 0, 3.0});
  auto pts = sample_points(c, 100, 5);
  for (const auto& p : pts) CHECK(abs(interior_product(reeb, eta).components(p)[0] - Complex(1.0)) < 1e-14);

  auto x = make_vector_field(c, [](const auto& y, auto& v) {
    v[0] = skf::sin(y[1]);
    v[2] = y[0] * y[4];
    v[4] = skf::cos(y[3]);
  });
  auto a = wedge(eta, exterior_derivative(eta));
  auto xx = interior_product(x, interior_product(x, a));
  for (const auto& p : pts) CHECK(max_abs(xx.components(p)) < 1e-15);

  // d_r _| (dr ^ Psi) = Psi when d_r _| Psi = 0.
  auto cone = cone_chart(c);
  auto psi = pullback_to_cone(a, cone);
  auto dr = coordinate_differential(cone, 0);
  auto dr_vec = coordinate_vector_field(cone, 0);
  auto back = interior_product(dr_vec, wedge(dr, psi));
  for (const auto& p : sample_points(cone, 30, 9)) {
    CHECK(max_abs(interior_product(dr_vec, psi).components(p)) == 0.0);
    CHECK(max_abs_diff(back.components(p), psi.components(p)) < 1e-15);
  }
}

TEST_CASE("musical flat") {
  auto flat = flat_chart(5);
  auto g0 = flat_metric(flat);
  auto e0 = musical_flat(g0, coordinate_vector_field(flat, 0));
  auto pf = make_point(flat, {0.1, 0.2, 0.3, 0.4, 0.5});
  CHECK(max_abs_diff(e0.components(pf), coordinate_differential(flat, 0).components(pf)) == 0.0);

  auto c = t11_chart();
  auto g = t11_metric(c);
  auto reeb = constant_vector_field(c, {0, 0, 0, 0, 3.0});
  auto flat_b = musical_flat(g, reeb);
  auto eta = eta_form(c);
  auto twice = musical_flat(g, constant_vector_field(c, {0, 0, 0, 0, 6.0}));
  for (const auto& p : sample_points(c, 50, 2)) {
    CHECK(max_abs_diff(flat_b.components(p), eta.components(p)) < 1e-10);
    CHECK(max_abs_diff(twice.components(p), (2.0 * flat_b).components(p)) < 1e-15);
  }
}

TEST_CASE("hodge star") {
  auto c = t11_chart();
  auto g = t11_metric(c);
  auto one = constant_scalar(c, Complex(1.0));
  auto vol = hodge_star(g, one);
  CHECK(vol.degree() == 5);
  auto th1 = coordinate_differential(c, kTh1);
  auto ss = hodge_star(g, hodge_star(g, th1));  // (-1)^{1*4} = +1
  for (const auto& p : sample_points(c, 50, 3)) {
    auto gm = g.at(p);
    Mat<double> a = gm;
    double det = small_det<double>(a, 5);
    CHECK(std::abs(vol.components(p)[0].re - std::sqrt(det)) < 1e-14);
    CHECK(max_abs_diff(ss.components(p), th1.components(p)) < 1e-10);
  }
  auto r3 = flat_chart(3);
  auto star_dx1 = hodge_star(flat_metric(r3), coordinate_differential(r3, 0));
  auto p = make_point(r3, {0.1, -0.4, 0.3});
  CHECK(abs(star_dx1.component(p, {1, 2}) - Complex(1.0)) < 1e-15);
  CHECK(abs(star_dx1.component(p, {0, 2})) == 0.0);
  // ** on 2-forms in 5 dimensions: (-1)^{2*3} = +1; on 2-forms in 4: +1; 1-forms in 4: -1.
  auto r4 = flat_chart(4);
  auto dx = coordinate_differential(r4, 2);
  auto p4 = make_point(r4, {0.1, 0.2, 0.3, 0.4});
  auto ss4 = hodge_star(flat_metric(r4), hodge_star(flat_metric(r4), dx));
  CHECK(max_abs_diff(ss4.components(p4), (-dx).components(p4)) == 0.0);
}

TEST_CASE("hodge involution on random 2-forms") {
  auto c = t11_chart();
  auto g = t11_metric(c);
  std::mt19937_64 rng(99);
  auto a = wedge(skf::testing::random_one_form(c, rng), skf::testing::random_one_form(c, rng));
  auto ss = hodge_star(g, hodge_star(g, a));
  for (const auto& p : sample_points(c, 50, 4)) CHECK(max_abs_diff(ss.components(p), a.components(p)) < 1e-10);
}

TEST_CASE("codifferential") {
  auto c = t11_chart();
  auto g = t11_metric(c);
  auto vol_c = hodge_star(g, constant_scalar(c, Complex(2.0)));
  auto eta = eta_form(c);
  auto d_eta = codifferential(g, eta);
  CHECK(d_eta.degree() == 0);
  for (const auto& p : sample_points(c, 100, 21)) {
    CHECK(max_abs(codifferential(g, vol_c).components(p)) < 1e-12);
    CHECK(max_abs(d_eta.components(p)) < 1e-7);
  }
}

TEST_CASE("codifferential agrees with the divergence formula") {
  // Independent oracle: (d* a)_J = - g^{ik} nabla_i a_{kJ}.
  auto c = t11_chart();
  auto g = t11_metric(c);
  std::mt19937_64 rng(5);
  auto a = wedge(skf::testing::random_one_form(c, rng), skf::testing::random_one_form(c, rng));
  auto da = codifferential(g, a);
  for (const auto& p : sample_points(c, 10, 8)) {
    auto nabla = covariant_derivative_form(g, a, p);
    auto gm = g.at(p);
    Mat<double> gi;
    double det;
    spd_inverse(gm, 5, gi, det);
    auto got = da.components(p);
    const auto& b1 = FormBasis::get(5, 1);
    for (int j = 0; j < b1.size(); ++j) {
      int jj = b1.tuple(j)[0];
      Complex s{0.0, 0.0};
      for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
          std::vector<int> idx{k, jj};
          s += gi[i][k] * component_at(nabla.by_direction[static_cast<std::size_t>(i)], 5, idx);
        }
      CHECK(abs(got[static_cast<std::size_t>(j)] + s) < 1e-10);
    }
  }
}

TEST_CASE("property: d^2 = 0 on random 0- and 1-forms") {
  auto c = t11_chart();
  std::mt19937_64 rng(2024);
  auto pts = sample_points(c, 50, 77);
  for (int f = 0; f < 20; ++f) {
    DiffForm a = (f % 2 == 0) ? skf::testing::random_scalar(c, rng) : skf::testing::random_one_form(c, rng);
    auto dd = exterior_derivative(exterior_derivative(a));
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, max_abs(dd.components(p)));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("property: graded commutativity and Leibniz rule") {
  auto c = t11_chart();
  std::mt19937_64 rng(31337);
  auto pts = sample_points(c, 50, 78);
  for (int f = 0; f < 20; ++f) {
    auto a = skf::testing::random_one_form(c, rng);
    DiffForm b = (f % 2 == 0) ? skf::testing::random_one_form(c, rng)
                              : wedge(skf::testing::random_one_form(c, rng), skf::testing::random_one_form(c, rng));
    const int p = a.degree(), q = b.degree();
    double sign = ((p * q) & 1) ? -1.0 : 1.0;
    auto ab = wedge(a, b), ba = wedge(b, a);
    auto lhs = exterior_derivative(ab);
    auto rhs = wedge(exterior_derivative(a), b) + ((p & 1) ? -1.0 : 1.0) * wedge(a, exterior_derivative(b));
    // Products of random factors can be large, so compare relative to the size.
    double comm = 0.0, leib = 0.0;
    for (const auto& pt : pts) {
      auto abv = ab.components(pt);
      auto lv = lhs.components(pt);
      comm = std::max(comm, max_abs_diff(abv, (sign * ba).components(pt)) / (1.0 + max_abs(abv)));
      leib = std::max(leib, max_abs_diff(lv, rhs.components(pt)) / (1.0 + max_abs(lv)));
    }
    CHECK(comm < 1e-14);
    CHECK(leib < 1e-8);
  }
}

TEST_CASE("property: Cartan formula on 1-forms") {
  // (X _| da)(.) with f a: d(f a) = df ^ a + f da, then X _| d(f a) expanded.
  auto c = t11_chart();
  std::mt19937_64 rng(8);
  auto pts = sample_points(c, 50, 79);
  auto x = make_vector_field(c, [](const auto& y, auto& v) {
    v[0] = skf::cos(y[4]);
    v[1] = y[0];
    v[4] = skf::sin(y[2]);
  });
  for (int f = 0; f < 20; ++f) {
    auto a = skf::testing::random_one_form(c, rng);
    auto s = skf::testing::random_scalar(c, rng);
    auto lhs = interior_product(x, exterior_derivative(wedge(s, a)));
    auto rhs = wedge(interior_product(x, exterior_derivative(s)), a) -
               wedge(exterior_derivative(s), interior_product(x, a)) + wedge(s, interior_product(x, exterior_derivative(a)));
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, max_abs_diff(lhs.components(p), rhs.components(p)));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("property: jet derivatives match central differences") {
  auto c = t11_chart();
  std::mt19937_64 rng(17);
  auto pts = sample_points(c, 20, 80);
  for (int f = 0; f < 20; ++f) {
    ScalarField s(skf::testing::random_scalar(c, rng));
    for (const auto& p : pts) {
      auto j = s.jet(p);
      auto fd = s.fd_gradient(p, 1e-5);
      for (int i = 0; i < 5; ++i) CHECK(abs(j.gradient[static_cast<std::size_t>(i)] - fd[static_cast<std::size_t>(i)]) < 1e-6);
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          CHECK(abs(j.hessian[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -
                    j.hessian[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]) == 0.0);
    }
  }
  // Hessian against a hand computation: f = skf::sin(th1) skf::cos(psi).
  ScalarField f(scalar_field(c, [](const auto& x) { return skf::sin(x[0]) * skf::cos(x[4]); }));
  auto p = t11_point(0.7, 0.0, 1.0, 0.0, 0.4);
  auto j = f.jet(p);
  CHECK(std::abs(j.hessian[0][4].re + std::cos(0.7) * std::sin(0.4)) < 1e-14);
  CHECK(std::abs(j.hessian[0][0].re + std::sin(0.7) * std::cos(0.4)) < 1e-14);
}

TEST_CASE("finite-difference mode agrees with analytic mode") {
  auto c = t11_chart();
  auto f = scalar_field(c, [](const auto& x) { return skf::sin(x[0]) * skf::cos(x[4]) + x[2] * x[3]; });
  Differentiation fd{Differentiation::Mode::kFiniteDifference, 1e-5};
  auto da = exterior_derivative(f);
  auto df = exterior_derivative(f, fd);
  for (const auto& p : sample_points(c, 20, 1)) CHECK(max_abs_diff(da.components(p), df.components(p)) < 1e-8);
}
