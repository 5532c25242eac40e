#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skf/toric.hpp"

using namespace skf;

TEST_CASE("conifold toric data") {
  auto c = conifold_toric_data();
  CHECK(c.raw.normals[0] == IntVec{-1, 0, 1});
  CHECK(c.T.det() == 1);
  CHECK(c.T.apply(IntVec{-1, 0, 1}) == IntVec{1, 1, 1});
  std::vector<IntVec> expect{{1, 1, 1}, {1, 0, 1}, {1, 0, 0}, {1, 1, 0}};
  CHECK(c.normalized.normals == expect);
  REQUIRE(c.normalized.reeb.has_value());
  CHECK(*c.normalized.reeb == RealVec{3.0, 1.5, 1.5});
}

TEST_CASE("apply_transform") {
  auto c = conifold_toric_data();
  UnimodularTransform id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  auto same = apply_transform(id, c.raw);
  CHECK(same.normals == c.raw.normals);
  CHECK(*same.reeb == *c.raw.reeb);

  auto back = apply_transform(c.T.inverse(), c.normalized);
  CHECK(back.normals == c.raw.normals);
  CHECK(*back.reeb == *c.raw.reeb);

  UnimodularTransform bad{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(apply_transform(bad, c.raw), Error);
  UnimodularTransform small{{{1, 0}, {0, 1}}};
  CHECK_THROWS_AS(apply_transform(small, c.raw), Error);
}

TEST_CASE("validation of normals") {
  ToricData td{2, {{2, 4}, {1, 0}}, std::nullopt};
  CHECK_THROWS_AS(td.validate(), Error);
  ToricData few{3, {{1, 0, 0}, {0, 1, 0}}, std::nullopt};
  CHECK_THROWS_AS(few.validate(), Error);
  CHECK(is_primitive({3, -5}));
  CHECK_FALSE(is_primitive({0, 0}));
}

TEST_CASE("Gorenstein condition") {
  auto c = conifold_toric_data();
  CHECK(is_gorenstein(c.normalized));
  CHECK_FALSE(is_gorenstein(c.raw));
  CHECK(is_gorenstein(ToricData{2, {{1, 7}}, std::nullopt}));
}

TEST_CASE("facet functions") {
  auto c = conifold_toric_data();
  auto f = facet_functions(c.normalized);
  RealVec y{1.0 / 6.0, 0.0, 0.0};
  for (int a = 0; a < 4; ++a) CHECK(f.l(a, y) == doctest::Approx(1.0 / 6.0));
  CHECK(f.l_reeb(y) == doctest::Approx(0.5));
  CHECK(std::log(f.l_reeb(y)) == doctest::Approx(-std::log(2.0)));
  CHECK(f.l_infinity(y) == doctest::Approx(2.0 / 3.0));
  CHECK(std::log(f.l_infinity(y)) == doctest::Approx(std::log(2.0) - std::log(3.0)));
  CHECK(f.normal_sum() == RealVec{4.0, 2.0, 2.0});
  CHECK_THROWS_AS(facet_functions(ToricData{3, c.raw.normals, std::nullopt}).l_reeb(y), Error);
}

TEST_CASE("momentum maps") {
  auto cone = cone_chart(t11_chart());
  const double h = std::numbers::pi / 2;
  auto p = make_point(cone, {1.0, h, 0.0, h, 0.0, 0.0});
  auto mt = momentum_map_t11(p, MomentumBasis::kTransformed);
  auto mo = momentum_map_t11(p, MomentumBasis::kOriginal);
  CHECK(mt[0] == doctest::Approx(1.0 / 6.0));
  CHECK(std::abs(mt[1]) < 1e-16);
  CHECK(std::abs(mt[2]) < 1e-16);
  CHECK(mo[0] == doctest::Approx(1.0 / 6.0));
  CHECK(mo[1] == doctest::Approx(1.0 / 6.0));
  CHECK(mo[2] == doctest::Approx(1.0 / 3.0));

  auto q = make_point(cone, {0.7, 0.4, 1.0, 2.1, 0.2, 0.3});
  auto q2 = q;
  q2.values[0] *= 2.0;
  auto a = momentum_map_t11(q, MomentumBasis::kTransformed), b = momentum_map_t11(q2, MomentumBasis::kTransformed);
  for (int i = 0; i < 3; ++i) CHECK(b[static_cast<std::size_t>(i)] == doctest::Approx(4.0 * a[static_cast<std::size_t>(i)]));
  CHECK_THROWS_AS(momentum_map_t11(make_point(t11_chart(), {1, 0, 1, 0, 0}), MomentumBasis::kOriginal), ChartMismatch);
}

TEST_CASE("interior test") {
  auto c = conifold_toric_data();
  CHECK(in_cone_interior(c.normalized, {1.0 / 6.0, 0.0, 0.0}, 1e-3));
  CHECK_FALSE(in_cone_interior(c.normalized, {0.0, 0.0, 0.0}));
  CHECK_FALSE(in_cone_interior(c.normalized, {-1.0, 0.0, 0.0}, 1e-3));
}

TEST_CASE("property: momentum image, pairing invariance and l_B") {
  auto c = conifold_toric_data();
  auto cone = cone_chart(t11_chart());
  const auto& b_old = *c.raw.reeb;
  const auto& b_new = *c.normalized.reeb;
  for (const auto& p : sample_points(cone, 500, 101)) {
    auto mu = momentum_map_t11(p, MomentumBasis::kOriginal);
    auto mup = momentum_map_t11(p, MomentumBasis::kTransformed);
    CHECK(in_cone_interior(c.normalized, mup));
    CHECK(in_cone_interior(c.raw, mu));
    // The transformed momentum map is the dual change of basis of the original.
    auto dual = c.T.apply_dual(mu);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(dual[static_cast<std::size_t>(i)] - mup[static_cast<std::size_t>(i)]) < 1e-14);
    CHECK(std::abs(dot(b_old, mu) - dot(b_new, mup)) < 1e-12);
    CHECK(std::abs(dot(b_new, mup) - 0.5 * p[0] * p[0]) < 1e-12);
    for (std::size_t a = 0; a < 4; ++a)
      CHECK(std::abs(dot(c.raw.normals[a], mu) - dot(c.normalized.normals[a], mup)) < 1e-14);
  }
}
