#include <numbers>

#include "doctest.h"
#include "skf/chart.hpp"

using namespace skf;

TEST_CASE("t11 chart layout") {
  auto c = t11_chart();
  CHECK(c->dim() == 5);
  CHECK(c->coords[4] == "psi_angle");
  auto iv = c->sampling_interval(0);
  CHECK(iv.lo == doctest::Approx(0.2));
  CHECK(iv.hi == doctest::Approx(std::numbers::pi - 0.2));
  CHECK_THROWS_AS(t11_chart(0.0), Error);
}

TEST_CASE("cone chart prepends r and excludes the apex") {
  auto cone = cone_chart(t11_chart());
  CHECK(cone->dim() == 6);
  CHECK(cone->coords[0] == "r");
  CHECK(cone->coords[1] == "theta1");
  CHECK(cone->ranges[0].lo == 0.5);
  CHECK(cone->ranges[0].hi == 2.0);
  CHECK(cone->ranges[0].lo > 0.0);
  CHECK_THROWS_AS(cone_chart(t11_chart(), 0.0, 1.0), Error);
  CHECK_THROWS_AS(cone_chart(t11_chart(), 2.0, 1.0), Error);
}

TEST_CASE("restriction of a cone point at r = 1 is a valid base point") {
  auto base = t11_chart();
  auto cone = cone_chart(base);
  auto pts = sample_points(cone, 20, 3);
  for (auto p : pts) {
    p.values[0] = 1.0;
    auto b = base_point(p, base);
    CHECK(b.chart->dim() == 5);
    CHECK(b.in_sampling_box());
    auto back = lift_point(b, cone, 1.0);
    CHECK(back.values == p.values);
  }
}

TEST_CASE("sampling is deterministic and respects the margins") {
  auto c = t11_chart();
  auto a = sample_points(c, 100, 42);
  auto b = sample_points(c, 100, 42);
  REQUIRE(a.size() == 100);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].values == b[k].values);
    CHECK(a[k].in_sampling_box());
    CHECK(a[k][0] >= 0.2);
    CHECK(a[k][0] <= std::numbers::pi - 0.2);
    CHECK(a[k][2] >= 0.2);
    CHECK(a[k][2] <= std::numbers::pi - 0.2);
  }
  auto other = sample_points(c, 100, 43);
  CHECK(other[0].values != a[0].values);
  CHECK_THROWS_AS(sample_points(c, 0, 1), Error);
}

TEST_CASE("points must match the chart dimension") {
  CHECK_THROWS_AS(make_point(t11_chart(), {1.0, 2.0}), Error);
  auto p = make_point(t11_chart(), {1.0, 0.0, 1.0, 0.0, 0.0});
  CHECK(p.in_sampling_box());
}
