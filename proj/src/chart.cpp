#include "skf/chart.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace skf {

int Chart::index_of(const std::string& coord) const {
  for (int i = 0; i < dim(); ++i) {
    if (coords[static_cast<std::size_t>(i)] == coord) return i;
  }
  throw Error("chart " + name + " has no coordinate " + coord);
}

Interval Chart::sampling_interval(int i) const {
  auto k = static_cast<std::size_t>(i);
  return {ranges[k].lo + margins[k], ranges[k].hi - margins[k]};
}

void Chart::validate() const {
  if (coords.empty() || dim() > kMaxDim) {
    throw Error("chart " + name + ": dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (ranges.size() != coords.size() || margins.size() != coords.size()) {
    throw Error("chart " + name + ": coords, ranges and margins differ in length");
  }
  for (int i = 0; i < dim(); ++i) {
    auto iv = sampling_interval(i);
    if (!(iv.lo < iv.hi) || margins[static_cast<std::size_t>(i)] < 0.0) {
      throw Error("chart " + name + ": empty sampling interval for " + coords[static_cast<std::size_t>(i)]);
    }
  }
}

bool same_chart(const Chart& a, const Chart& b) {
  return a.name == b.name && a.coords == b.coords;
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
  if (!a || !b || !same_chart(*a, *b)) {
    throw ChartMismatch(std::string(what) + ": operands live on different charts (" +
                        (a ? a->name : "null") + " vs " + (b ? b->name : "null") + ")");
  }
}

Point<double> ChartPoint::coords() const {
  Point<double> x{};
  for (std::size_t i = 0; i < values.size(); ++i) x[i] = values[i];
  return x;
}

bool ChartPoint::in_sampling_box() const {
  for (int i = 0; i < chart->dim(); ++i) {
    auto iv = chart->sampling_interval(i);
    double v = values[static_cast<std::size_t>(i)];
    if (v < iv.lo || v > iv.hi) return false;
  }
  return true;
}

ChartPoint make_point(ChartPtr chart, std::vector<double> values) {
  if (static_cast<int>(values.size()) != chart->dim()) {
    throw Error("point has " + std::to_string(values.size()) + " values, chart " + chart->name +
                " has dimension " + std::to_string(chart->dim()));
  }
  return {std::move(chart), std::move(values)};
}

ChartPtr t11_chart(double theta_margin) {
  constexpr double pi = std::numbers::pi;
  Chart c;
  c.name = "T11";
  c.coords = {"theta1", "phi1", "theta2", "phi2", "psi_angle"};
  c.ranges = {{0.0, pi}, {0.0, 2 * pi}, {0.0, pi}, {0.0, 2 * pi}, {0.0, 2 * pi}};
  c.margins = {theta_margin, 0.0, theta_margin, 0.0, 0.0};
  if (!(theta_margin > 0.0)) throw Error("T11 chart: theta margin must be positive");
  c.validate();
  return std::make_shared<const Chart>(std::move(c));
}

ChartPtr cone_chart(const ChartPtr& base, double r_min, double r_max) {
  if (!(r_min > 0.0 && r_min < r_max)) throw Error("cone chart: need 0 < r_min < r_max");
  Chart c;
  c.name = "C(" + base->name + ")";
  c.coords.push_back("r");
  c.coords.insert(c.coords.end(), base->coords.begin(), base->coords.end());
  c.ranges.push_back({r_min, r_max});
  c.ranges.insert(c.ranges.end(), base->ranges.begin(), base->ranges.end());
  c.margins.push_back(0.0);
  c.margins.insert(c.margins.end(), base->margins.begin(), base->margins.end());
  c.validate();
  return std::make_shared<const Chart>(std::move(c));
}

ChartPtr flat_chart(int dim) {
  Chart c;
  c.name = "R" + std::to_string(dim);
  for (int i = 0; i < dim; ++i) {
    c.coords.push_back("x" + std::to_string(i + 1));
    c.ranges.push_back({-1.0, 1.0});
    c.margins.push_back(0.0);
  }
  c.validate();
  return std::make_shared<const Chart>(std::move(c));
}

ChartPtr sphere_chart(double theta_margin) {
  constexpr double pi = std::numbers::pi;
  Chart c;
  c.name = "S2";
  c.coords = {"theta", "phi"};
  c.ranges = {{0.0, pi}, {0.0, 2 * pi}};
  c.margins = {theta_margin, 0.0};
  c.validate();
  return std::make_shared<const Chart>(std::move(c));
}

std::vector<ChartPoint> sample_points(const ChartPtr& chart, int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_points: need n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<double> v(static_cast<std::size_t>(chart->dim()));
    for (int i = 0; i < chart->dim(); ++i) {
      auto iv = chart->sampling_interval(i);
      // Explicit affine map of the raw 53-bit draw keeps sequences identical
      // across standard library implementations.
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v[static_cast<std::size_t>(i)] = iv.lo + (iv.hi - iv.lo) * u;
    }
    out.push_back({chart, std::move(v)});
  }
  return out;
}

ChartPoint base_point(const ChartPoint& cone_point, const ChartPtr& base) {
  if (cone_point.chart->dim() != base->dim() + 1) throw ChartMismatch("base_point: not a cone point over this base");
  return {base, std::vector<double>(cone_point.values.begin() + 1, cone_point.values.end())};
}

ChartPoint lift_point(const ChartPoint& base_point, const ChartPtr& cone, double r) {
  if (cone->dim() != base_point.chart->dim() + 1) throw ChartMismatch("lift_point: cone dimension mismatch");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(cone->dim()));
  v.push_back(r);
  v.insert(v.end(), base_point.values.begin(), base_point.values.end());
  return {cone, std::move(v)};
}

}  // namespace skf
