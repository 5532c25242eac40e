#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace skf {

// Largest chart dimension the evaluators support.
inline constexpr int kMaxDim = 8;

template <class T>
using Point = std::array<T, kMaxDim>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// A named coordinate chart. The sampling box is `ranges`, shrunk by
// `margins` on each side (used to keep away from coordinate singularities).
struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<Interval> ranges;
  std::vector<double> margins;

  int dim() const { return static_cast<int>(coords.size()); }
  int index_of(const std::string& coord) const;
  Interval sampling_interval(int i) const;

  // Throws if the sizes disagree or a sampling interval is empty.
  void validate() const;
};

using ChartPtr = std::shared_ptr<const Chart>;

bool same_chart(const Chart& a, const Chart& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what);

struct ChartPoint {
  ChartPtr chart;
  std::vector<double> values;

  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  Point<double> coords() const;
  bool in_sampling_box() const;
};

ChartPoint make_point(ChartPtr chart, std::vector<double> values);

// T^{1,1} chart with coordinates (theta1, phi1, theta2, phi2, psi_angle).
// theta ranges are [0, pi] with `theta_margin` excluded at both ends; angles
// range over [0, 2 pi).
ChartPtr t11_chart(double theta_margin = 0.2);

// Prepends the radial coordinate r with r in [r_min, r_max].
ChartPtr cone_chart(const ChartPtr& base, double r_min = 0.5, double r_max = 2.0);

// Euclidean chart on R^n with coordinates x1..xn in [-1, 1].
ChartPtr flat_chart(int dim);

// Round unit 2-sphere in (theta, phi).
ChartPtr sphere_chart(double theta_margin = 0.2);

std::vector<ChartPoint> sample_points(const ChartPtr& chart, int n, std::uint64_t seed);

// Restriction of a cone point to the base at its own radius.
ChartPoint base_point(const ChartPoint& cone_point, const ChartPtr& base);

// Cone point (r, base...) from a base point.
ChartPoint lift_point(const ChartPoint& base_point, const ChartPtr& cone, double r);

}  // namespace skf
