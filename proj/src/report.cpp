#include "skf/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skf {

void ResidualAccumulator::add(double point_residual) {
  if (std::isnan(point_residual)) nan_ = true;
  ++n_;
  max_ = std::max(max_, std::abs(point_residual));
  sum_ += std::abs(point_residual);
}

ResidualReport ResidualAccumulator::finish(std::string check, double tolerance) const {
  ResidualReport r;
  r.check = std::move(check);
  r.n_points = n_;
  r.max_abs = nan_ ? std::numeric_limits<double>::quiet_NaN() : max_;
  r.mean_abs = n_ > 0 ? sum_ / n_ : 0.0;
  r.tolerance = tolerance;
  r.pass = !nan_ && n_ > 0 && max_ < tolerance;
  return r;
}

ResidualReport aggregate(std::string check, std::vector<ResidualReport> parts) {
  ResidualReport r;
  r.check = std::move(check);
  r.pass = !parts.empty();
  double mean_sum = 0.0;
  for (const auto& p : parts) {
    r.pass = r.pass && p.pass;
    r.n_points = std::max(r.n_points, p.n_points);
    if (std::isnan(p.max_abs) || std::isnan(r.max_abs)) {
      r.max_abs = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.max_abs = std::max(r.max_abs, p.max_abs);
    }
    mean_sum += p.mean_abs;
  }
  r.mean_abs = parts.empty() ? 0.0 : mean_sum / static_cast<double>(parts.size());
  if (!std::isnan(r.max_abs)) r.mean_abs = std::min(r.mean_abs, r.max_abs);
  r.parts = std::move(parts);
  return r;
}

}  // namespace skf
