#pragma once

#include <map>
#include <string>
#include <vector>

namespace skf {

// Per-check residual statistics. max_abs/mean_abs are taken over the
// per-point residuals (each the max over components at that point).
struct ResidualReport {
  std::string check;
  int n_points = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> fitted;
  std::vector<std::string> notes;
  std::vector<ResidualReport> parts;
};

class ResidualAccumulator {
 public:
  void add(double point_residual);
  int count() const { return n_; }
  double max() const { return max_; }
  ResidualReport finish(std::string check, double tolerance) const;

 private:
  int n_ = 0;
  double max_ = 0.0;
  double sum_ = 0.0;
  bool nan_ = false;
};

// Combine sub-reports: the aggregate passes iff every part passes; max/mean
// are taken over the parts' values.
ResidualReport aggregate(std::string check, std::vector<ResidualReport> parts);

}  // namespace skf
