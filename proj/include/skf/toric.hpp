#pragma once

// Toric data of a moment cone: inward facet normals and a Reeb vector.

#include <cstdint>
#include <optional>
#include <vector>

#include "skf/chart.hpp"

namespace skf {

using IntVec = std::vector<std::int64_t>;
using RealVec = std::vector<double>;

struct ToricData {
  int n = 0;
  std::vector<IntVec> normals;
  std::optional<RealVec> reeb;

  // Throws Error unless every normal has length n, is primitive, and d >= n.
  void validate() const;
  const RealVec& require_reeb() const;
};

struct UnimodularTransform {
  std::vector<IntVec> T;  // row-major, n x n

  int n() const { return static_cast<int>(T.size()); }
  std::int64_t det() const;
  // Throws Error if T is not square or det T is not +-1.
  void validate() const;
  UnimodularTransform inverse() const;
  IntVec apply(const IntVec& v) const;
  RealVec apply(const RealVec& v) const;
  // T^{-T} y: the dual change of basis for momenta.
  RealVec apply_dual(const RealVec& y) const;
};

bool is_primitive(const IntVec& v);

struct ConifoldData {
  ToricData raw;
  ToricData normalized;
  UnimodularTransform T;
};

ConifoldData conifold_toric_data();

// v -> T v and B -> T B, so that <v, y> and <B, y> are unchanged when
// momenta move by y -> T^{-T} y.
ToricData apply_transform(const UnimodularTransform& T, const ToricData& td);

// Every normal has first component +1.
bool is_gorenstein(const ToricData& td);

double dot(const RealVec& a, const RealVec& b);
double dot(const IntVec& a, const RealVec& b);

class FacetFunctions {
 public:
  explicit FacetFunctions(const ToricData& td);

  int count() const { return static_cast<int>(normals_.size()); }
  double l(int facet, const RealVec& y) const;
  RealVec all(const RealVec& y) const;
  double l_reeb(const RealVec& y) const;  // needs a Reeb vector
  double l_infinity(const RealVec& y) const;
  const RealVec& normal_sum() const { return sum_; }
  const RealVec& normal(int facet) const { return normals_[static_cast<std::size_t>(facet)]; }
  bool has_reeb() const { return reeb_.has_value(); }
  const RealVec& reeb() const;

 private:
  std::vector<RealVec> normals_;
  RealVec sum_;
  std::optional<RealVec> reeb_;
};

FacetFunctions facet_functions(const ToricData& td);

enum class MomentumBasis { kOriginal, kTransformed };

// Momentum map of the conifold at a point of the cone chart
// (r, theta1, phi1, theta2, phi2, psi).
RealVec momentum_map_t11(const ChartPoint& p, MomentumBasis basis);

// l_A(y) > eps for every facet.
bool in_cone_interior(const ToricData& td, const RealVec& y, double eps);
// Default threshold 1e-9 |y|.
bool in_cone_interior(const ToricData& td, const RealVec& y);

}  // namespace skf
