#include "skf/toric.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace skf {

namespace {

std::int64_t det_rec(const std::vector<IntVec>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::int64_t s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<IntVec> minor;
    for (std::size_t r = 1; r < n; ++r) {
      IntVec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    s += ((c % 2) ? -1 : 1) * m[0][c] * det_rec(minor);
  }
  return s;
}

RealVec to_real(const IntVec& v) { return RealVec(v.begin(), v.end()); }

}  // namespace

bool is_primitive(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g == 1;
}

void ToricData::validate() const {
  if (n <= 0) throw Error("toric data: dimension must be positive");
  if (static_cast<int>(normals.size()) < n)
    throw Error("toric data: need at least n = " + std::to_string(n) + " normals");
  for (std::size_t a = 0; a < normals.size(); ++a) {
    if (static_cast<int>(normals[a].size()) != n) throw Error("toric data: normal " + std::to_string(a) + " has wrong length");
    if (!is_primitive(normals[a])) throw Error("toric data: normal " + std::to_string(a) + " is not primitive");
  }
  if (reeb && static_cast<int>(reeb->size()) != n) throw Error("toric data: Reeb vector has wrong length");
}

const RealVec& ToricData::require_reeb() const {
  if (!reeb) throw Error("toric data: Reeb vector not set");
  return *reeb;
}

std::int64_t UnimodularTransform::det() const { return T.empty() ? 1 : det_rec(T); }

void UnimodularTransform::validate() const {
  for (const auto& row : T)
    if (row.size() != T.size()) throw Error("unimodular transform: matrix is not square");
  auto d = det();
  if (d != 1 && d != -1) throw Error("unimodular transform: det T = " + std::to_string(d));
}

UnimodularTransform UnimodularTransform::inverse() const {
  validate();
  // Adjugate over det = +-1 keeps the inverse integral.
  const std::size_t n = T.size();
  const std::int64_t d = det();
  UnimodularTransform inv;
  inv.T.assign(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (n == 1) {
        inv.T[0][0] = d;
        continue;
      }
      std::vector<IntVec> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        IntVec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(T[r][c]);
        minor.push_back(std::move(row));
      }
      inv.T[i][j] = (((i + j) % 2) ? -1 : 1) * det_rec(minor) * d;
    }
  return inv;
}

IntVec UnimodularTransform::apply(const IntVec& v) const {
  if (v.size() != T.size()) throw Error("unimodular transform: dimension mismatch");
  IntVec out(v.size(), 0);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += T[i][j] * v[j];
  return out;
}

RealVec UnimodularTransform::apply(const RealVec& v) const {
  if (v.size() != T.size()) throw Error("unimodular transform: dimension mismatch");
  RealVec out(v.size(), 0.0);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += static_cast<double>(T[i][j]) * v[j];
  return out;
}

RealVec UnimodularTransform::apply_dual(const RealVec& y) const {
  auto inv = inverse();
  RealVec out(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i] += static_cast<double>(inv.T[j][i]) * y[j];
  return out;
}

ConifoldData conifold_toric_data() {
  ConifoldData c;
  c.raw.n = 3;
  c.raw.normals = {{-1, 0, 1}, {0, -1, 1}, {1, 0, 0}, {0, 1, 0}};
  c.raw.reeb = RealVec{0.0, 0.0, 1.5};
  c.T.T = {{1, 1, 2}, {0, 1, 1}, {0, 0, 1}};
  c.normalized = apply_transform(c.T, c.raw);
  return c;
}

ToricData apply_transform(const UnimodularTransform& T, const ToricData& td) {
  T.validate();
  td.validate();
  if (T.n() != td.n) throw Error("apply_transform: dimension mismatch");
  ToricData out;
  out.n = td.n;
  for (const auto& v : td.normals) out.normals.push_back(T.apply(v));
  if (td.reeb) out.reeb = T.apply(*td.reeb);
  return out;
}

bool is_gorenstein(const ToricData& td) {
  for (const auto& v : td.normals)
    if (v.empty() || v[0] != 1) return false;
  return true;
}

double dot(const RealVec& a, const RealVec& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const IntVec& a, const RealVec& b) { return dot(to_real(a), b); }

FacetFunctions::FacetFunctions(const ToricData& td) {
  td.validate();
  sum_.assign(static_cast<std::size_t>(td.n), 0.0);
  for (const auto& v : td.normals) {
    normals_.push_back(to_real(v));
    for (std::size_t i = 0; i < v.size(); ++i) sum_[i] += static_cast<double>(v[i]);
  }
  reeb_ = td.reeb;
}

double FacetFunctions::l(int facet, const RealVec& y) const { return dot(normals_.at(static_cast<std::size_t>(facet)), y); }

RealVec FacetFunctions::all(const RealVec& y) const {
  RealVec out;
  for (const auto& v : normals_) out.push_back(dot(v, y));
  return out;
}

const RealVec& FacetFunctions::reeb() const {
  if (!reeb_) throw Error("facet functions: Reeb vector not set");
  return *reeb_;
}

double FacetFunctions::l_reeb(const RealVec& y) const { return dot(reeb(), y); }

double FacetFunctions::l_infinity(const RealVec& y) const { return dot(sum_, y); }

FacetFunctions facet_functions(const ToricData& td) { return FacetFunctions(td); }

RealVec momentum_map_t11(const ChartPoint& p, MomentumBasis basis) {
  if (!p.chart || p.chart->dim() != 6 || p.chart->coords[0] != "r")
    throw ChartMismatch("momentum_map_t11: expects a point on the cone chart");
  const double r2 = p[0] * p[0];
  const double c1 = std::cos(p[1]), c2 = std::cos(p[3]);
  if (basis == MomentumBasis::kOriginal) return {r2 * (c1 + 1.0) / 6.0, r2 * (c2 + 1.0) / 6.0, r2 / 3.0};
  return {r2 * (c1 + 1.0) / 6.0, r2 * (c2 - c1) / 6.0, -r2 * (c1 + c2) / 6.0};
}

bool in_cone_interior(const ToricData& td, const RealVec& y, double eps) {
  if (static_cast<int>(y.size()) != td.n) throw Error("in_cone_interior: dimension mismatch");
  for (const auto& v : td.normals)
    if (!(dot(v, y) > eps)) return false;
  return true;
}

bool in_cone_interior(const ToricData& td, const RealVec& y) {
  return in_cone_interior(td, y, 1e-9 * std::sqrt(dot(y, y)));
}

}  // namespace skf
