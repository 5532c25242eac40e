#pragma once

// Contact data of T^{1,1}, its canonical Killing forms, the holomorphic
// volume form of the cone and the correspondence between base forms and
// parallel forms on the cone.

#include <array>
#include <string>
#include <vector>

#include "skf/exterior.hpp"
#include "skf/metric.hpp"
#include "skf/potential.hpp"

namespace skf {

// Chart indices on the T^{1,1} chart.
enum T11Index { kTheta1 = 0, kPhi1 = 1, kTheta2 = 2, kPhi2 = 3, kPsi = 4 };

// eta = (dpsi + cos th1 dph1 + cos th2 dph2) / 3.
DiffForm contact_form_t11(const ChartPtr& base = t11_chart());
// B = 3 d/dpsi.
VectorField reeb_field_t11(const ChartPtr& base = t11_chart());

struct CanonicalForms {
  DiffForm psi1;  // eta ^ d eta
  DiffForm psi2;  // eta ^ (d eta)^2
  DiffForm phi1;  // d eta
  DiffForm phi2;  // (d eta)^2
};

CanonicalForms canonical_forms(const DiffForm& eta);

// exp(z^1) dz^1 ^ dz^2 ^ dz^3 on the cone chart, with dz obtained by
// differentiating the complex coordinates.
DiffForm holomorphic_volume_form(const ChartPtr& cone, ZVariant variant = ZVariant::kHolomorphic);

// The angular parts T_i of dz^i = (radial) dr + T_i, as base forms.
std::array<DiffForm, 3> t_one_forms(const ChartPtr& cone, const ChartPtr& base,
                                    ZVariant variant = ZVariant::kHolomorphic);

// r^p dr ^ psi + r^{p+1}/(p+1) d psi; the second term is absent when psi
// has top degree on the base.
DiffForm cone_lift(const DiffForm& psi, const ChartPtr& cone);

class ShapeError : public Error {
 public:
  using Error::Error;
};

struct ExtractOptions {
  int points = 20;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

struct Extraction {
  DiffForm form;
  // max |Theta - cone_lift(psi)| over the sampled cone points.
  double shape_residual = 0.0;
};

// psi = (d_r _| Theta) at r = 1. Throws ShapeError when Theta is not of the
// form produced by cone_lift.
Extraction extract_base_form(const DiffForm& theta, const ChartPtr& base, const ExtractOptions& opts = {});

struct PsiForms {
  DiffForm re;
  DiffForm im;
};

// The real and imaginary parts of the special Killing 2-form, written out.
PsiForms re_im_psi_closed_forms(const ChartPtr& base = t11_chart());

// Least-squares complex scale c minimising |a - c b| over the points.
struct ScaleFit {
  Complex scale;
  double residual = 0.0;  // max |a - c b|
};

ScaleFit fit_global_scale(const DiffForm& a, const DiffForm& b, const std::vector<ChartPoint>& points);

// K_ij = psi_{i A} sigma_j^A + sigma_{i A} psi_j^A, summed over all ordered
// trailing index tuples A, indices raised with g. Real parts of the forms are
// used.
class StackelKillingTensor {
 public:
  StackelKillingTensor(const MetricField& g, const DiffForm& psi, const DiffForm& sigma);
  explicit StackelKillingTensor(const MetricField& g);  // K = g

  const SymTensorNode& node() const { return *node_; }
  const std::shared_ptr<const SymTensorNode>& ptr() const { return node_; }
  const ChartPtr& chart() const { return node_->chart(); }
  Mat<double> at(const ChartPoint& p) const;
  // K_ij v^i v^j.
  double quadratic(const ChartPoint& p, const std::vector<double>& v) const;

 private:
  std::shared_ptr<const SymTensorNode> node_;
};

StackelKillingTensor stackel_killing(const MetricField& g, const DiffForm& psi, const DiffForm& sigma);

enum class CandidateKind { kSpecialKilling, kClosedConformal };

struct KillingCandidate {
  std::string label;
  DiffForm form;
  int degree = 0;
  CandidateKind kind = CandidateKind::kSpecialKilling;
};

// eta, Psi1, Psi2, RePsi, ImPsi, Phi1, Phi2 on the base chart.
std::vector<KillingCandidate> t11_candidates(const ChartPtr& base = t11_chart());

}  // namespace skf
