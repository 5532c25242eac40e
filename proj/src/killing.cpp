#include "skf/killing.hpp"

#include <cmath>

namespace skf {

namespace {

// r^k as a 0-form on the cone, times an optional constant.
DiffForm radial_power(const ChartPtr& cone, int k, double factor = 1.0) {
  return scalar_field(cone, [k, factor](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T v(factor);
    for (int i = 0; i < k; ++i) v = v * x[0];
    return v;
  });
}

void require_cone_over(const ChartPtr& cone, const ChartPtr& base, const char* what) {
  if (cone->dim() != base->dim() + 1 || cone->coords[0] != "r")
    throw ChartMismatch(std::string(what) + ": chart is not a cone over the base chart");
  for (int i = 0; i < base->dim(); ++i)
    if (cone->coords[static_cast<std::size_t>(i + 1)] != base->coords[static_cast<std::size_t>(i)])
      throw ChartMismatch(std::string(what) + ": cone coordinates do not extend the base chart");
}

class StackelNode final : public SymTensorNodeImpl<StackelNode> {
 public:
  StackelNode(MetricField g, DiffForm a, DiffForm b)
      : SymTensorNodeImpl(g.chart()), g_(std::move(g)), a_(std::move(a)), b_(std::move(b)) {}

  template <class T>
  void evaluate(const Point<T>& x, Mat<T>& out) const {
    for (auto& row : out) row.fill(T(0.0));
    const int n = g_.dim();
    const int p = a_.degree();
    auto ca = a_.at(x);
    auto cb = b_.at(x);
    if (p == 1) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
          out[i][j] = ca[ui].re * cb[uj].re + cb[ui].re * ca[uj].re;
        }
      return;
    }
    Mat<T> gm, gi;
    g_.node().eval(x, gm);
    T det;
    spd_inverse(gm, n, gi, det);

    // The sum over ordered index tuples equals (p-1)! times the sum over
    // increasing tuples A, B weighted by det(g^{-1}[A, B]).
    const auto& basis = FormBasis::get(n, p - 1);
    const int m = basis.size();
    double fact = 1.0;
    for (int k = 2; k < p; ++k) fact *= k;
    std::vector<std::vector<int>> tuples;
    for (int k = 0; k < m; ++k) tuples.push_back(basis.tuple(k));
    std::vector<T> minor_det(static_cast<std::size_t>(m * m), T(0.0));
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) {
        Mat<T> sub{};
        for (int u = 0; u < p - 1; ++u)
          for (int v = 0; v < p - 1; ++v)
            sub[u][v] = gi[tuples[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)]]
                          [tuples[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)]];
        minor_det[static_cast<std::size_t>(s * m + t)] = small_det<T>(sub, p - 1);
      }
    // Rows psi_{iA} and sigma_{iA}.
    std::vector<T> ra(static_cast<std::size_t>(n * m), T(0.0)), rb(static_cast<std::size_t>(n * m), T(0.0));
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < m; ++s) {
        idx[0] = i;
        for (int u = 0; u < p - 1; ++u)
          idx[static_cast<std::size_t>(u + 1)] = tuples[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
        ra[static_cast<std::size_t>(i * m + s)] = component_at(ca, n, idx).re;
        rb[static_cast<std::size_t>(i * m + s)] = component_at(cb, n, idx).re;
      }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        T sum(0.0);
        for (int s = 0; s < m; ++s)
          for (int t = 0; t < m; ++t) {
            const T& d = minor_det[static_cast<std::size_t>(s * m + t)];
            sum += d * (ra[static_cast<std::size_t>(i * m + s)] * rb[static_cast<std::size_t>(j * m + t)] +
                        rb[static_cast<std::size_t>(i * m + s)] * ra[static_cast<std::size_t>(j * m + t)]);
          }
        out[i][j] = fact * sum;
        out[j][i] = out[i][j];
      }
  }

 private:
  MetricField g_;
  DiffForm a_;
  DiffForm b_;
};

}  // namespace

DiffForm contact_form_t11(const ChartPtr& base) {
  if (base->dim() != 5) throw ChartMismatch("contact_form_t11: needs the T11 chart");
  return lambda_form(base, 1, [](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({kPsi}, T(1.0 / 3.0));
    w.add({kPhi1}, cos(x[kTheta1]) / 3.0);
    w.add({kPhi2}, cos(x[kTheta2]) / 3.0);
  });
}

VectorField reeb_field_t11(const ChartPtr& base) {
  if (base->dim() != 5) throw ChartMismatch("reeb_field_t11: needs the T11 chart");
  return constant_vector_field(base, {0.0, 0.0, 0.0, 0.0, 3.0});
}

CanonicalForms canonical_forms(const DiffForm& eta) {
  if (eta.degree() != 1) throw Error("canonical_forms: eta must be a 1-form");
  auto deta = exterior_derivative(eta);
  auto deta2 = wedge(deta, deta);
  return {wedge(eta, deta), wedge(eta, deta2), deta, deta2};
}

DiffForm holomorphic_volume_form(const ChartPtr& cone, ZVariant variant) {
  std::array<DiffForm, 3> dz;
  for (int k = 0; k < 3; ++k) dz[static_cast<std::size_t>(k)] = exterior_derivative(complex_coordinate_form(cone, k, variant));
  auto ez1 = exp_scalar(complex_coordinate_form(cone, 0, variant));
  return wedge(ez1, wedge(dz[0], wedge(dz[1], dz[2])));
}

std::array<DiffForm, 3> t_one_forms(const ChartPtr& cone, const ChartPtr& base, ZVariant variant) {
  require_cone_over(cone, base, "t_one_forms");
  std::array<DiffForm, 3> t;
  for (int k = 0; k < 3; ++k)
    t[static_cast<std::size_t>(k)] = restrict_to_slice(exterior_derivative(complex_coordinate_form(cone, k, variant)), base, 1.0);
  return t;
}

DiffForm cone_lift(const DiffForm& psi, const ChartPtr& cone) {
  require_cone_over(cone, psi.chart(), "cone_lift");
  const int p = psi.degree();
  auto dr = coordinate_differential(cone, 0);
  auto lifted = wedge(radial_power(cone, p), wedge(dr, pullback_to_cone(psi, cone)));
  if (p < psi.dim()) {
    lifted = lifted + wedge(radial_power(cone, p + 1, 1.0 / (p + 1)), pullback_to_cone(exterior_derivative(psi), cone));
  }
  return lifted;
}

Extraction extract_base_form(const DiffForm& theta, const ChartPtr& base, const ExtractOptions& opts) {
  const auto& cone = theta.chart();
  require_cone_over(cone, base, "extract_base_form");
  if (theta.degree() < 1) throw ShapeError("extract_base_form: a 0-form has no dr component");
  Extraction out;
  out.form = restrict_to_slice(interior_product(coordinate_vector_field(cone, 0), theta), base, 1.0);
  auto lifted = cone_lift(out.form, cone);
  for (const auto& p : sample_points(cone, opts.points, opts.seed)) {
    auto a = theta.components(p), b = lifted.components(p);
    for (std::size_t k = 0; k < a.size(); ++k) out.shape_residual = std::max(out.shape_residual, abs(a[k] - b[k]));
  }
  if (!(out.shape_residual < opts.tolerance))
    throw ShapeError("extract_base_form: form is not a cone lift (residual " + std::to_string(out.shape_residual) + ")");
  return out;
}

PsiForms re_im_psi_closed_forms(const ChartPtr& base) {
  if (base->dim() != 5) throw ChartMismatch("re_im_psi_closed_forms: needs the T11 chart");
  auto re = lambda_form(base, 2, [](const auto& x, auto& w) {
    auto s1 = sin(x[kTheta1]), s2 = sin(x[kTheta2]);
    auto c = cos(x[kPsi]), s = sin(x[kPsi]);
    w.add({kTheta1, kTheta2}, c);
    w.add({kTheta1, kPhi2}, s2 * s);
    w.add({kTheta2, kPhi1}, -(s1 * s));
    w.add({kPhi1, kPhi2}, -(s1 * s2 * c));
  });
  auto im = lambda_form(base, 2, [](const auto& x, auto& w) {
    auto s1 = sin(x[kTheta1]), s2 = sin(x[kTheta2]);
    auto c = cos(x[kPsi]), s = sin(x[kPsi]);
    w.add({kTheta1, kTheta2}, s);
    w.add({kTheta1, kPhi2}, -(s2 * c));
    w.add({kTheta2, kPhi1}, s1 * c);
    w.add({kPhi1, kPhi2}, -(s1 * s2 * s));
  });
  return {re, im};
}

ScaleFit fit_global_scale(const DiffForm& a, const DiffForm& b, const std::vector<ChartPoint>& points) {
  require_same_chart(a.chart(), b.chart(), "fit_global_scale");
  if (a.degree() != b.degree()) throw Error("fit_global_scale: degree mismatch");
  Complex num{0.0, 0.0};
  double den = 0.0;
  std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>> values;
  for (const auto& p : points) {
    auto ca = a.components(p), cb = b.components(p);
    for (std::size_t k = 0; k < ca.size(); ++k) {
      num += conj(cb[k]) * ca[k];
      den += cb[k].re * cb[k].re + cb[k].im * cb[k].im;
    }
    values.emplace_back(std::move(ca), std::move(cb));
  }
  if (!(den > 0.0)) throw Error("fit_global_scale: reference form vanishes at every point");
  ScaleFit fit;
  fit.scale = Complex(num.re / den, num.im / den);
  for (const auto& [ca, cb] : values)
    for (std::size_t k = 0; k < ca.size(); ++k) fit.residual = std::max(fit.residual, abs(ca[k] - fit.scale * cb[k]));
  return fit;
}

StackelKillingTensor::StackelKillingTensor(const MetricField& g, const DiffForm& psi, const DiffForm& sigma) {
  require_same_chart(g.chart(), psi.chart(), "stackel_killing");
  require_same_chart(g.chart(), sigma.chart(), "stackel_killing");
  if (psi.degree() != sigma.degree()) throw Error("stackel_killing: forms have different degrees");
  if (psi.degree() < 1) throw Error("stackel_killing: forms must have positive degree");
  node_ = std::make_shared<StackelNode>(g, psi, sigma);
}

StackelKillingTensor::StackelKillingTensor(const MetricField& g) : node_(g.ptr()) {}

Mat<double> StackelKillingTensor::at(const ChartPoint& p) const {
  require_same_chart(chart(), p.chart, "StackelKillingTensor::at");
  Mat<double> k;
  node_->eval(p.coords(), k);
  return k;
}

double StackelKillingTensor::quadratic(const ChartPoint& p, const std::vector<double>& v) const {
  auto k = at(p);
  double q = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) q += k[i][j] * v[i] * v[j];
  return q;
}

StackelKillingTensor stackel_killing(const MetricField& g, const DiffForm& psi, const DiffForm& sigma) {
  return StackelKillingTensor(g, psi, sigma);
}

std::vector<KillingCandidate> t11_candidates(const ChartPtr& base) {
  auto eta = contact_form_t11(base);
  auto c = canonical_forms(eta);
  auto psi = re_im_psi_closed_forms(base);
  using K = CandidateKind;
  return {{"eta", eta, 1, K::kSpecialKilling},       {"Psi1", c.psi1, 3, K::kSpecialKilling},
          {"Psi2", c.psi2, 5, K::kSpecialKilling},   {"RePsi", psi.re, 2, K::kSpecialKilling},
          {"ImPsi", psi.im, 2, K::kSpecialKilling},  {"Phi1", c.phi1, 2, K::kClosedConformal},
          {"Phi2", c.phi2, 4, K::kClosedConformal}};
}

}  // namespace skf
