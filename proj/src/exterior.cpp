#include "skf/exterior.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <tuple>

#include "skf/linalg.hpp"

namespace skf {

namespace {

Mask below(int i) { return (Mask(1) << i) - 1; }

int parity_sign(int count) { return (count & 1) ? -1 : 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Combinatorics

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

FormBasis::FormBasis(int n, int p) : n_(n), p_(p), lookup_(std::size_t(1) << n, -1) {
  // Lexicographic order of increasing tuples.
  std::vector<int> t(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) t[static_cast<std::size_t>(i)] = i;
  while (true) {
    Mask m = 0;
    for (int i : t) m |= Mask(1) << i;
    lookup_[m] = static_cast<int>(masks_.size());
    masks_.push_back(m);
    int k = p - 1;
    while (k >= 0 && t[static_cast<std::size_t>(k)] == n - p + k) --k;
    if (k < 0) break;
    ++t[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < p; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
}

const FormBasis& FormBasis::get(int n, int p) {
  static const auto table = [] {
    std::vector<std::vector<FormBasis>> t;
    for (int nn = 0; nn <= kMaxDim; ++nn) {
      std::vector<FormBasis> row;
      for (int pp = 0; pp <= nn; ++pp) row.push_back(FormBasis(nn, pp));
      t.push_back(std::move(row));
    }
    return t;
  }();
  if (n < 0 || n > kMaxDim || p < 0 || p > n) throw Error("form degree out of range");
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
}

std::vector<int> FormBasis::tuple(int k) const {
  std::vector<int> t;
  Mask m = mask(k);
  for (int i = 0; i < n_; ++i) {
    if (m & (Mask(1) << i)) t.push_back(i);
  }
  return t;
}

int permutation_sign(std::span<const int> indices) {
  int inversions = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) return 0;
      if (indices[i] > indices[j]) ++inversions;
    }
  }
  return parity_sign(inversions);
}

int shuffle_sign(Mask a, Mask b) {
  int count = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    if (a & (Mask(1) << i)) count += std::popcount(b & below(i));
  }
  return parity_sign(count);
}

Mask to_mask(std::span<const int> increasing) {
  Mask m = 0;
  for (int i : increasing) m |= Mask(1) << i;
  return m;
}

std::string basis_label(const Chart& chart, Mask m) {
  std::string s;
  for (int i = 0; i < chart.dim(); ++i) {
    if (!(m & (Mask(1) << i))) continue;
    if (!s.empty()) s += "^";
    s += "d" + chart.coords[static_cast<std::size_t>(i)];
  }
  return s.empty() ? "1" : s;
}

namespace {

// (output index, left index, right index, sign) for wedge products.
struct WedgeTerm {
  int out;
  int left;
  int right;
  int sign;
};

const std::vector<WedgeTerm>& wedge_table(int n, int p, int q) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<WedgeTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, p, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<WedgeTerm> terms;
  const auto& bo = FormBasis::get(n, p + q);
  const auto& bl = FormBasis::get(n, p);
  const auto& br = FormBasis::get(n, q);
  for (int k = 0; k < bo.size(); ++k) {
    Mask m = bo.mask(k);
    // Enumerate submasks of m with popcount p.
    for (Mask s = m;; s = (s - 1) & m) {
      if (std::popcount(s) == p) {
        Mask r = m ^ s;
        terms.push_back({k, bl.index(s), br.index(r), shuffle_sign(s, r)});
      }
      if (s == 0) break;
    }
  }
  return cache.emplace(key, std::move(terms)).first->second;
}

// ---------------------------------------------------------------------------
// Nodes

class SumNode final : public FormNodeImpl<SumNode> {
 public:
  SumNode(DiffForm a, DiffForm b, Complex sb)
      : FormNodeImpl(a.chart(), a.degree()), a_(std::move(a)), b_(std::move(b)), sb_(sb) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    Components<T> ca, cb;
    a_.node().eval(x, ca);
    b_.node().eval(x, cb);
    Cx<T> s(T(sb_.re), T(sb_.im));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = ca[k] + s * cb[k];
  }

 private:
  DiffForm a_, b_;
  Complex sb_;
};

class ScaleNode final : public FormNodeImpl<ScaleNode> {
 public:
  ScaleNode(DiffForm a, Complex s) : FormNodeImpl(a.chart(), a.degree()), a_(std::move(a)), s_(s) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    a_.node().eval(x, out);
    Cx<T> s(T(s_.re), T(s_.im));
    for (auto& c : out) c = s * c;
  }

 private:
  DiffForm a_;
  Complex s_;
};

class WedgeNode final : public FormNodeImpl<WedgeNode> {
 public:
  WedgeNode(DiffForm a, DiffForm b)
      : FormNodeImpl(a.chart(), a.degree() + b.degree()),
        a_(std::move(a)),
        b_(std::move(b)),
        table_(&wedge_table(a_.dim(), a_.degree(), b_.degree())) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    Components<T> ca, cb;
    a_.node().eval(x, ca);
    b_.node().eval(x, cb);
    for (const auto& t : *table_) {
      Cx<T> v = ca[static_cast<std::size_t>(t.left)] * cb[static_cast<std::size_t>(t.right)];
      if (t.sign > 0) {
        out[static_cast<std::size_t>(t.out)] += v;
      } else {
        out[static_cast<std::size_t>(t.out)] -= v;
      }
    }
  }

 private:
  DiffForm a_, b_;
  const std::vector<WedgeTerm>* table_;
};

class DerivativeNode final : public FormNodeImpl<DerivativeNode> {
 public:
  DerivativeNode(DiffForm a, Differentiation diff)
      : FormNodeImpl(a.chart(), a.degree() + 1), a_(std::move(a)), diff_(diff) {}

  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int n = dim();
    const auto& bin = FormBasis::get(n, a_.degree());
    const auto& bout = FormBasis::get(n, degree());
    auto accumulate = [&](int i, const auto& partial) {
      for (int k = 0; k < bin.size(); ++k) {
        Mask m = bin.mask(k);
        if (m & (Mask(1) << i)) continue;
        auto o = static_cast<std::size_t>(bout.index(m | (Mask(1) << i)));
        const Cx<T>& dv = partial[static_cast<std::size_t>(k)];
        if (std::popcount(m & below(i)) & 1) {
          out[o] -= dv;
        } else {
          out[o] += dv;
        }
      }
    };
    if (diff_.analytic()) {
      if constexpr (kCanDifferentiate<T>) {
        auto xd = promote(x, n);
        Components<Dual<T>> cd;
        Components<T> partial(static_cast<std::size_t>(bin.size()));
        for (int i = 0; i < n; ++i) {
          xd[static_cast<std::size_t>(i)].d = T(1.0);
          a_.node().eval(xd, cd);
          xd[static_cast<std::size_t>(i)].d = T(0.0);
          for (std::size_t k = 0; k < cd.size(); ++k) partial[k] = derivative_of(cd[k]);
          accumulate(i, partial);
        }
      } else {
        throw DepthError();
      }
    } else {
      const double h = diff_.fd_step;
      Components<T> cp, cm;
      Components<T> partial(static_cast<std::size_t>(bin.size()));
      for (int i = 0; i < n; ++i) {
        Point<T> xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += h;
        xm[static_cast<std::size_t>(i)] -= h;
        a_.node().eval(xp, cp);
        a_.node().eval(xm, cm);
        for (std::size_t k = 0; k < cp.size(); ++k) partial[k] = (cp[k] - cm[k]) / (2.0 * h);
        accumulate(i, partial);
      }
    }
  }

 private:
  DiffForm a_;
  Differentiation diff_;
};

class InteriorNode final : public FormNodeImpl<InteriorNode> {
 public:
  InteriorNode(VectorField v, DiffForm a) : FormNodeImpl(a.chart(), a.degree() - 1), v_(std::move(v)), a_(std::move(a)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int n = dim();
    Components<T> ca;
    a_.node().eval(x, ca);
    Vec<T> v;
    v_.node().eval(x, v);
    const auto& bin = FormBasis::get(n, a_.degree());
    const auto& bout = FormBasis::get(n, degree());
    for (int j = 0; j < bout.size(); ++j) {
      Mask m = bout.mask(j);
      Cx<T> acc(T(0.0));
      for (int k = 0; k < n; ++k) {
        if (m & (Mask(1) << k)) continue;
        Cx<T> term = v[static_cast<std::size_t>(k)] * ca[static_cast<std::size_t>(bin.index(m | (Mask(1) << k)))];
        if (std::popcount(m & below(k)) & 1) {
          acc -= term;
        } else {
          acc += term;
        }
      }
      out[static_cast<std::size_t>(j)] = acc;
    }
  }

 private:
  VectorField v_;
  DiffForm a_;
};

class FlatNode final : public FormNodeImpl<FlatNode> {
 public:
  FlatNode(MetricField g, VectorField v) : FormNodeImpl(g.chart(), 1), g_(std::move(g)), v_(std::move(v)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int n = dim();
    Mat<T> g;
    g_.node().eval(x, g);
    Vec<T> v;
    v_.node().eval(x, v);
    for (int i = 0; i < n; ++i) {
      T s(0.0);
      for (int j = 0; j < n; ++j) s += g[i][j] * v[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(i)] = Cx<T>(s);
    }
  }

 private:
  MetricField g_;
  VectorField v_;
};

class HodgeNode final : public FormNodeImpl<HodgeNode> {
 public:
  HodgeNode(MetricField g, DiffForm a) : FormNodeImpl(a.chart(), a.dim() - a.degree()), g_(std::move(g)), a_(std::move(a)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int n = dim();
    const int p = a_.degree();
    Mat<T> g, gi;
    g_.node().eval(x, g);
    T det;
    spd_inverse(g, n, gi, det);
    T vol = sqrt(det);
    Components<T> ca;
    a_.node().eval(x, ca);
    const auto& bin = FormBasis::get(n, p);
    const auto& bout = FormBasis::get(n, n - p);
    const Mask full = (Mask(1) << n) - 1;
    std::array<int, kMaxDim> rows{}, cols{};
    for (int j = 0; j < bout.size(); ++j) {
      Mask jm = bout.mask(j);
      Mask im = full ^ jm;
      int nr = 0;
      for (int i = 0; i < n; ++i)
        if (im & (Mask(1) << i)) rows[static_cast<std::size_t>(nr++)] = i;
      // Raised component a^{I} = sum_K det(g^{-1}[I, K]) a_K.
      Cx<T> raised(T(0.0));
      for (int k = 0; k < bin.size(); ++k) {
        Mask km = bin.mask(k);
        int nc = 0;
        for (int i = 0; i < n; ++i)
          if (km & (Mask(1) << i)) cols[static_cast<std::size_t>(nc++)] = i;
        T minor(1.0);
        if (p > 0) {
          Mat<T> sub;
          for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c)
              sub[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                  gi[rows[static_cast<std::size_t>(r)]][cols[static_cast<std::size_t>(c)]];
          minor = small_det<T>(sub, p);
        }
        raised += minor * ca[static_cast<std::size_t>(k)];
      }
      Cx<T> v = vol * raised;
      out[static_cast<std::size_t>(j)] = shuffle_sign(im, jm) > 0 ? v : -v;
    }
  }

 private:
  MetricField g_;
  DiffForm a_;
};

enum class PartKind { kReal, kImag, kConj };

class PartNode final : public FormNodeImpl<PartNode> {
 public:
  PartNode(DiffForm a, PartKind kind) : FormNodeImpl(a.chart(), a.degree()), a_(std::move(a)), kind_(kind) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    a_.node().eval(x, out);
    for (auto& c : out) {
      switch (kind_) {
        case PartKind::kReal: c = Cx<T>(c.re); break;
        case PartKind::kImag: c = Cx<T>(c.im); break;
        case PartKind::kConj: c = conj(c); break;
      }
    }
  }

 private:
  DiffForm a_;
  PartKind kind_;
};

class ExpNode final : public FormNodeImpl<ExpNode> {
 public:
  explicit ExpNode(DiffForm f) : FormNodeImpl(f.chart(), 0), f_(std::move(f)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    f_.node().eval(x, out);
    out[0] = exp(out[0]);
  }

 private:
  DiffForm f_;
};

class ConePullbackNode final : public FormNodeImpl<ConePullbackNode> {
 public:
  ConePullbackNode(DiffForm a, ChartPtr cone) : FormNodeImpl(std::move(cone), a.degree()), a_(std::move(a)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int nb = a_.dim();
    Point<T> xb{};
    for (int i = 0; i < nb; ++i) xb[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i + 1)];
    Components<T> cb;
    a_.node().eval(xb, cb);
    const auto& bb = FormBasis::get(nb, degree());
    const auto& bc = FormBasis::get(dim(), degree());
    for (int k = 0; k < bb.size(); ++k) {
      out[static_cast<std::size_t>(bc.index(bb.mask(k) << 1))] = cb[static_cast<std::size_t>(k)];
    }
  }

 private:
  DiffForm a_;
};

class SliceNode final : public FormNodeImpl<SliceNode> {
 public:
  SliceNode(DiffForm a, ChartPtr base, double r0) : FormNodeImpl(std::move(base), a.degree()), a_(std::move(a)), r0_(r0) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    const int nb = dim();
    Point<T> xc{};
    xc[0] = T(r0_);
    for (int i = 0; i < nb; ++i) xc[static_cast<std::size_t>(i + 1)] = x[static_cast<std::size_t>(i)];
    Components<T> cc;
    a_.node().eval(xc, cc);
    const auto& bb = FormBasis::get(nb, degree());
    const auto& bc = FormBasis::get(nb + 1, degree());
    for (int k = 0; k < bb.size(); ++k) {
      out[static_cast<std::size_t>(k)] = cc[static_cast<std::size_t>(bc.index(bb.mask(k) << 1))];
    }
  }

 private:
  DiffForm a_;
  double r0_;
};

void require_degree(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

FormNode::FormNode(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw Error("form without chart");
  if (degree_ < 0 || degree_ > chart_->dim()) {
    throw Error("form degree " + std::to_string(degree_) + " out of range for chart " + chart_->name);
  }
}

std::vector<Complex> DiffForm::components(const ChartPoint& p) const {
  require_same_chart(chart(), p.chart, "DiffForm::components");
  return at(p.coords());
}

Complex DiffForm::component(const ChartPoint& p, std::initializer_list<int> indices) const {
  return component(p, std::span<const int>(indices.begin(), indices.size()));
}

Complex DiffForm::component(const ChartPoint& p, std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree()) throw Error("component: index count differs from degree");
  auto c = components(p);
  return component_at(c, dim(), indices);
}

DiffForm zero_form(ChartPtr chart, int degree) {
  return lambda_form(std::move(chart), degree, [](const auto&, auto&) {});
}

DiffForm constant_scalar(ChartPtr chart, Complex value) {
  return lambda_form(std::move(chart), 0, [value](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.set_scalar(Cx<T>(T(value.re), T(value.im)));
  });
}

DiffForm coordinate_function(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim()) throw Error("coordinate index out of range");
  return lambda_form(std::move(chart), 0, [i](const auto& x, auto& w) { w.set_scalar(x[static_cast<std::size_t>(i)]); });
}

DiffForm coordinate_differential(ChartPtr chart, int i) {
  if (i < 0 || i >= chart->dim()) throw Error("coordinate index out of range");
  return lambda_form(std::move(chart), 1, [i](const auto& x, auto& w) {
    using T = std::decay_t<decltype(x[0])>;
    w.add({i}, T(1.0));
  });
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart(), "form sum");
  require_degree(a.degree() == b.degree(), "form sum: degree mismatch");
  return DiffForm(std::make_shared<SumNode>(a, b, Complex(1.0)));
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart(), "form difference");
  require_degree(a.degree() == b.degree(), "form difference: degree mismatch");
  return DiffForm(std::make_shared<SumNode>(a, b, Complex(-1.0)));
}

DiffForm operator-(const DiffForm& a) { return DiffForm(std::make_shared<ScaleNode>(a, Complex(-1.0))); }

DiffForm operator*(Complex s, const DiffForm& a) { return DiffForm(std::make_shared<ScaleNode>(a, s)); }

DiffForm operator*(double s, const DiffForm& a) { return Complex(s) * a; }

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  require_degree(a.degree() + b.degree() <= a.dim(), "wedge: degree exceeds chart dimension");
  return DiffForm(std::make_shared<WedgeNode>(a, b));
}

DiffForm exterior_derivative(const DiffForm& a, Differentiation diff) {
  require_degree(a.degree() < a.dim(), "exterior_derivative: degree must be below the chart dimension");
  return DiffForm(std::make_shared<DerivativeNode>(a, diff));
}

DiffForm interior_product(const VectorField& x, const DiffForm& a) {
  require_same_chart(x.chart(), a.chart(), "interior_product");
  require_degree(a.degree() >= 1, "interior_product: needs a form of degree >= 1");
  return DiffForm(std::make_shared<InteriorNode>(x, a));
}

DiffForm musical_flat(const MetricField& g, const VectorField& x) {
  require_same_chart(g.chart(), x.chart(), "musical_flat");
  return DiffForm(std::make_shared<FlatNode>(g, x));
}

DiffForm hodge_star(const MetricField& g, const DiffForm& a) {
  require_same_chart(g.chart(), a.chart(), "hodge_star");
  return DiffForm(std::make_shared<HodgeNode>(g, a));
}

DiffForm codifferential(const MetricField& g, const DiffForm& a, Differentiation diff) {
  require_degree(a.degree() >= 1, "codifferential: needs a form of degree >= 1");
  const int n = a.dim();
  const int p = a.degree();
  double sign = ((n * (p + 1) + 1) & 1) ? -1.0 : 1.0;
  return sign * hodge_star(g, exterior_derivative(hodge_star(g, a), diff));
}

DiffForm real_part(const DiffForm& a) { return DiffForm(std::make_shared<PartNode>(a, PartKind::kReal)); }
DiffForm imag_part(const DiffForm& a) { return DiffForm(std::make_shared<PartNode>(a, PartKind::kImag)); }
DiffForm conjugate(const DiffForm& a) { return DiffForm(std::make_shared<PartNode>(a, PartKind::kConj)); }

DiffForm exp_scalar(const DiffForm& f) {
  require_degree(f.degree() == 0, "exp_scalar: needs a 0-form");
  return DiffForm(std::make_shared<ExpNode>(f));
}

DiffForm pullback_to_cone(const DiffForm& base_form, const ChartPtr& cone) {
  if (cone->dim() != base_form.dim() + 1) throw ChartMismatch("pullback_to_cone: cone dimension mismatch");
  return DiffForm(std::make_shared<ConePullbackNode>(base_form, cone));
}

DiffForm restrict_to_slice(const DiffForm& cone_form, const ChartPtr& base, double r0) {
  if (cone_form.dim() != base->dim() + 1) throw ChartMismatch("restrict_to_slice: cone dimension mismatch");
  require_degree(cone_form.degree() <= base->dim(), "restrict_to_slice: degree exceeds base dimension");
  return DiffForm(std::make_shared<SliceNode>(cone_form, base, r0));
}

ScalarField::ScalarField(DiffForm f) : form_(std::move(f)) {
  if (form_.degree() != 0) throw Error("ScalarField: needs a 0-form");
}

Complex ScalarField::value(const ChartPoint& p) const { return form_.components(p)[0]; }

ScalarField::Jet ScalarField::jet(const ChartPoint& p) const {
  require_same_chart(form_.chart(), p.chart, "ScalarField::jet");
  const int n = form_.dim();
  auto x = p.coords();
  Jet j;
  j.value = form_.at(x)[0];
  j.gradient.resize(static_cast<std::size_t>(n));
  j.hessian.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  auto xd = promote(promote(x, n), n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      auto y = xd;
      y[static_cast<std::size_t>(a)].d.v = 1.0;
      y[static_cast<std::size_t>(b)].v.d = 1.0;
      auto c = form_.at(y)[0];
      Complex h{c.re.d.d, c.im.d.d};
      j.hessian[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = h;
      j.hessian[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = h;
      if (a == b) j.gradient[static_cast<std::size_t>(a)] = Complex{c.re.d.v, c.im.d.v};
    }
  }
  return j;
}

std::vector<Complex> ScalarField::fd_gradient(const ChartPoint& p, double h) const {
  const int n = form_.dim();
  std::vector<Complex> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto xp = p.coords(), xm = p.coords();
    xp[static_cast<std::size_t>(i)] += h;
    xm[static_cast<std::size_t>(i)] -= h;
    auto fp = form_.at(xp)[0];
    auto fm = form_.at(xm)[0];
    g[static_cast<std::size_t>(i)] = (fp - fm) / (2.0 * h);
  }
  return g;
}

VectorField constant_vector_field(ChartPtr chart, std::vector<double> components) {
  if (static_cast<int>(components.size()) != chart->dim()) throw Error("vector field: component count differs from chart dimension");
  return make_vector_field(std::move(chart), [c = std::move(components)](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = T(c[i]);
  });
}

VectorField coordinate_vector_field(ChartPtr chart, int i) {
  std::vector<double> c(static_cast<std::size_t>(chart->dim()), 0.0);
  c.at(static_cast<std::size_t>(i)) = 1.0;
  return constant_vector_field(std::move(chart), std::move(c));
}

}  // namespace skf
