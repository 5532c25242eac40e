#pragma once

// Complex-coefficient exterior algebra on a chart.
//
// A p-form stores its components on strictly increasing index tuples, which
// are represented as bitmasks over the chart coordinates and enumerated in
// lexicographic order. Components at any other index tuple are obtained by
// sign(permutation), or 0 for repeated indices.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skf/field.hpp"

namespace skf {

using Mask = std::uint32_t;

// Canonical basis of p-forms in n dimensions.
class FormBasis {
 public:
  static const FormBasis& get(int n, int p);

  int dim() const { return n_; }
  int degree() const { return p_; }
  int size() const { return static_cast<int>(masks_.size()); }
  Mask mask(int k) const { return masks_[static_cast<std::size_t>(k)]; }
  // Position of a mask of popcount p, or -1.
  int index(Mask m) const { return lookup_[m]; }
  std::vector<int> tuple(int k) const;

 private:
  FormBasis(int n, int p);
  int n_;
  int p_;
  std::vector<Mask> masks_;
  std::vector<int> lookup_;
};

int binomial(int n, int k);

// Sign of the permutation sorting `indices`, or 0 if an index repeats.
int permutation_sign(std::span<const int> indices);

// (-1)^{number of pairs (i in a, j in b) with j < i}: the sign of the
// permutation that sorts the concatenation (a, b) of two disjoint sets.
int shuffle_sign(Mask a, Mask b);

Mask to_mask(std::span<const int> increasing);

template <class T>
using Components = std::vector<Cx<T>>;

class FormNode {
 public:
  FormNode(ChartPtr chart, int degree);
  virtual ~FormNode() = default;

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int dim() const { return chart_->dim(); }
  int size() const { return binomial(dim(), degree_); }

#define SKF_DECL(T) virtual void eval(const Point<T>& x, Components<T>& out) const = 0;
  SKF_SCALAR_TYPES(SKF_DECL)
#undef SKF_DECL

 private:
  ChartPtr chart_;
  int degree_;
};

template <class Derived>
class FormNodeImpl : public FormNode {
 public:
  using FormNode::FormNode;
#define SKF_IMPL(T)                                                    \
  void eval(const Point<T>& x, Components<T>& out) const final {     \
    out.assign(static_cast<std::size_t>(this->size()), Cx<T>(T(0.0))); \
    static_cast<const Derived*>(this)->evaluate(x, out);             \
  }
  SKF_SCALAR_TYPES(SKF_IMPL)
#undef SKF_IMPL
};

// Immutable handle to a differential form.
class DiffForm {
 public:
  DiffForm() = default;
  explicit DiffForm(std::shared_ptr<const FormNode> node) : node_(std::move(node)) {}

  const ChartPtr& chart() const { return node_->chart(); }
  int degree() const { return node_->degree(); }
  int dim() const { return node_->dim(); }
  const FormNode& node() const { return *node_; }
  const std::shared_ptr<const FormNode>& ptr() const { return node_; }
  explicit operator bool() const { return static_cast<bool>(node_); }

  template <class T>
  Components<T> at(const Point<T>& x) const {
    Components<T> out;
    node_->eval(x, out);
    return out;
  }
  std::vector<Complex> components(const ChartPoint& p) const;

  // Component at an arbitrary (possibly unsorted or repeating) index tuple.
  Complex component(const ChartPoint& p, std::initializer_list<int> indices) const;
  Complex component(const ChartPoint& p, std::span<const int> indices) const;

 private:
  std::shared_ptr<const FormNode> node_;
};

// Signed lookup of a component at an arbitrary index tuple.
template <class T>
Cx<T> component_at(const Components<T>& c, int n, std::span<const int> indices) {
  int s = permutation_sign(indices);
  if (s == 0) return Cx<T>(T(0.0));
  Mask m = 0;
  for (int i : indices) m |= Mask(1) << i;
  int k = FormBasis::get(n, static_cast<int>(indices.size())).index(m);
  return s > 0 ? c[static_cast<std::size_t>(k)] : -c[static_cast<std::size_t>(k)];
}

// Writer handed to lambda-defined forms. Indices may be given in any order.
template <class T>
class FormWriter {
 public:
  FormWriter(Components<T>& out, int n, int p) : out_(out), n_(n), p_(p) {}
  void add(std::initializer_list<int> indices, const Cx<T>& value) {
    int s = permutation_sign(std::span<const int>(indices.begin(), indices.size()));
    if (s == 0 || static_cast<int>(indices.size()) != p_) throw Error("FormWriter: bad index tuple");
    Mask m = 0;
    for (int i : indices) m |= Mask(1) << i;
    auto k = static_cast<std::size_t>(FormBasis::get(n_, p_).index(m));
    if (s > 0) {
      out_[k] += value;
    } else {
      out_[k] -= value;
    }
  }
  void add(std::initializer_list<int> indices, const T& value) { add(indices, Cx<T>(value)); }
  void set_scalar(const Cx<T>& value) { out_[0] = value; }
  void set_scalar(const T& value) { out_[0] = Cx<T>(value); }

 private:
  Components<T>& out_;
  int n_;
  int p_;
};

template <class F>
class LambdaForm final : public FormNodeImpl<LambdaForm<F>> {
 public:
  LambdaForm(ChartPtr chart, int degree, F f) : FormNodeImpl<LambdaForm<F>>(std::move(chart), degree), f_(std::move(f)) {}
  template <class T>
  void evaluate(const Point<T>& x, Components<T>& out) const {
    FormWriter<T> w(out, this->dim(), this->degree());
    f_(x, w);
  }

 private:
  F f_;
};

// Form defined by a generic callable f(x, writer).
template <class F>
DiffForm lambda_form(ChartPtr chart, int degree, F f) {
  return DiffForm(std::make_shared<LambdaForm<F>>(std::move(chart), degree, std::move(f)));
}

// 0-form from a generic callable f(x) returning a real or complex scalar.
template <class F>
DiffForm scalar_field(ChartPtr chart, F f) {
  auto g = [f = std::move(f)](const auto& x, auto& w) { w.set_scalar(f(x)); };
  return lambda_form(std::move(chart), 0, std::move(g));
}

DiffForm zero_form(ChartPtr chart, int degree);
DiffForm constant_scalar(ChartPtr chart, Complex value);
// The coordinate function x^i as a 0-form.
DiffForm coordinate_function(ChartPtr chart, int i);
// dx^i.
DiffForm coordinate_differential(ChartPtr chart, int i);

DiffForm operator+(const DiffForm& a, const DiffForm& b);
DiffForm operator-(const DiffForm& a, const DiffForm& b);
DiffForm operator-(const DiffForm& a);
DiffForm operator*(Complex s, const DiffForm& a);
DiffForm operator*(double s, const DiffForm& a);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_derivative(const DiffForm& a, Differentiation diff = {});
DiffForm interior_product(const VectorField& x, const DiffForm& a);
DiffForm musical_flat(const MetricField& g, const VectorField& x);
DiffForm hodge_star(const MetricField& g, const DiffForm& a);
// d* = (-1)^{n(p+1)+1} * d * on p-forms in n dimensions.
DiffForm codifferential(const MetricField& g, const DiffForm& a, Differentiation diff = {});

DiffForm real_part(const DiffForm& a);
DiffForm imag_part(const DiffForm& a);
DiffForm conjugate(const DiffForm& a);
// exp of a 0-form.
DiffForm exp_scalar(const DiffForm& f);

// Pull back a base form along the projection C(M) -> M.
DiffForm pullback_to_cone(const DiffForm& base_form, const ChartPtr& cone);
// Pull back a cone form to the slice {r = r0}, identified with the base.
DiffForm restrict_to_slice(const DiffForm& cone_form, const ChartPtr& base, double r0);

// Scalar field with jet evaluation up to second order.
class ScalarField {
 public:
  explicit ScalarField(DiffForm f);

  struct Jet {
    Complex value;
    std::vector<Complex> gradient;
    std::vector<std::vector<Complex>> hessian;
  };

  const DiffForm& form() const { return form_; }
  Complex value(const ChartPoint& p) const;
  Jet jet(const ChartPoint& p) const;
  std::vector<Complex> fd_gradient(const ChartPoint& p, double h) const;

 private:
  DiffForm form_;
};

// Human-readable name of a basis element, e.g. "dtheta1^dphi2".
std::string basis_label(const Chart& chart, Mask m);

}  // namespace skf
