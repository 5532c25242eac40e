#pragma once

// Type-erased tensor-field evaluators.
//
// Every evaluator is callable at each scalar level double, D1..D4, so that a
// derived quantity (exterior derivative, Christoffel symbols, ...) can
// differentiate its inputs by evaluating them one dual level deeper.

#include <array>
#include <memory>
#include <type_traits>
#include <utility>

#include "skf/chart.hpp"
#include "skf/dual.hpp"

#define SKF_SCALAR_TYPES(X) X(double) X(::skf::D1) X(::skf::D2) X(::skf::D3) X(::skf::D4)

namespace skf {

template <class T>
using Mat = std::array<std::array<T, kMaxDim>, kMaxDim>;

template <class T>
using Vec = std::array<T, kMaxDim>;

class DepthError : public Error {
 public:
  DepthError() : Error("derivative nesting exceeds the supported dual depth") {}
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

struct Differentiation {
  enum class Mode { kAnalytic, kFiniteDifference };
  Mode mode = Mode::kAnalytic;
  double fd_step = 1e-5;

  bool analytic() const { return mode == Mode::kAnalytic; }
};

// Lift a real point into the next dual level, all derivative parts zero.
template <class T>
Point<Dual<T>> promote(const Point<T>& x, int dim) {
  Point<Dual<T>> y{};
  for (int i = 0; i < dim; ++i) y[static_cast<std::size_t>(i)] = Dual<T>(x[static_cast<std::size_t>(i)], T(0.0));
  return y;
}

// ---------------------------------------------------------------------------
// Symmetric rank-2 covariant tensor fields (metrics, Stackel-Killing tensors).

class SymTensorNode {
 public:
  explicit SymTensorNode(ChartPtr chart) : chart_(std::move(chart)) {}
  virtual ~SymTensorNode() = default;
  const ChartPtr& chart() const { return chart_; }

#define SKF_DECL(T) virtual void eval(const Point<T>& x, Mat<T>& out) const = 0;
  SKF_SCALAR_TYPES(SKF_DECL)
#undef SKF_DECL

 private:
  ChartPtr chart_;
};

template <class Derived>
class SymTensorNodeImpl : public SymTensorNode {
 public:
  using SymTensorNode::SymTensorNode;
#define SKF_IMPL(T) \
  void eval(const Point<T>& x, Mat<T>& out) const final { static_cast<const Derived*>(this)->evaluate(x, out); }
  SKF_SCALAR_TYPES(SKF_IMPL)
#undef SKF_IMPL
};

// Wraps a generic callable f(x, out) filling the dim x dim block of out.
template <class F>
class LambdaSymTensor final : public SymTensorNodeImpl<LambdaSymTensor<F>> {
 public:
  LambdaSymTensor(ChartPtr chart, F f) : SymTensorNodeImpl<LambdaSymTensor<F>>(std::move(chart)), f_(std::move(f)) {}
  template <class T>
  void evaluate(const Point<T>& x, Mat<T>& out) const {
    for (auto& row : out) row.fill(T(0.0));
    f_(x, out);
  }

 private:
  F f_;
};

class MetricField {
 public:
  MetricField() = default;
  explicit MetricField(std::shared_ptr<const SymTensorNode> node) : node_(std::move(node)) {}

  const ChartPtr& chart() const { return node_->chart(); }
  int dim() const { return node_->chart()->dim(); }
  const SymTensorNode& node() const { return *node_; }
  const std::shared_ptr<const SymTensorNode>& ptr() const { return node_; }

  template <class T>
  Mat<T> at(const Point<T>& x) const {
    Mat<T> g;
    node_->eval(x, g);
    return g;
  }
  Mat<double> at(const ChartPoint& p) const { return at(p.coords()); }

 private:
  std::shared_ptr<const SymTensorNode> node_;
};

template <class F>
MetricField make_metric(ChartPtr chart, F f) {
  return MetricField(std::make_shared<LambdaSymTensor<F>>(std::move(chart), std::move(f)));
}

// ---------------------------------------------------------------------------
// Real vector fields.

class VectorNode {
 public:
  explicit VectorNode(ChartPtr chart) : chart_(std::move(chart)) {}
  virtual ~VectorNode() = default;
  const ChartPtr& chart() const { return chart_; }

#define SKF_DECL(T) virtual void eval(const Point<T>& x, Vec<T>& out) const = 0;
  SKF_SCALAR_TYPES(SKF_DECL)
#undef SKF_DECL

 private:
  ChartPtr chart_;
};

template <class F>
class LambdaVector final : public VectorNode {
 public:
  LambdaVector(ChartPtr chart, F f) : VectorNode(std::move(chart)), f_(std::move(f)) {}
#define SKF_IMPL(T)                                          \
  void eval(const Point<T>& x, Vec<T>& out) const final { \
    out.fill(T(0.0));                                        \
    f_(x, out);                                              \
  }
  SKF_SCALAR_TYPES(SKF_IMPL)
#undef SKF_IMPL

 private:
  F f_;
};

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::shared_ptr<const VectorNode> node) : node_(std::move(node)) {}

  const ChartPtr& chart() const { return node_->chart(); }
  const VectorNode& node() const { return *node_; }

  template <class T>
  Vec<T> at(const Point<T>& x) const {
    Vec<T> v;
    node_->eval(x, v);
    return v;
  }
  Vec<double> at(const ChartPoint& p) const { return at(p.coords()); }

 private:
  std::shared_ptr<const VectorNode> node_;
};

template <class F>
VectorField make_vector_field(ChartPtr chart, F f) {
  return VectorField(std::make_shared<LambdaVector<F>>(std::move(chart), std::move(f)));
}

// Constant-coefficient field sum_i c_i d/dx^i.
VectorField constant_vector_field(ChartPtr chart, std::vector<double> components);

// d/dx^i.
VectorField coordinate_vector_field(ChartPtr chart, int i);

}  // namespace skf
