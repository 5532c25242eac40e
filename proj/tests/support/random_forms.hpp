#pragma once

// Randomised form families for property tests: sums of products of sin, cos
// and quadratic polynomials of the chart coordinates.

#include <random>
#include <vector>

#include "skf/exterior.hpp"

namespace skf::testing {

struct Factor {
  int kind;  // 0 sin, 1 cos, 2 quadratic
  int var;
  double freq;
};

struct Term {
  double coef;
  Factor a;
  Factor b;
};

template <class T>
T eval_factor(const Factor& f, const T& x) {
  switch (f.kind) {
    case 0: return sin(f.freq * x);
    case 1: return cos(f.freq * x);
    default: return f.freq * x * x + x;
  }
}

inline std::vector<Term> random_terms(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2), var(0, dim - 1), count(1, 3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), freq(0.5, 2.0);
  std::vector<Term> terms(static_cast<std::size_t>(count(rng)));
  for (auto& t : terms) {
    t.coef = coef(rng);
    t.a = {kind(rng), var(rng), freq(rng)};
    t.b = {kind(rng), var(rng), freq(rng)};
  }
  return terms;
}

inline DiffForm random_scalar(const ChartPtr& chart, std::mt19937_64& rng) {
  auto terms = random_terms(chart->dim(), rng);
  return scalar_field(chart, [terms](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T s(0.0);
    for (const auto& t : terms) {
      s += t.coef * eval_factor(t.a, x[static_cast<std::size_t>(t.a.var)]) *
           eval_factor(t.b, x[static_cast<std::size_t>(t.b.var)]);
    }
    return s;
  });
}

inline DiffForm random_one_form(const ChartPtr& chart, std::mt19937_64& rng) {
  DiffForm out = zero_form(chart, 1);
  for (int i = 0; i < chart->dim(); ++i) {
    out = out + wedge(random_scalar(chart, rng), coordinate_differential(chart, i));
  }
  return out;
}

inline double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, abs(c));
  return m;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, abs(a[i] - b[i]));
  return m;
}

}  // namespace skf::testing
