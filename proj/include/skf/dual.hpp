#pragma once

// Forward-mode automatic differentiation scalars.
//
// Dual<T> carries a value and a single directional derivative. Nesting
// Dual<Dual<double>> gives mixed second derivatives, and so on. Each level
// is seeded along one coordinate direction by the code that needs the
// derivative, so a derivative node costs one child evaluation per direction.

#include <cmath>
#include <type_traits>

namespace skf {

template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
  template <class A>
    requires std::is_arithmetic_v<A>
  constexpr Dual(A a) : v(static_cast<double>(a)), d(0.0) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
  Dual& operator*=(double s) { v *= s; d *= s; return *this; }
  Dual& operator/=(double s) { v /= s; d /= s; return *this; }

  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }
  friend Dual operator+(const Dual& a, double s) { return {a.v + s, a.d}; }
  friend Dual operator+(double s, const Dual& a) { return {s + a.v, a.d}; }
  friend Dual operator-(const Dual& a, double s) { return {a.v - s, a.d}; }
  friend Dual operator-(double s, const Dual& a) { return {s - a.v, -a.d}; }
  friend Dual operator*(const Dual& a, double s) { return {a.v * s, a.d * s}; }
  friend Dual operator*(double s, const Dual& a) { return {s * a.v, s * a.d}; }
  friend Dual operator/(const Dual& a, double s) { return {a.v / s, a.d / s}; }
  friend Dual operator/(double s, const Dual& a) {
    T q = s / a.v;
    return {q, -q * a.d / a.v};
  }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

template <class T>
struct DualDepth : std::integral_constant<int, 0> {};
template <class T>
struct DualDepth<Dual<T>> : std::integral_constant<int, 1 + DualDepth<T>::value> {};

// Deepest scalar type the type-erased evaluators are instantiated for.
inline constexpr int kMaxDualDepth = 4;

template <class T>
inline constexpr bool kCanDifferentiate = DualDepth<T>::value < kMaxDualDepth;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

// Seed a variable: value x with unit derivative.
template <class T>
Dual<T> seeded(const T& x) {
  return Dual<T>(x, T(1.0));
}

// Outermost derivative part.
template <class T>
T derivative_of(const Dual<T>& x) {
  return x.d;
}

inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tan(double x) { return std::tan(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double e) { return std::pow(x, e); }

template <class T>
Dual<T> sin(const Dual<T>& a) {
  return {sin(a.v), cos(a.v) * a.d};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  return {cos(a.v), -sin(a.v) * a.d};
}
template <class T>
Dual<T> tan(const Dual<T>& a) {
  T t = tan(a.v);
  return {t, (1.0 + t * t) * a.d};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
  T e = exp(a.v);
  return {e, e * a.d};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  return {log(a.v), a.d / a.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
template <class T>
Dual<T> pow(const Dual<T>& a, double e) {
  T p = pow(a.v, e - 1.0);
  return {p * a.v, e * p * a.d};
}

template <class T>
T cot(const T& x) {
  return cos(x) / sin(x);
}

// Complex number over an arbitrary (possibly dual) real scalar.
template <class T>
struct Cx {
  T re{};
  T im{};

  constexpr Cx() = default;
  constexpr Cx(T r) : re(r), im(0.0) {}
  constexpr Cx(T r, T i) : re(r), im(i) {}
  template <class A>
    requires std::is_arithmetic_v<A>
  constexpr Cx(A r) : re(static_cast<double>(r)), im(0.0) {}

  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) { *this = *this * o; return *this; }
  Cx& operator*=(double s) { re *= s; im *= s; return *this; }

  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend Cx operator*(const Cx& a, double s) { return {a.re * s, a.im * s}; }
  friend Cx operator*(double s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, double s) { return {a.re / s, a.im / s}; }
};

template <class T>
Cx<T> conj(const Cx<T>& a) {
  return {a.re, -a.im};
}

template <class T>
Cx<T> exp(const Cx<T>& a) {
  T m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}

template <class T>
Cx<T> operator*(const Cx<T>& a, const T& s)
  requires(!std::is_same_v<T, double>)
{
  return {a.re * s, a.im * s};
}
template <class T>
Cx<T> operator*(const T& s, const Cx<T>& a)
  requires(!std::is_same_v<T, double>)
{
  return {s * a.re, s * a.im};
}

using Complex = Cx<double>;

inline double abs(const Complex& z) { return std::hypot(z.re, z.im); }

template <class T>
Complex value_of(const Cx<T>& z) {
  return {value_of(z.re), value_of(z.im)};
}

template <class T>
Cx<T> derivative_of(const Cx<Dual<T>>& z) {
  return {z.re.d, z.im.d};
}

}  // namespace skf
