// include/llrcal/dual.hpp

// Copyright 2026  The llrcal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LLRCAL_DUAL_HPP_
#define LLRCAL_DUAL_HPP_

// Generic scalars for forward-mode differentiation.
//
// Every density and objective in the library is a template over its scalar
// type and calls the elementary functions below with a qualified `ad::`
// prefix.  Supported scalars are
//   double                  plain evaluation,
//   std::complex<double>    complex-step evaluation (imaginary part is an
//                           infinitesimal perturbation),
//   Dual<T, N>              N tangents over any supported T; nests, so
//                           Dual<Dual<double, D>, 1> carries a gradient and
//                           a directional derivative of it.
// For the complex scalar, non-analytic functions (abs) and library special
// functions use their first-order Taylor extension, which is what the
// complex-step method needs.

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace llrcal::ad {

template <class T, int N>
struct Dual;

template <class T>
struct is_dual : std::false_type {};
template <class T, int N>
struct is_dual<Dual<T, N>> : std::true_type {};

/// Value with N directional derivatives of type T.
template <class T, int N>
struct Dual {
  static_assert(N >= 1);
  T v{};
  std::array<T, N> d{};

  Dual() : v(0.0) { d.fill(T(0.0)); }

  template <class U>
    requires std::is_arithmetic_v<U>
  Dual(U x) : v(static_cast<double>(x)) {  // NOLINT: implicit by design of the scalar contract
    d.fill(T(0.0));
  }

  Dual(const T &value)  // NOLINT
    requires(!std::is_arithmetic_v<T>)
      : v(value) {
    d.fill(T(0.0));
  }

  Dual(const T &value, const std::array<T, N> &tangent) : v(value), d(tangent) {}

  /// A variable with unit tangent in direction i.
  static Dual variable(const T &value, int i) {
    Dual r(value, {});
    r.d.fill(T(0.0));
    r.d[i] = T(1.0);
    return r;
  }

  Dual &operator+=(const Dual &o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual &operator-=(const Dual &o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual &operator*=(const Dual &o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual &operator/=(const Dual &o) {
    const T inv = T(1.0) / o.v;
    v *= inv;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * o.d[i]) * inv;
    return *this;
  }
  Dual &operator*=(double s) {
    v *= s;
    for (auto &e : d) e *= s;
    return *this;
  }
};

template <class T, int N>
Dual<T, N> operator-(const Dual<T, N> &a) {
  Dual<T, N> r(-a.v, {});
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N> &b) { return a += b; }
template <class T, int N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N> &b) { return a -= b; }
template <class T, int N>
Dual<T, N> operator*(Dual<T, N> a, const Dual<T, N> &b) { return a *= b; }
template <class T, int N>
Dual<T, N> operator/(Dual<T, N> a, const Dual<T, N> &b) { return a /= b; }

template <class T, int N>
Dual<T, N> operator+(Dual<T, N> a, double b) {
  a.v += b;
  return a;
}
template <class T, int N>
Dual<T, N> operator+(double b, Dual<T, N> a) { return a + b; }
template <class T, int N>
Dual<T, N> operator-(Dual<T, N> a, double b) {
  a.v -= b;
  return a;
}
template <class T, int N>
Dual<T, N> operator-(double b, const Dual<T, N> &a) { return -a + b; }
template <class T, int N>
Dual<T, N> operator*(Dual<T, N> a, double b) { return a *= b; }
template <class T, int N>
Dual<T, N> operator*(double b, Dual<T, N> a) { return a *= b; }
template <class T, int N>
Dual<T, N> operator/(Dual<T, N> a, double b) { return a *= (1.0 / b); }
template <class T, int N>
Dual<T, N> operator/(double b, const Dual<T, N> &a) {
  const T inv = T(1.0) / a.v;
  const T val = b * inv;
  Dual<T, N> r(val, {});
  for (int i = 0; i < N; ++i) r.d[i] = -val * inv * a.d[i];
  return r;
}

// ---- real part -------------------------------------------------------------

inline double value_of(double x) { return x; }
inline double value_of(const std::complex<double> &x) { return x.real(); }
template <class T, int N>
double value_of(const Dual<T, N> &x) { return value_of(x.v); }

/// f(x) for a dual argument, given f and f' evaluated at the value.
template <class T, int N>
Dual<T, N> chain(const Dual<T, N> &x, const T &f, const T &df) {
  Dual<T, N> r(f, {});
  for (int i = 0; i < N; ++i) r.d[i] = df * x.d[i];
  return r;
}

// ---- elementary functions: double and complex ------------------------------

inline double log(double x) { return std::log(x); }
inline double exp(double x) { return std::exp(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double abs(double x) { return std::abs(x); }

using Complex = std::complex<double>;
inline Complex log(const Complex &x) { return std::log(x); }
inline Complex exp(const Complex &x) { return std::exp(x); }
inline Complex sqrt(const Complex &x) { return std::sqrt(x); }
inline Complex log1p(const Complex &x) {
  return {std::log1p(x.real()), x.imag() / (1.0 + x.real())};
}
/// Analytic continuation of |x| from the real axis.
inline Complex abs(const Complex &x) { return x.real() < 0.0 ? -x : x; }

// ---- elementary functions: duals -------------------------------------------

template <class T, int N>
Dual<T, N> log(const Dual<T, N> &x) { return chain(x, ad::log(x.v), T(1.0) / x.v); }

template <class T, int N>
Dual<T, N> exp(const Dual<T, N> &x) {
  const T e = ad::exp(x.v);
  return chain(x, e, e);
}

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N> &x) {
  const T s = ad::sqrt(x.v);
  return chain(x, s, 0.5 / s);
}

template <class T, int N>
Dual<T, N> log1p(const Dual<T, N> &x) {
  return chain(x, ad::log1p(x.v), T(1.0) / (1.0 + x.v));
}

/// Non-smooth at 0; takes the derivative from the right there.
template <class T, int N>
Dual<T, N> abs(const Dual<T, N> &x) { return value_of(x) < 0.0 ? -x : x; }

// ---- composites ------------------------------------------------------------

template <class T>
T square(const T &x) { return x * x; }

/// log(1 + e^z) without overflow.
template <class T>
T softplus(const T &z) {
  if (value_of(z) > 0.0) return z + ad::log1p(ad::exp(-z));
  return ad::log1p(ad::exp(z));
}

}  // namespace llrcal::ad

#endif  // LLRCAL_DUAL_HPP_
