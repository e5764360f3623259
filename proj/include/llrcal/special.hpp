// include/llrcal/special.hpp

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

#ifndef LLRCAL_SPECIAL_HPP_
#define LLRCAL_SPECIAL_HPP_

#include "llrcal/dual.hpp"

namespace llrcal {

/// Exponentially scaled modified Bessel functions of the second kind,
/// e^x K0(x) and e^x K1(x).
struct BesselK01 {
  double k0;
  double k1;
};

/**
   Scaled K0 and K1 together.  Power series for x <= 2, Steed's continued
   fraction (CF2) for x > 2.  Throws InvalidArgument for x <= 0 or NaN.
*/
BesselK01 bessel_k01_scaled(double x);

/// e^x K1(x).
double bessel_k1_scaled(double x);

/// K1(x) = e^{-x} * bessel_k1_scaled(x).  Underflows to 0 beyond x ~ 705.
double bessel_k1(double x);

/**
   n-th derivative of lgamma(z + 1/2) - lgamma(z), n = 0..4.  The n = 0 term
   goes through Boost's tgamma_delta_ratio so it stays accurate when z is
   huge (Student-T with nu -> infinity).
*/
double log_gamma_half_ratio_derivative(int n, double z);

namespace ad {

// Generic-scalar wrappers.  The derivative of the scaled pair is closed:
//   d/dx e^x K0 = e^x K0 - e^x K1
//   d/dx e^x K1 = e^x K1 - e^x K0 - e^x K1 / x
// so a Dual of any depth needs only the double primitive at the base.

template <class T>
struct K01 {
  T k0;
  T k1;
};

inline K01<double> bessel_k01_scaled(double x) {
  const auto r = llrcal::bessel_k01_scaled(x);
  return {r.k0, r.k1};
}

inline K01<Complex> bessel_k01_scaled(const Complex &x) {
  const double a = x.real();
  const auto r = llrcal::bessel_k01_scaled(a);
  const double dk0 = r.k0 - r.k1;
  const double dk1 = r.k1 - r.k0 - r.k1 / a;
  return {Complex(r.k0, dk0 * x.imag()), Complex(r.k1, dk1 * x.imag())};
}

template <class T, int N>
K01<Dual<T, N>> bessel_k01_scaled(const Dual<T, N> &x) {
  const K01<T> r = ad::bessel_k01_scaled(x.v);
  const T dk0 = r.k0 - r.k1;
  const T dk1 = r.k1 - r.k0 - r.k1 / x.v;
  return {chain(x, r.k0, dk0), chain(x, r.k1, dk1)};
}

/// log(e^x K1(x)).
template <class T>
T log_bessel_k1_scaled(const T &x) {
  return ad::log(ad::bessel_k01_scaled(x).k1);
}

// lgamma(z + 1/2) - lgamma(z) and its derivatives.  `order` is the
// derivative order carried by the current nesting level.

inline double log_gamma_half_ratio(double z, int order = 0) {
  return log_gamma_half_ratio_derivative(order, z);
}

inline Complex log_gamma_half_ratio(const Complex &z, int order = 0) {
  return {log_gamma_half_ratio_derivative(order, z.real()),
          log_gamma_half_ratio_derivative(order + 1, z.real()) * z.imag()};
}

template <class T, int N>
Dual<T, N> log_gamma_half_ratio(const Dual<T, N> &z, int order = 0) {
  return chain(z, ad::log_gamma_half_ratio(z.v, order),
               ad::log_gamma_half_ratio(z.v, order + 1));
}

}  // namespace ad
}  // namespace llrcal

#endif  // LLRCAL_SPECIAL_HPP_
