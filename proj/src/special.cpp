// src/special.cpp

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

#include "llrcal/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "llrcal/error.hpp"

namespace llrcal {
namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Unscaled K0, K1 from their ascending series; x in (0, 2].
BesselK01 series_k01(double x) {
  const double y = 0.25 * x * x;
  const double lx = std::log(0.5 * x);

  // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} y^k / (k!)^2 H_k
  double term = 1.0, i0 = 1.0, tail0 = 0.0, harmonic = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= y / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail0 += term * harmonic;
    if (term < 1e-18 * i0) break;
  }
  const double k0 = -(lx + kEulerGamma) * i0 + tail0;

  // K1 = 1/x + I1 ln(x/2) - (x/4) sum_{k>=0} (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
  term = 1.0;
  double i1 = 1.0;
  double psi1 = -kEulerGamma, psi2 = 1.0 - kEulerGamma;
  double tail1 = psi1 + psi2;
  for (int k = 1; k < 60; ++k) {
    term *= y / (static_cast<double>(k) * (k + 1));
    psi1 += 1.0 / k;
    psi2 += 1.0 / (k + 1);
    i1 += term;
    tail1 += (psi1 + psi2) * term;
    if (term < 1e-18 * i1) break;
  }
  i1 *= 0.5 * x;
  const double k1 = 1.0 / x + i1 * lx - 0.25 * x * tail1;
  return {k0, k1};
}

// Scaled K0, K1 from Steed's method on the CF2 continued fraction (Temme's
// formulation for order 0); x > 2.
BesselK01 cf2_k01_scaled(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-16) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

}  // namespace

BesselK01 bessel_k01_scaled(double x) {
  if (!(x > 0.0))
    throw InvalidArgument("bessel K: argument must be positive, got " + std::to_string(x));
  if (std::isinf(x)) return {0.0, 0.0};
  if (x <= 2.0) {
    const BesselK01 r = series_k01(x);
    const double ex = std::exp(x);
    return {r.k0 * ex, r.k1 * ex};
  }
  return cf2_k01_scaled(x);
}

double bessel_k1_scaled(double x) { return bessel_k01_scaled(x).k1; }

double bessel_k1(double x) {
  if (x <= 2.0 && x > 0.0) return series_k01(x).k1;
  return std::exp(-x) * bessel_k01_scaled(x).k1;
}

namespace {

// lgamma(z + 1/2) - lgamma(z) ~ log(z) / 2 + sum_{k odd} c_k z^-k with
// c_k = (2^-k - 2) B_{k+1} / (k (k + 1)).  The polygamma differences cancel
// badly for large z, so derivatives there come from this series.
double half_ratio_asymptotic(int n, double z) {
  static constexpr double kBernoulli[] = {1.0 / 6.0,     -1.0 / 30.0, 1.0 / 42.0,
                                          -1.0 / 30.0,   5.0 / 66.0,  -691.0 / 2730.0,
                                          7.0 / 6.0,     -3617.0 / 510.0};  // B2..B16
  double fact = 1.0;  // (n-1)!
  for (int i = 2; i < n; ++i) fact *= i;
  double sum = ((n - 1) % 2 == 0 ? 0.5 : -0.5) * fact / std::pow(z, n);
  for (int j = 0; j < 8; ++j) {
    const int k = 2 * j + 1;
    const double c = (std::ldexp(1.0, -k) - 2.0) * kBernoulli[j] / (k * (k + 1.0));
    double rising = 1.0;  // k (k+1) ... (k+n-1)
    for (int i = 0; i < n; ++i) rising *= k + i;
    sum += (n % 2 == 0 ? 1.0 : -1.0) * c * rising / std::pow(z, k + n);
  }
  return sum;
}

}  // namespace

double log_gamma_half_ratio_derivative(int n, double z) {
  if (!(z > 0.0)) throw InvalidArgument("log-gamma ratio: argument must be positive");
  if (n == 0) return -std::log(boost::math::tgamma_delta_ratio(z, 0.5));
  if (n < 0 || n > 4) throw InvalidArgument("log-gamma ratio: derivative order out of range");
  if (z >= 10.0) return half_ratio_asymptotic(n, z);
  if (n == 1) return boost::math::digamma(z + 0.5) - boost::math::digamma(z);
  return boost::math::polygamma(n - 1, z + 0.5) - boost::math::polygamma(n - 1, z);
}

}  // namespace llrcal
