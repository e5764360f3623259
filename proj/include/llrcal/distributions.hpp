// include/llrcal/distributions.hpp

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

#ifndef LLRCAL_DISTRIBUTIONS_HPP_
#define LLRCAL_DISTRIBUTIONS_HPP_

// Log-densities of the three generative score families, written once over a
// generic scalar (see dual.hpp), and the squaring reparametrisations that
// map each family onto an unconstrained coordinate vector.
//
// Coordinate maps (UnconstrainedVector layouts):
//   Gaussian   (mu, r)            v = r^2
//   Student-T  (mu, r_s, r_n)     sigma = r_s^2, nu = r_n^2
//   NIG        (mu, r_d, beta, w) delta = r_d^2, alpha = |beta| + w^2

#include <array>
#include <numbers>
#include <string>

#include "llrcal/dual.hpp"
#include "llrcal/special.hpp"

namespace llrcal {

template <class T = double>
struct BasicGaussianParams {
  T mu{};
  T v{};
};

template <class T = double>
struct BasicStudentTParams {
  T mu{};
  T sigma{};
  T nu{};
};

template <class T = double>
struct BasicNigParams {
  T mu{};
  T delta{};
  T alpha{};
  T beta{};
};

using GaussianParams = BasicGaussianParams<double>;
using StudentTParams = BasicStudentTParams<double>;
using NigParams = BasicNigParams<double>;

// Constraint checks; throw InvalidArgument naming the offending field.
void validate(const GaussianParams &p);
void validate(const StudentTParams &p);
void validate(const NigParams &p);

// ---- generic log-densities (no validation) ---------------------------------

// Each density is split into a parameter-only part, computed once, and a
// per-score part; the *_density factories return the latter as a callable.

template <class T>
auto gauss_density(const BasicGaussianParams<T> &p) {
  const T c = -0.5 * ad::log(2.0 * std::numbers::pi * p.v);
  const T inv2v = 1.0 / (2.0 * p.v);
  return [c, inv2v, mu = p.mu](double s) -> T {
    const T r = s - mu;
    return c - r * r * inv2v;
  };
}

template <class T>
auto t_density(const BasicStudentTParams<T> &p) {
  const T half_nu = 0.5 * p.nu;
  const T c = ad::log_gamma_half_ratio(half_nu) - 0.5 * ad::log(std::numbers::pi * p.nu) -
              ad::log(p.sigma);
  const T expo = half_nu + 0.5;
  const T inv_scale2 = 1.0 / (p.nu * p.sigma * p.sigma);
  return [c, expo, inv_scale2, mu = p.mu](double s) -> T {
    const T r = s - mu;
    return c - expo * ad::log1p(r * r * inv_scale2);
  };
}

/**
   log f(s) with f(s) = (alpha delta / pi) K1(alpha q) / q
                        * exp(delta gamma + beta (s - mu)),
   q = sqrt(delta^2 + (s - mu)^2), gamma = sqrt(alpha^2 - beta^2).
   K1 enters through its scaled form so the large exponents cancel in log
   space: log K1(alpha q) = log(e^{alpha q} K1(alpha q)) - alpha q.
*/
template <class T>
auto nig_density(const BasicNigParams<T> &p) {
  const T gamma = ad::sqrt((p.alpha - p.beta) * (p.alpha + p.beta));
  const T c = ad::log(p.alpha * p.delta) - std::log(std::numbers::pi) + p.delta * gamma;
  return [c, mu = p.mu, d2 = p.delta * p.delta, alpha = p.alpha, beta = p.beta](double s) -> T {
    const T r = s - mu;
    const T q = ad::sqrt(d2 + r * r);
    const T x = alpha * q;
    return c - ad::log(q) + ad::log_bessel_k1_scaled(x) - x + beta * r;
  };
}

template <class T>
T gauss_logpdf(double s, const BasicGaussianParams<T> &p) { return gauss_density(p)(s); }

template <class T>
T t_logpdf(double s, const BasicStudentTParams<T> &p) { return t_density(p)(s); }

template <class T>
T nig_logpdf(double s, const BasicNigParams<T> &p) { return nig_density(p)(s); }

double gauss_logpdf(double s, const GaussianParams &p);
double t_logpdf(double s, const StudentTParams &p);
double nig_logpdf(double s, const NigParams &p);

/// Mean of NIG(mu, delta, alpha, beta): mu + delta beta / gamma.
double nig_mean(const NigParams &p);

// ---- reparametrisation -----------------------------------------------------

std::array<double, 2> unconstrain(const GaussianParams &p);
std::array<double, 3> unconstrain(const StudentTParams &p);
std::array<double, 4> unconstrain(const NigParams &p);

template <class T>
BasicGaussianParams<T> constrain_gaussian(const std::array<T, 2> &u) {
  return {u[0], u[1] * u[1]};
}

template <class T>
BasicStudentTParams<T> constrain_student_t(const std::array<T, 3> &u) {
  return {u[0], u[1] * u[1], u[2] * u[2]};
}

/// Generic form; no boundary check (callers validate the double result).
template <class T>
BasicNigParams<T> constrain_nig(const std::array<T, 4> &u) {
  return {u[0], u[1] * u[1], ad::abs(u[2]) + u[3] * u[3], u[2]};
}

/// Double forms; constrain(nig) rejects w == 0, which maps onto the
/// alpha == |beta| boundary.
GaussianParams constrain(const std::array<double, 2> &u);
StudentTParams constrain(const std::array<double, 3> &u);
NigParams constrain(const std::array<double, 4> &u);

// ---- family traits used by the generic fitters -----------------------------

struct GaussianFamily {
  static constexpr int kDim = 2;
  static constexpr const char *kName = "gaussian";
  template <class T>
  using Params = BasicGaussianParams<T>;
  template <class T>
  static Params<T> constrain(const std::array<T, kDim> &u) { return constrain_gaussian(u); }
  template <class T>
  static T logpdf(double s, const Params<T> &p) { return gauss_logpdf<T>(s, p); }
  template <class T>
  static auto density(const Params<T> &p) { return gauss_density(p); }
};

struct StudentTFamily {
  static constexpr int kDim = 3;
  static constexpr const char *kName = "student-t";
  template <class T>
  using Params = BasicStudentTParams<T>;
  template <class T>
  static Params<T> constrain(const std::array<T, kDim> &u) { return constrain_student_t(u); }
  template <class T>
  static T logpdf(double s, const Params<T> &p) { return t_logpdf<T>(s, p); }
  template <class T>
  static auto density(const Params<T> &p) { return t_density(p); }
};

struct NigFamily {
  static constexpr int kDim = 4;
  static constexpr const char *kName = "nig";
  template <class T>
  using Params = BasicNigParams<T>;
  template <class T>
  static Params<T> constrain(const std::array<T, kDim> &u) { return constrain_nig(u); }
  template <class T>
  static T logpdf(double s, const Params<T> &p) { return nig_logpdf<T>(s, p); }
  template <class T>
  static auto density(const Params<T> &p) { return nig_density(p); }
};

}  // namespace llrcal

#endif  // LLRCAL_DISTRIBUTIONS_HPP_
