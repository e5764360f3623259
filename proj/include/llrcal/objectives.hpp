// include/llrcal/objectives.hpp

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

#ifndef LLRCAL_OBJECTIVES_HPP_
#define LLRCAL_OBJECTIVES_HPP_

// Objective implementations whose derivatives all come from one generic
// value function: gradients by a D-tangent Dual pass, Hessian-vector
// products by hvp_forward over that gradient.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "llrcal/dual.hpp"
#include "llrcal/optimize.hpp"
#include "llrcal/rng.hpp"
#include "llrcal/summation.hpp"

namespace llrcal {

/// Value and gradient of f at x, for any scalar T, by one Dual<T, D> pass.
template <int D, class T, class ValueFn>
std::pair<T, std::array<T, D>> generic_value_gradient(const ValueFn &f,
                                                      const std::array<T, D> &x) {
  using J = ad::Dual<T, D>;
  std::array<J, D> xj;
  for (int i = 0; i < D; ++i) xj[i] = J::variable(x[i], i);
  const J r = f(xj);
  return {r.v, r.d};
}

namespace detail {

template <int D, class T>
std::array<T, D> to_array(const std::vector<T> &v) {
  std::array<T, D> a;
  for (int i = 0; i < D; ++i) a[i] = v[i];
  return a;
}

template <int D>
std::array<double, D> to_array(const Vector &v) {
  std::array<double, D> a;
  for (int i = 0; i < D; ++i) a[i] = v[i];
  return a;
}

}  // namespace detail

/**
   Objective from a generic value function
     f(const std::array<T, D>&) -> T
   valid for every scalar of dual.hpp.  Used for test problems and for
   small closed-form criteria.
*/
template <int D, class ValueFn>
class GenericObjective final : public Objective {
 public:
  explicit GenericObjective(ValueFn f) : f_(std::move(f)) {}

  int dimension() const override { return D; }

  double value(const Vector &x) const override { return f_(detail::to_array<D>(x)); }

  double value_and_gradient(const Vector &x, Vector &grad) const override {
    const auto [fx, g] = generic_value_gradient<D, double>(f_, detail::to_array<D>(x));
    grad.resize(D);
    for (int i = 0; i < D; ++i) grad[i] = g[i];
    return fx;
  }

  /// Gradient as a generic function of std::vector<T>, for hvp_forward.
  auto gradient_fn() const {
    return [this](const auto &xs) {
      using T = std::decay_t<decltype(xs[0])>;
      const auto [fx, g] = generic_value_gradient<D, T>(f_, detail::to_array<D>(xs));
      (void)fx;
      return std::vector<T>(g.begin(), g.end());
    };
  }

  Vector hvp(const Vector &x, const Vector &v) const override {
    return hvp_forward(gradient_fn(), x, v);
  }

 private:
  ValueFn f_;
};

template <int D, class ValueFn>
GenericObjective<D, ValueFn> make_objective(ValueFn f) {
  return GenericObjective<D, ValueFn>(std::move(f));
}

/// One data population inside a SumObjective.
struct SumTerm {
  std::span<const double> data;
  double weight = 1.0;
  /// Whether subsampled_hvp may thin this term.
  bool subsample = false;
};

/**
   f(x) = sum_k weight_k * sum_{s in data_k} loss(x, k)(s).  The loss is
   generic over the scalar: called as loss(const std::array<T, D>&, k) once
   per term and evaluation, it returns a callable double -> T applied to
   every datum of term k.  Sums use blocked_sum, so results are identical
   for any thread count.
*/
template <int D, class Loss>
class SumObjective final : public Objective {
 public:
  SumObjective(Loss loss, std::vector<SumTerm> terms)
      : loss_(std::move(loss)), terms_(std::move(terms)) {}

  int dimension() const override { return D; }

  template <class T>
  T total(const std::array<T, D> &x, double rho = 1.0, std::uint64_t seed = 0) const {
    T sum(0.0);
    const bool thin = rho < 1.0;
    // Keep index i iff hash(seed, i) < rho * 2^64.
    const std::uint64_t cut = thin ? static_cast<std::uint64_t>(std::ldexp(rho, 64)) : ~0ULL;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const SumTerm &term = terms_[k];
      const bool sampled = thin && term.subsample;
      const auto per_datum = loss_(x, k);
      const T part = blocked_sum<T>(
          term.data.size(),
          [&](std::size_t i) -> T {
            if (sampled && mix64(seed, i) >= cut) return T(0.0);
            return per_datum(term.data[i]);
          },
          T(0.0));
      sum += part * (sampled ? term.weight / rho : term.weight);
    }
    return sum;
  }

  double value(const Vector &x) const override { return total(detail::to_array<D>(x)); }

  double value_and_gradient(const Vector &x, Vector &grad) const override {
    const auto f = [this](const auto &xs) { return total(xs); };
    const auto [fx, g] = generic_value_gradient<D, double>(f, detail::to_array<D>(x));
    grad.resize(D);
    for (int i = 0; i < D; ++i) grad[i] = g[i];
    return fx;
  }

  /// Gradient as a generic function of std::vector<T>, optionally thinned.
  auto gradient_fn(double rho = 1.0, std::uint64_t seed = 0) const {
    return [this, rho, seed](const auto &xs) {
      using T = std::decay_t<decltype(xs[0])>;
      const auto f = [this, rho, seed](const auto &a) { return total(a, rho, seed); };
      const auto [fx, g] = generic_value_gradient<D, T>(f, detail::to_array<D>(xs));
      (void)fx;
      return std::vector<T>(g.begin(), g.end());
    };
  }

  Vector hvp(const Vector &x, const Vector &v) const override {
    return hvp_forward(gradient_fn(), x, v);
  }

  bool supports_subsampling() const override {
    for (const auto &t : terms_)
      if (t.subsample) return true;
    return false;
  }

  Vector subsampled_hvp(const Vector &x, const Vector &v, double rho,
                        std::uint64_t seed) const override {
    if (rho >= 1.0) return hvp(x, v);
    return hvp_forward(gradient_fn(rho, seed), x, v);
  }

  const std::vector<SumTerm> &terms() const { return terms_; }

 private:
  Loss loss_;
  std::vector<SumTerm> terms_;
};

template <int D, class Loss>
SumObjective<D, Loss> make_sum_objective(Loss loss, std::vector<SumTerm> terms) {
  return SumObjective<D, Loss>(std::move(loss), std::move(terms));
}

}  // namespace llrcal

#endif  // LLRCAL_OBJECTIVES_HPP_
