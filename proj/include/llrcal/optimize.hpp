// include/llrcal/optimize.hpp

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

#ifndef LLRCAL_OPTIMIZE_HPP_
#define LLRCAL_OPTIMIZE_HPP_

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "llrcal/dual.hpp"
#include "llrcal/error.hpp"

namespace llrcal {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
   A smooth function of a small parameter vector, to be minimised.

   Implementations guarantee that gradient() agrees with finite differences
   of value() and that hvp(x, .) is linear and symmetric.  An objective that
   is a sum over data may additionally compute Hessian-vector products on a
   random subset of its subsample-able terms (see subsampled_hvp).
*/
class Objective {
 public:
  virtual ~Objective() = default;

  virtual int dimension() const = 0;
  virtual double value(const Vector &x) const = 0;
  /// Returns f(x) and writes the gradient into `grad` (resized).
  virtual double value_and_gradient(const Vector &x, Vector &grad) const = 0;
  virtual Vector hvp(const Vector &x, const Vector &v) const = 0;

  virtual bool supports_subsampling() const { return false; }

  /**
     Hessian-vector product in which each subsample-able datum is kept with
     probability rho (decided by a hash of seed and its index) and its
     contribution rescaled by 1/rho.  rho == 1 must return exactly hvp(x, v).
  */
  virtual Vector subsampled_hvp(const Vector &x, const Vector &v, double rho,
                                std::uint64_t seed) const {
    (void)rho;
    (void)seed;
    return hvp(x, v);
  }

  Vector gradient(const Vector &x) const {
    Vector g;
    value_and_gradient(x, g);
    return g;
  }
};

enum class OptimStatus {
  converged,
  max_iter,
  escaped_saddle_then_converged,
  escaped_saddle_then_max_iter,
  line_search_failure,
  saddle_escape_failed,
};

std::string_view to_string(OptimStatus s);

struct OptimResult {
  Vector x;
  double f = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  OptimStatus status = OptimStatus::max_iter;
  /// Smallest eigenvalue of the full Hessian at x, when one was built.
  std::optional<double> min_hessian_eigenvalue;
  int saddle_escapes = 0;
  /// Unit directions taken by each saddle escape, in order.
  std::vector<Vector> escape_directions;
  /// Objective value of every accepted iterate, starting with x0.
  std::vector<double> trace;

  bool ok() const {
    return status == OptimStatus::converged ||
           status == OptimStatus::escaped_saddle_then_converged;
  }
};

struct BfgsConfig {
  /// Stop when ||grad|| <= gradient_tolerance * (|f| + 1).
  double gradient_tolerance = 1e-8;
  int max_iterations = 500;
  double c1 = 1e-4;
  double c2 = 0.9;
  /// Bracket expansions and zoom bisections each allowed per line search.
  int max_line_search_steps = 50;

  void validate() const;
};

struct TrustRegionConfig {
  double gradient_tolerance = 1e-8;
  int max_iterations = 500;
  double initial_radius = 1.0;
  double max_radius = 1e10;
  /// Accept a step when actual/predicted reduction exceeds eta.
  double eta = 1e-4;
  /// Fraction of subsample-able data used for the per-iteration Hessian.
  double hessian_subsample = 1.0;
  std::uint64_t seed = 0;
  /// Escape a first-order point when lambda_min(H) is below this.
  double curvature_threshold = -1e-8;

  void validate() const;
};

OptimResult bfgs_minimize(const Objective &obj, const Vector &x0, const BfgsConfig &cfg = {});

OptimResult trust_region_newton(const Objective &obj, const Vector &x0,
                                const TrustRegionConfig &cfg = {});

/// Symmetric Hessian from dimension() Hessian-vector products against unit
/// vectors, symmetrised as (H + H^T) / 2.  rho < 1 uses subsampled_hvp with
/// the same seed for every column.
Matrix build_hessian(const Objective &obj, const Vector &x, double rho = 1.0,
                     std::uint64_t seed = 0);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns
};

/// Eigen-decomposition of a small symmetric matrix; throws InvalidArgument
/// if the input is asymmetric beyond 1e-10 (relative to its largest entry).
SymmetricEigen eig_sym(const Matrix &a);

/// Minimiser of g.p + p.H.p/2 subject to ||p|| <= radius, solved exactly
/// in the eigenbasis of H (More-Sorensen boundary solution with the hard
/// case handled).
Vector solve_trust_region_subproblem(const Matrix &h, const Vector &g, double radius);

class EscapeError : public Error {
 public:
  enum class Kind { not_a_saddle, no_decrease_found };
  EscapeError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SaddleEscape {
  Vector x;
  Vector direction;  // signed unit eigenvector actually taken
  double step = 0.0;
  double f = 0.0;
};

/**
   Moves from a stationary point along the eigenvector of the most negative
   Hessian eigenvalue.  Tries t = 1, 1/2, 1/4, ... (40 halvings) in both
   signs and returns the first t at which f decreases, taking the better
   sign when both do.

   Throws EscapeError::not_a_saddle if `hessian` is positive definite, and
   EscapeError::no_decrease_found if lambda_min lies in
   [curvature_threshold, 0] (numerically flat) or no trial step decreased f.
*/
SaddleEscape escape_saddle(const Objective &obj, const Vector &x, const Matrix &hessian,
                           double curvature_threshold = -1e-8);

// ---- Hessian-vector products from a generic-scalar gradient ----------------

/**
   H(x) v as the forward-mode directional derivative of the gradient.
   `grad` is a generic callable mapping std::vector<T> to std::vector<T>
   for any scalar T of dual.hpp; it is called once with
   T = Dual<double, 1> seeded along v.
*/
template <class GradFn>
Vector hvp_forward(const GradFn &grad, const Vector &x, const Vector &v) {
  using D1 = ad::Dual<double, 1>;
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<D1> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = D1(x[i], {v[i]});
  const std::vector<D1> g = grad(xs);
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = g[i].d[0];
  return out;
}

/// Complex-step variant: Im(grad(x + i h v)) / h.  No subtractive
/// cancellation, so h = 1e-150 is admissible.
template <class GradFn>
Vector hvp_complex_step(const GradFn &grad, const Vector &x, const Vector &v, double h = 1e-150) {
  using C = std::complex<double>;
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<C> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = C(x[i], h * v[i]);
  const std::vector<C> g = grad(xs);
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = g[i].imag() / h;
  return out;
}

}  // namespace llrcal

#endif  // LLRCAL_OPTIMIZE_HPP_
