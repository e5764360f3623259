// include/llrcal/calibrators.hpp

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

#ifndef LLRCAL_CALIBRATORS_HPP_
#define LLRCAL_CALIBRATORS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llrcal/distributions.hpp"
#include "llrcal/objectives.hpp"
#include "llrcal/optimize.hpp"
#include "llrcal/scores.hpp"

namespace llrcal {

// ---- models -------------------------------------------------------------------

/// Gaussians with a shared variance; the LLR is linear in the score.
struct GaussianSharedModel {
  double mu_target = 0.0;
  double mu_nontarget = 0.0;
  double v = 1.0;
};

struct GaussianSeparateModel {
  GaussianParams target;
  GaussianParams nontarget;
};

struct StudentTModel {
  StudentTParams target;
  StudentTParams nontarget;
};

struct NigModel {
  NigParams target;
  NigParams nontarget;
};

/// llr = a * s + b
struct LogRegModel {
  double a = 1.0;
  double b = 0.0;
};

/**
   Monotone piecewise-linear map.  knot_scores is strictly increasing and
   knot_llrs non-decreasing.  Each PAV block contributes a knot at its
   lowest and highest score (one knot if they coincide), so the map is
   constant across a block, linear across the gap to the next block, and
   clamped outside [knot_scores.front(), knot_scores.back()].
*/
struct PavModel {
  std::vector<double> knot_scores;
  std::vector<double> knot_llrs;
};

using CalibratorModel = std::variant<GaussianSharedModel, GaussianSeparateModel, StudentTModel,
                                     NigModel, LogRegModel, PavModel>;

/// "gauss-shared", "gauss-sep", "t", "nig", "logreg" or "pav".
std::string_view model_type(const CalibratorModel &model);

/// A model plus the optimizer runs that produced it (target class first
/// for the generative fits) and any non-fatal warnings.
template <class M>
struct Fitted {
  M model;
  std::vector<OptimResult> runs;
  std::vector<std::string> warnings;
};

// ---- single-class ML fits -------------------------------------------------------

/// Mean and ML variance (denominator n).  Throws FitError on zero variance.
GaussianParams fit_gaussian_ml(std::span<const double> data);

template <class P>
struct ClassFit {
  P params;
  OptimResult run;
};

/// Student-T ML by BFGS from (mean, sqrt(ML variance), nu = 4).
ClassFit<StudentTParams> fit_student_t_ml(std::span<const double> data,
                                          const BfgsConfig &cfg = {});

/**
   NIG ML by trust-region Newton from mu = median, delta = IQR / 2,
   beta = 0, alpha = 1 / delta.  `subsample_hessian` lets the optimizer
   thin this class for its Hessians (cfg.hessian_subsample).
*/
ClassFit<NigParams> fit_nig_class_ml(std::span<const double> data, const TrustRegionConfig &cfg,
                                     bool subsample_hessian);

/**
   Mean negative log-likelihood of one class over the unconstrained
   coordinates of Family (see distributions.hpp for the maps).
*/
template <class Family>
auto make_class_nll(std::span<const double> data, bool subsample = false) {
  constexpr int D = Family::kDim;
  auto loss = []<class T>(const std::array<T, D> &u, std::size_t) {
    return [logpdf = Family::density(Family::constrain(u))](double s) -> T { return -logpdf(s); };
  };
  const double w = 1.0 / static_cast<double>(data.size());
  return make_sum_objective<D>(loss, {SumTerm{data, w, subsample}});
}

// ---- the six calibrators ---------------------------------------------------------

/**
   Weighted-ML shared-variance fit: class means, v = alpha v1 + (1 - alpha) v2
   with v_i the class ML variances.  alpha in (0, 1).
*/
GaussianSharedModel fit_gaussian_shared(const LabeledScores &scores, double alpha);

/// Plain-ML shared-variance fit: v is the pooled within-class ML variance.
GaussianSharedModel fit_gaussian_shared(const LabeledScores &scores);

/// Separate class means and ML variances.  Needs at least two scores per class.
GaussianSeparateModel fit_gaussian_separate(const LabeledScores &scores);

Fitted<StudentTModel> fit_t_ml(const LabeledScores &scores, const BfgsConfig &cfg = {});

/// Non-targets only are subsampled for Hessians when cfg.hessian_subsample < 1.
/// The target fit uses seed cfg.seed, the non-target fit cfg.seed + 1.
Fitted<NigModel> fit_nig_ml(const LabeledScores &scores, const TrustRegionConfig &cfg = {});

/**
   Prior-weighted logistic regression, llr = a s + b, minimising
     alpha/T     sum_tgt log(1 + exp(-(llr + tau)))
   + (1-alpha)/N sum_non log(1 + exp(llr + tau)),   tau = logit(alpha).
   Linearly separable data gets a warning; the slope is left to grow until
   the optimizer stops.  The optimizer sees the objective divided by its
   value at (0, 0), the binary entropy of alpha, and runs[0].f is on that
   scale.
*/
Fitted<LogRegModel> fit_logreg(const LabeledScores &scores, double alpha,
                               const BfgsConfig &cfg = {});

/// Value of the logistic-regression objective above at (a, b).
double logreg_objective(const LabeledScores &scores, double alpha, double a, double b);

/// One PAV block: a run of sorted scores with pooled label counts.
struct PavBlock {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t targets = 0;
  std::int64_t nontargets = 0;

  double posterior() const {
    return static_cast<double>(targets) / static_cast<double>(targets + nontargets);
  }
};

/**
   Pool-adjacent-violators over the pooled, sorted scores (target = 1).
   Equal scores are merged before pooling, and adjacent blocks are pooled
   while the left posterior is >= the right one, so block posteriors come
   out strictly increasing.
*/
std::vector<PavBlock> pav_blocks(const LabeledScores &scores);

struct PavOptions {
  /// Half-count added to both labels of an end block whose posterior is
  /// 0 or 1.  0 keeps those LLRs infinite.
  double smoothing = 0.5;
};

/**
   PAV calibrator.  Block LLR = log(targets / nontargets) - log(T / N).
   An end block with posterior 0 or 1 is smoothed as
   (t + eps) / (t + n + 2 eps); if that would reach its neighbour's
   posterior, half the distance to the boundary is used instead.
*/
PavModel fit_pav(const LabeledScores &scores, const PavOptions &opts = {});

// ---- application -------------------------------------------------------------------

// Call qualified: CalibratorModel is a std::variant, so an unqualified
// apply(model, x) also finds std::apply by ADL.

double apply(const CalibratorModel &model, double s);
std::vector<double> apply(const CalibratorModel &model, std::span<const double> scores);
LabeledScores apply(const CalibratorModel &model, const LabeledScores &scores);

}  // namespace llrcal

#endif  // LLRCAL_CALIBRATORS_HPP_
