// src/calibrators.cpp

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

#include "llrcal/calibrators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "llrcal/summation.hpp"

namespace llrcal {

std::string_view model_type(const CalibratorModel &model) {
  static constexpr std::string_view kNames[] = {"gauss-shared", "gauss-sep", "t",
                                                "nig",          "logreg",    "pav"};
  return kNames[model.index()];
}

namespace {

void require_class(std::span<const double> data, std::size_t min_count, const char *what) {
  if (data.size() < min_count)
    throw InvalidArgument(std::string(what) + ": needs at least " + std::to_string(min_count) +
                          " scores, got " + std::to_string(data.size()));
  for (double s : data)
    if (!std::isfinite(s)) throw InvalidArgument(std::string(what) + ": non-finite score");
}

void require_scores(const LabeledScores &scores, std::size_t min_count, const char *what) {
  require_class(scores.targets, min_count, (std::string(what) + " (targets)").c_str());
  require_class(scores.nontargets, min_count, (std::string(what) + " (non-targets)").c_str());
}

double mean_of(std::span<const double> data) {
  const double sum =
      blocked_sum<double>(data.size(), [&](std::size_t i) { return data[i]; }, 0.0);
  return sum / static_cast<double>(data.size());
}

double sum_sq_dev(std::span<const double> data, double m) {
  return blocked_sum<double>(
      data.size(), [&](std::size_t i) { return (data[i] - m) * (data[i] - m); }, 0.0);
}

// Type-7 quantile of a sorted sample.
double quantile(const std::vector<double> &sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_alpha(double alpha, const char *what) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument(std::string(what) + ": alpha must be in (0, 1)");
}

std::string status_warning(const char *what, const OptimResult &r) {
  return std::string(what) + ": optimizer stopped with status " + std::string(to_string(r.status)) +
         " (gradient norm " + std::to_string(r.gradient_norm) + ")";
}

}  // namespace

// ---- single-class fits -------------------------------------------------------------

GaussianParams fit_gaussian_ml(std::span<const double> data) {
  require_class(data, 1, "gaussian fit");
  const double m = mean_of(data);
  const double v = sum_sq_dev(data, m) / static_cast<double>(data.size());
  if (!(v > 0.0)) throw FitError("gaussian fit: zero variance");
  return {m, v};
}

ClassFit<StudentTParams> fit_student_t_ml(std::span<const double> data, const BfgsConfig &cfg) {
  require_class(data, 10, "student-t fit");
  const GaussianParams g = fit_gaussian_ml(data);
  const auto obj = make_class_nll<StudentTFamily>(data);
  const StudentTParams init{g.mu, std::sqrt(g.v), 4.0};
  const auto u0 = unconstrain(init);
  OptimResult run = bfgs_minimize(obj, Vector::Map(u0.data(), 3), cfg);
  const StudentTParams p = constrain(std::array<double, 3>{run.x[0], run.x[1], run.x[2]});
  if (!std::isfinite(p.mu) || !(p.sigma > 0.0) || !(p.nu > 0.0) || !std::isfinite(p.nu) ||
      !std::isfinite(run.f))
    throw FitError("student-t fit: optimizer left the valid parameter region");
  return {p, std::move(run)};
}

ClassFit<NigParams> fit_nig_class_ml(std::span<const double> data, const TrustRegionConfig &cfg,
                                     bool subsample_hessian) {
  require_class(data, 20, "nig fit");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = quantile(sorted, 0.5);
  const double delta0 = 0.5 * (quantile(sorted, 0.75) - quantile(sorted, 0.25));
  if (!(delta0 > 0.0)) throw FitError("nig fit: zero interquartile range");
  const NigParams init{median, delta0, 1.0 / delta0, 0.0};
  const auto u0 = unconstrain(init);

  const auto obj = make_class_nll<NigFamily>(data, subsample_hessian);
  OptimResult run = trust_region_newton(obj, Vector::Map(u0.data(), 4), cfg);
  if (run.x[3] == 0.0 || !run.x.allFinite() || !std::isfinite(run.f))
    throw FitError("nig fit: collapsed onto the alpha = |beta| boundary");
  const NigParams p = constrain(std::array<double, 4>{run.x[0], run.x[1], run.x[2], run.x[3]});
  if (!(p.delta > 0.0) || !(p.alpha > std::abs(p.beta)))
    throw FitError("nig fit: optimizer left the valid parameter region");
  return {p, std::move(run)};
}

// ---- Gaussian calibrators -----------------------------------------------------------

GaussianSharedModel fit_gaussian_shared(const LabeledScores &scores, double alpha) {
  check_alpha(alpha, "gauss-shared");
  require_scores(scores, 1, "gauss-shared");
  const double m1 = mean_of(scores.targets), m2 = mean_of(scores.nontargets);
  const double v1 = sum_sq_dev(scores.targets, m1) / static_cast<double>(scores.targets.size());
  const double v2 =
      sum_sq_dev(scores.nontargets, m2) / static_cast<double>(scores.nontargets.size());
  const double v = alpha * v1 + (1.0 - alpha) * v2;
  if (!(v > 0.0)) throw FitError("gauss-shared: zero pooled variance");
  return {m1, m2, v};
}

GaussianSharedModel fit_gaussian_shared(const LabeledScores &scores) {
  require_scores(scores, 1, "gauss-shared");
  const double m1 = mean_of(scores.targets), m2 = mean_of(scores.nontargets);
  const double n = static_cast<double>(scores.targets.size() + scores.nontargets.size());
  const double v = (sum_sq_dev(scores.targets, m1) + sum_sq_dev(scores.nontargets, m2)) / n;
  if (!(v > 0.0)) throw FitError("gauss-shared: zero pooled variance");
  return {m1, m2, v};
}

GaussianSeparateModel fit_gaussian_separate(const LabeledScores &scores) {
  require_scores(scores, 2, "gauss-sep");
  return {fit_gaussian_ml(scores.targets), fit_gaussian_ml(scores.nontargets)};
}

// ---- T and NIG --------------------------------------------------------------------

Fitted<StudentTModel> fit_t_ml(const LabeledScores &scores, const BfgsConfig &cfg) {
  require_scores(scores, 10, "t");
  auto tgt = fit_student_t_ml(scores.targets, cfg);
  auto non = fit_student_t_ml(scores.nontargets, cfg);
  Fitted<StudentTModel> out{{tgt.params, non.params}, {}, {}};
  if (!tgt.run.ok()) out.warnings.push_back(status_warning("t (targets)", tgt.run));
  if (!non.run.ok()) out.warnings.push_back(status_warning("t (non-targets)", non.run));
  out.runs.push_back(std::move(tgt.run));
  out.runs.push_back(std::move(non.run));
  return out;
}

Fitted<NigModel> fit_nig_ml(const LabeledScores &scores, const TrustRegionConfig &cfg) {
  require_scores(scores, 20, "nig");
  auto tgt = fit_nig_class_ml(scores.targets, cfg, false);
  TrustRegionConfig non_cfg = cfg;
  non_cfg.seed = cfg.seed + 1;
  auto non = fit_nig_class_ml(scores.nontargets, non_cfg, true);
  Fitted<NigModel> out{{tgt.params, non.params}, {}, {}};
  if (!tgt.run.ok()) out.warnings.push_back(status_warning("nig (targets)", tgt.run));
  if (!non.run.ok()) out.warnings.push_back(status_warning("nig (non-targets)", non.run));
  out.runs.push_back(std::move(tgt.run));
  out.runs.push_back(std::move(non.run));
  return out;
}

// ---- logistic regression ---------------------------------------------------------

namespace {

auto make_logreg_objective(const LabeledScores &scores, double alpha, double scale = 1.0) {
  const double tau = std::log(alpha / (1.0 - alpha));
  auto loss = [tau]<class T>(const std::array<T, 2> &x, std::size_t k) {
    // target terms penalise -llr, non-target terms +llr
    const double sign = k == 0 ? -1.0 : 1.0;
    return [a = x[0] * sign, b = (x[1] + tau) * sign](double s) -> T {
      return ad::softplus(a * s + b);
    };
  };
  return make_sum_objective<2>(
      loss, {SumTerm{scores.targets, scale * alpha / static_cast<double>(scores.targets.size()),
                     false},
             SumTerm{scores.nontargets,
                     scale * (1.0 - alpha) / static_cast<double>(scores.nontargets.size()),
                     false}});
}

}  // namespace

double logreg_objective(const LabeledScores &scores, double alpha, double a, double b) {
  check_alpha(alpha, "logreg");
  require_scores(scores, 1, "logreg");
  return make_logreg_objective(scores, alpha).value(Vector{{a, b}});
}

Fitted<LogRegModel> fit_logreg(const LabeledScores &scores, double alpha, const BfgsConfig &cfg) {
  check_alpha(alpha, "logreg");
  require_scores(scores, 1, "logreg");
  // The objective at (0, 0) is the binary entropy of alpha, which is tiny
  // for extreme alpha; dividing by it keeps the relative gradient test
  // meaningful.  run.f is reported on this scale.
  const double entropy = -alpha * std::log(alpha) - (1.0 - alpha) * std::log1p(-alpha);
  const auto obj = make_logreg_objective(scores, alpha, 1.0 / entropy);
  OptimResult run = bfgs_minimize(obj, Vector::Zero(2), cfg);
  if (!run.x.allFinite() || !std::isfinite(run.f))
    throw FitError("logreg: optimizer produced non-finite parameters");
  Fitted<LogRegModel> out{{run.x[0], run.x[1]}, {}, {}};
  const auto [tmin, tmax] = std::minmax_element(scores.targets.begin(), scores.targets.end());
  const auto [nmin, nmax] =
      std::minmax_element(scores.nontargets.begin(), scores.nontargets.end());
  if (*nmax < *tmin || *tmax < *nmin)
    out.warnings.push_back(
        "logreg: classes are linearly separable; the unregularised slope is unbounded and "
        "was stopped by the optimizer");
  if (!run.ok()) out.warnings.push_back(status_warning("logreg", run));
  out.runs.push_back(std::move(run));
  return out;
}

// ---- PAV --------------------------------------------------------------------------

std::vector<PavBlock> pav_blocks(const LabeledScores &scores) {
  require_scores(scores, 1, "pav");
  std::vector<std::pair<double, bool>> all;
  all.reserve(scores.targets.size() + scores.nontargets.size());
  for (double s : scores.targets) all.emplace_back(s, true);
  for (double s : scores.nontargets) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });

  // p_left >= p_right, compared exactly on integer counts.
  auto violates = [](const PavBlock &l, const PavBlock &r) {
    const __int128 lhs = static_cast<__int128>(l.targets) * (r.targets + r.nontargets);
    const __int128 rhs = static_cast<__int128>(r.targets) * (l.targets + l.nontargets);
    return lhs >= rhs;
  };

  std::vector<PavBlock> stack;
  std::size_t i = 0;
  while (i < all.size()) {
    PavBlock b{all[i].first, all[i].first, 0, 0};
    for (; i < all.size() && all[i].first == b.lo; ++i) (all[i].second ? b.targets : b.nontargets)++;
    while (!stack.empty() && violates(stack.back(), b)) {
      const PavBlock &l = stack.back();
      b = {l.lo, b.hi, l.targets + b.targets, l.nontargets + b.nontargets};
      stack.pop_back();
    }
    stack.push_back(b);
  }
  return stack;
}

PavModel fit_pav(const LabeledScores &scores, const PavOptions &opts) {
  if (!(opts.smoothing >= 0.0) || !std::isfinite(opts.smoothing))
    throw InvalidArgument("pav: smoothing must be finite and non-negative");
  const std::vector<PavBlock> blocks = pav_blocks(scores);
  const double prior_logodds = std::log(static_cast<double>(scores.targets.size())) -
                               std::log(static_cast<double>(scores.nontargets.size()));
  const std::size_t nb = blocks.size();

  std::vector<double> llr(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const double t = static_cast<double>(blocks[k].targets);
    const double n = static_cast<double>(blocks[k].nontargets);
    llr[k] = std::log(t) - std::log(n) - prior_logodds;
  }
  if (opts.smoothing > 0.0) {
    const double eps = opts.smoothing;
    auto smoothed = [&](const PavBlock &b) {
      return std::log(static_cast<double>(b.targets) + eps) -
             std::log(static_cast<double>(b.nontargets) + eps) - prior_logodds;
    };
    // Only the first block can have posterior 0 and only the last posterior 1.
    if (blocks.front().targets == 0) {
      llr.front() = smoothed(blocks.front());
      if (nb > 1 && !(llr.front() < llr[1])) {
        const double p = 0.5 * blocks[1].posterior();
        llr.front() = std::log(p) - std::log1p(-p) - prior_logodds;
      }
    }
    if (blocks.back().nontargets == 0) {
      llr.back() = smoothed(blocks.back());
      if (nb > 1 && !(llr.back() > llr[nb - 2])) {
        const double q = 0.5 * (1.0 - blocks[nb - 2].posterior());
        llr.back() = std::log1p(-q) - std::log(q) - prior_logodds;
      }
    }
  }

  PavModel model;
  for (std::size_t k = 0; k < nb; ++k) {
    model.knot_scores.push_back(blocks[k].lo);
    model.knot_llrs.push_back(llr[k]);
    if (blocks[k].hi > blocks[k].lo) {
      model.knot_scores.push_back(blocks[k].hi);
      model.knot_llrs.push_back(llr[k]);
    }
  }
  return model;
}

// ---- application ------------------------------------------------------------------

namespace {

double pav_apply(const PavModel &m, double s) {
  const auto &ks = m.knot_scores;
  const auto &ls = m.knot_llrs;
  if (ks.empty() || ks.size() != ls.size()) throw InvalidArgument("pav model: malformed knots");
  if (s <= ks.front()) return ls.front();
  if (s >= ks.back()) return ls.back();
  const auto it = std::upper_bound(ks.begin(), ks.end(), s);
  const std::size_t j = static_cast<std::size_t>(it - ks.begin());
  const std::size_t i = j - 1;
  if (ls[i] == ls[j]) return ls[i];
  if (!std::isfinite(ls[i]) || !std::isfinite(ls[j])) return ls[i];
  const double t = (s - ks[i]) / (ks[j] - ks[i]);
  return ls[i] + t * (ls[j] - ls[i]);
}

struct Applier {
  double s;
  double operator()(const GaussianSharedModel &m) const {
    return (m.mu_target - m.mu_nontarget) / m.v * s +
           (m.mu_nontarget * m.mu_nontarget - m.mu_target * m.mu_target) / (2.0 * m.v);
  }
  double operator()(const GaussianSeparateModel &m) const {
    return gauss_logpdf<double>(s, m.target) - gauss_logpdf<double>(s, m.nontarget);
  }
  double operator()(const StudentTModel &m) const {
    return t_logpdf<double>(s, m.target) - t_logpdf<double>(s, m.nontarget);
  }
  double operator()(const NigModel &m) const {
    return nig_logpdf<double>(s, m.target) - nig_logpdf<double>(s, m.nontarget);
  }
  double operator()(const LogRegModel &m) const { return m.a * s + m.b; }
  double operator()(const PavModel &m) const { return pav_apply(m, s); }
};

}  // namespace

double apply(const CalibratorModel &model, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("apply: non-finite score");
  return std::visit(Applier{s}, model);
}

std::vector<double> apply(const CalibratorModel &model, std::span<const double> scores) {
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(apply(model, s));
  return out;
}

LabeledScores apply(const CalibratorModel &model, const LabeledScores &scores) {
  return {apply(model, std::span<const double>(scores.targets)),
          apply(model, std::span<const double>(scores.nontargets))};
}

}  // namespace llrcal
