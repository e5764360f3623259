// include/llrcal/evaluate.hpp

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

#ifndef LLRCAL_EVALUATE_HPP_
#define LLRCAL_EVALUATE_HPP_

// Normalized Bayes error-rates of LLR sets.  At prior log-odds x the
// synthetic prior is p = 1/(1+e^-x) and the Bayes threshold theta = -x; an
// LLR l is rejected iff l <= theta.
//   y  = (p P_miss(theta) + (1-p) P_fa(theta)) / min(p, 1-p)
//   y' = the same with the threshold chosen to minimise it.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "llrcal/scores.hpp"

namespace llrcal {

/// Target and non-target LLRs.  ±inf values are tolerated (they arise from
/// unsmoothed PAV); NaN is not.
using LlrSet = LabeledScores;

struct ErrorRates {
  double p_miss = 0.0;
  double p_fa = 0.0;
};

ErrorRates error_rates_at_threshold(const LlrSet &llrs, double theta);

/// Normalized cost from error rates, computed without forming 1 - p.
double normalized_cost(double x, double p_miss, double p_fa);

double bayes_error_at(const LlrSet &llrs, double x);

/// Minimum over every achievable threshold, by a direct sweep.
double min_bayes_error_at(const LlrSet &llrs, double x);

/**
   Sorted view of an LlrSet supporting fast repeated queries.  The minimum
   uses the lower convex hull of the (misses, false alarms) count pairs of
   all achievable thresholds, so each query is O(log n).
*/
class ErrorSweep {
 public:
  explicit ErrorSweep(const LlrSet &llrs);

  std::size_t num_targets() const { return targets_.size(); }
  std::size_t num_nontargets() const { return nontargets_.size(); }

  /// Misses and false alarms when rejecting l <= theta.
  std::pair<std::int64_t, std::int64_t> counts_at(double theta) const;
  ErrorRates rates_at(double theta) const;
  double actual(double x) const;
  double minimum(double x) const;

  /// Counts at the threshold attaining the minimum at x; among tied
  /// thresholds, the one maximising min(misses, false alarms).
  std::pair<std::int64_t, std::int64_t> optimal_counts(double x) const;

 private:
  struct Vertex {
    std::int64_t misses;
    std::int64_t fas;
  };
  double cost(const Vertex &v, double x) const;
  std::size_t best_vertex(double x) const;

  std::vector<double> targets_;
  std::vector<double> nontargets_;
  std::vector<Vertex> hull_;
};

struct BayesErrorCurve {
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> y;      // actual
  std::vector<double> y_min;  // minimum
  std::vector<double> p_miss;
  std::vector<double> p_fa;

  std::size_t size() const { return x.size(); }
};

/// n_points uniform in [x_lo, x_hi]; the endpoints are exact.
std::vector<double> uniform_grid(double x_lo, double x_hi, std::size_t n_points);

BayesErrorCurve bayes_error_curve(const LlrSet &llrs, const std::vector<double> &grid);
BayesErrorCurve bayes_error_curve(const LlrSet &llrs, double x_lo, double x_hi,
                                  std::size_t n_points);

/**
   Rule of 30: over x = -20, -19.99, ..., 20, the longest contiguous run
   where the counts at the y'-achieving threshold have at least 30 misses
   and 30 false alarms.  Throws InvalidArgument with "insufficient targets"
   / "insufficient non-targets" when a class has fewer than 30 trials, and
   when no grid point qualifies.
*/
std::pair<double, double> doddington_range(const LlrSet &llrs);

inline constexpr double kDefaultGridLo = -10.0;
inline constexpr double kDefaultGridHi = 6.0;
inline constexpr std::size_t kDefaultGridPoints = 321;

/// Default grid, optionally restricted to points inside doddington_range.
std::vector<double> default_grid(const LlrSet &llrs, bool doddington);

/// CSV with header x,p,y_actual,y_min,p_miss,p_fa and %.17g values.
void write_curve_csv(std::ostream &out, const BayesErrorCurve &curve);

}  // namespace llrcal

#endif  // LLRCAL_EVALUATE_HPP_
