// tests/oracles.hpp

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

#ifndef LLRCAL_TESTS_ORACLES_HPP_
#define LLRCAL_TESTS_ORACLES_HPP_

// Brute-force reference computations shared by the unit tests and the
// acceptance run.  Deliberately naive.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "llrcal/scores.hpp"

namespace llrcal::oracle {

/// Calls visit(q) for every split of the labels y (sorted by score) into
/// contiguous runs whose means do not decrease, q holding each run's mean.
/// The isotonic least-squares fit is one of them.
template <class F>
void for_each_monotone_partition(const std::vector<int> &y, F &&visit) {
  const int n = static_cast<int>(y.size());
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<double> q(n);
    int start = 0;
    double prev = -1;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (i == n - 1 || (mask >> i & 1u)) {
        double m = 0;
        for (int j = start; j <= i; ++j) m += y[j];
        m /= (i - start + 1);
        if (m < prev) ok = false;
        for (int j = start; j <= i; ++j) q[j] = m;
        prev = m;
        start = i + 1;
      }
    }
    if (ok) visit(q);
  }
}

inline double squared_error(const std::vector<int> &y, const std::vector<double> &q) {
  double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - q[i]) * (y[i] - q[i]);
  return s;
}

/// Isotonic least-squares posteriors by exhaustive search (n <= ~16).
inline std::vector<double> isotonic_exhaustive(const std::vector<int> &y) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> out;
  for_each_monotone_partition(y, [&](const std::vector<double> &q) {
    const double e = squared_error(y, q);
    if (e < best - 1e-12) best = e, out = q;
  });
  return out;
}

/// Normalized Bayes error straight from the definition.
inline double direct_cost(double x, double p_miss, double p_fa) {
  const double p = 1 / (1 + std::exp(-x));
  return (p * p_miss + (1 - p) * p_fa) / std::min(p, 1 - p);
}

/// Minimum over "reject l <= theta" for theta below everything and at every
/// value, each counted from scratch.
inline double min_bayes_exhaustive(const LabeledScores &s, double x) {
  std::vector<double> thetas{-std::numeric_limits<double>::infinity()};
  for (const auto *v : {&s.targets, &s.nontargets}) thetas.insert(thetas.end(), v->begin(), v->end());
  double best = std::numeric_limits<double>::infinity();
  for (double th : thetas) {
    double m = 0, f = 0;
    for (double l : s.targets) m += l <= th;
    for (double l : s.nontargets) f += l > th;
    best = std::min(best, direct_cost(x, m / s.targets.size(), f / s.nontargets.size()));
  }
  return best;
}

}  // namespace llrcal::oracle

#endif  // LLRCAL_TESTS_ORACLES_HPP_
