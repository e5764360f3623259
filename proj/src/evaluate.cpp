// src/evaluate.cpp

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

#include "llrcal/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "llrcal/error.hpp"

namespace llrcal {

namespace {

void check_llrs(const LlrSet &llrs) {
  if (llrs.targets.empty()) throw InvalidArgument("evaluate: no target LLRs");
  if (llrs.nontargets.empty()) throw InvalidArgument("evaluate: no non-target LLRs");
  for (const auto *v : {&llrs.targets, &llrs.nontargets})
    for (double l : *v)
      if (std::isnan(l)) throw InvalidArgument("evaluate: NaN LLR");
}

std::vector<double> sorted_copy(const std::vector<double> &v) {
  std::vector<double> s(v);
  std::sort(s.begin(), s.end());
  return s;
}

std::int64_t count_le(const std::vector<double> &sorted, double theta) {
  return std::upper_bound(sorted.begin(), sorted.end(), theta) - sorted.begin();
}

/**
   Calls visit(misses, false_alarms) for every achievable threshold, in
   order of increasing rejections: accept-all (unless some LLR is -inf,
   which every threshold rejects), then one cut above each distinct value.
*/
template <class Visit>
void for_each_cut(const std::vector<double> &t, const std::vector<double> &n, Visit &&visit) {
  std::int64_t misses = 0;
  std::int64_t fas = static_cast<std::int64_t>(n.size());
  const double lowest = std::min(t.front(), n.front());
  if (lowest != -std::numeric_limits<double>::infinity()) visit(misses, fas);
  std::size_t i = 0, j = 0;
  while (i < t.size() || j < n.size()) {
    double v;
    if (j == n.size() || (i < t.size() && t[i] <= n[j]))
      v = t[i];
    else
      v = n[j];
    while (i < t.size() && t[i] == v) ++i, ++misses;
    while (j < n.size() && n[j] == v) ++j, --fas;
    visit(misses, fas);
  }
}

}  // namespace

double normalized_cost(double x, double p_miss, double p_fa) {
  // p / min(p, 1-p) and (1-p) / min(p, 1-p) are 1 and e^{|x|}.
  if (x >= 0.0) return std::exp(x) * p_miss + p_fa;
  return p_miss + std::exp(-x) * p_fa;
}

ErrorRates error_rates_at_threshold(const LlrSet &llrs, double theta) {
  check_llrs(llrs);
  std::int64_t misses = 0, fas = 0;
  for (double l : llrs.targets) misses += l <= theta;
  for (double l : llrs.nontargets) fas += l > theta;
  return {static_cast<double>(misses) / static_cast<double>(llrs.targets.size()),
          static_cast<double>(fas) / static_cast<double>(llrs.nontargets.size())};
}

double bayes_error_at(const LlrSet &llrs, double x) {
  const ErrorRates r = error_rates_at_threshold(llrs, -x);
  return normalized_cost(x, r.p_miss, r.p_fa);
}

double min_bayes_error_at(const LlrSet &llrs, double x) {
  check_llrs(llrs);
  const auto t = sorted_copy(llrs.targets), n = sorted_copy(llrs.nontargets);
  const double nt = static_cast<double>(t.size()), nn = static_cast<double>(n.size());
  double best = std::numeric_limits<double>::infinity();
  for_each_cut(t, n, [&](std::int64_t m, std::int64_t f) {
    best = std::min(best, normalized_cost(x, static_cast<double>(m) / nt,
                                          static_cast<double>(f) / nn));
  });
  return best;
}

// ---- ErrorSweep -------------------------------------------------------------------

ErrorSweep::ErrorSweep(const LlrSet &llrs) {
  check_llrs(llrs);
  targets_ = sorted_copy(llrs.targets);
  nontargets_ = sorted_copy(llrs.nontargets);

  // Count pairs move right (misses up) and down (false alarms down).  Keep
  // the lowest point per misses value and the leftmost per false-alarm
  // value, then take the lower convex hull, keeping collinear points.
  std::vector<Vertex> pts;
  for_each_cut(targets_, nontargets_, [&](std::int64_t m, std::int64_t f) {
    if (!pts.empty() && pts.back().misses == m) {
      pts.back().fas = f;
      return;
    }
    if (!pts.empty() && pts.back().fas == f) return;
    pts.push_back({m, f});
  });
  auto cross = [](const Vertex &o, const Vertex &a, const Vertex &b) {
    return static_cast<__int128>(a.misses - o.misses) * (b.fas - o.fas) -
           static_cast<__int128>(a.fas - o.fas) * (b.misses - o.misses);
  };
  for (const Vertex &p : pts) {
    while (hull_.size() >= 2 && cross(hull_[hull_.size() - 2], hull_.back(), p) < 0)
      hull_.pop_back();
    hull_.push_back(p);
  }
}

std::pair<std::int64_t, std::int64_t> ErrorSweep::counts_at(double theta) const {
  const std::int64_t misses = count_le(targets_, theta);
  const std::int64_t fas = static_cast<std::int64_t>(nontargets_.size()) -
                           count_le(nontargets_, theta);
  return {misses, fas};
}

ErrorRates ErrorSweep::rates_at(double theta) const {
  const auto [m, f] = counts_at(theta);
  return {static_cast<double>(m) / static_cast<double>(targets_.size()),
          static_cast<double>(f) / static_cast<double>(nontargets_.size())};
}

double ErrorSweep::actual(double x) const {
  const ErrorRates r = rates_at(-x);
  return normalized_cost(x, r.p_miss, r.p_fa);
}

double ErrorSweep::cost(const Vertex &v, double x) const {
  return normalized_cost(x, static_cast<double>(v.misses) / static_cast<double>(targets_.size()),
                         static_cast<double>(v.fas) / static_cast<double>(nontargets_.size()));
}

std::size_t ErrorSweep::best_vertex(double x) const {
  // Cost is convex along the hull: find the first edge that does not descend.
  std::size_t lo = 0, hi = hull_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cost(hull_[mid + 1], x) < cost(hull_[mid], x))
      lo = mid + 1;
    else
      hi = mid;
  }
  std::size_t best = lo;
  for (std::size_t j : {lo == 0 ? lo : lo - 1, lo + 1})
    if (j < hull_.size() && cost(hull_[j], x) < cost(hull_[best], x)) best = j;
  return best;
}

double ErrorSweep::minimum(double x) const { return cost(hull_[best_vertex(x)], x); }

std::pair<std::int64_t, std::int64_t> ErrorSweep::optimal_counts(double x) const {
  const std::size_t b = best_vertex(x);
  const double c = cost(hull_[b], x);
  auto tied = [&](std::size_t j) { return cost(hull_[j], x) <= c + 1e-12 * c; };
  auto score = [&](std::size_t j) { return std::min(hull_[j].misses, hull_[j].fas); };
  std::size_t pick = b;
  for (std::size_t j = b; j > 0 && tied(j - 1); --j)
    if (score(j - 1) > score(pick)) pick = j - 1;
  for (std::size_t j = b + 1; j < hull_.size() && tied(j); ++j)
    if (score(j) > score(pick)) pick = j;
  return {hull_[pick].misses, hull_[pick].fas};
}

// ---- curves -----------------------------------------------------------------------

std::vector<double> uniform_grid(double x_lo, double x_hi, std::size_t n_points) {
  if (!(x_lo < x_hi) || !std::isfinite(x_lo) || !std::isfinite(x_hi))
    throw InvalidArgument("grid: need finite x_lo < x_hi");
  if (n_points < 2) throw InvalidArgument("grid: need at least 2 points");
  std::vector<double> g(n_points);
  const double span = x_hi - x_lo;
  for (std::size_t i = 0; i < n_points; ++i)
    g[i] = x_lo + span * static_cast<double>(i) / static_cast<double>(n_points - 1);
  g.back() = x_hi;
  return g;
}

BayesErrorCurve bayes_error_curve(const LlrSet &llrs, const std::vector<double> &grid) {
  const ErrorSweep sweep(llrs);
  BayesErrorCurve c;
  for (double x : grid) {
    const ErrorRates r = sweep.rates_at(-x);
    c.x.push_back(x);
    c.p.push_back(1.0 / (1.0 + std::exp(-x)));
    c.y.push_back(normalized_cost(x, r.p_miss, r.p_fa));
    c.y_min.push_back(sweep.minimum(x));
    c.p_miss.push_back(r.p_miss);
    c.p_fa.push_back(r.p_fa);
  }
  return c;
}

BayesErrorCurve bayes_error_curve(const LlrSet &llrs, double x_lo, double x_hi,
                                  std::size_t n_points) {
  return bayes_error_curve(llrs, uniform_grid(x_lo, x_hi, n_points));
}

std::pair<double, double> doddington_range(const LlrSet &llrs) {
  constexpr std::size_t kMinErrors = 30;
  if (llrs.targets.size() < kMinErrors)
    throw InvalidArgument("doddington range: insufficient targets (" +
                          std::to_string(llrs.targets.size()) + " < 30)");
  if (llrs.nontargets.size() < kMinErrors)
    throw InvalidArgument("doddington range: insufficient non-targets (" +
                          std::to_string(llrs.nontargets.size()) + " < 30)");
  const ErrorSweep sweep(llrs);
  int best_start = -1, best_len = 0, start = -1;
  for (int k = 0; k <= 4001; ++k) {
    bool ok = false;
    if (k <= 4000) {
      const auto [m, f] = sweep.optimal_counts(static_cast<double>(k - 2000) / 100.0);
      ok = m >= static_cast<std::int64_t>(kMinErrors) && f >= static_cast<std::int64_t>(kMinErrors);
    }
    if (ok && start < 0) start = k;
    if (!ok && start >= 0) {
      if (k - start > best_len) best_start = start, best_len = k - start;
      start = -1;
    }
  }
  if (best_len == 0)
    throw InvalidArgument("doddington range: no operating point has 30 errors of each kind");
  return {static_cast<double>(best_start - 2000) / 100.0,
          static_cast<double>(best_start + best_len - 1 - 2000) / 100.0};
}

std::vector<double> default_grid(const LlrSet &llrs, bool doddington) {
  std::vector<double> g = uniform_grid(kDefaultGridLo, kDefaultGridHi, kDefaultGridPoints);
  if (!doddington) return g;
  const auto [lo, hi] = doddington_range(llrs);
  std::erase_if(g, [lo = lo, hi = hi](double x) { return x < lo - 1e-9 || x > hi + 1e-9; });
  if (g.empty()) throw InvalidArgument("default grid: no grid point inside the Doddington range");
  return g;
}

void write_curve_csv(std::ostream &out, const BayesErrorCurve &curve) {
  out << "x,p,y_actual,y_min,p_miss,p_fa\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", curve.x[i],
                  curve.p[i], curve.y[i], curve.y_min[i], curve.p_miss[i], curve.p_fa[i]);
    out << buf;
  }
}

}  // namespace llrcal
