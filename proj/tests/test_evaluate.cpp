// tests/test_evaluate.cpp

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

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "llrcal/calibrators.hpp"
#include "llrcal/evaluate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace llrcal;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Counts at the optimal threshold, ties towards max(min(m, f)); full sweep.
std::pair<std::int64_t, std::int64_t> optimal_counts_sweep(const LlrSet &s, double x) {
  std::vector<std::pair<double, int>> all;
  for (double l : s.targets) all.push_back({l, 1});
  for (double l : s.nontargets) all.push_back({l, 0});
  std::sort(all.begin(), all.end());
  const double nt = s.targets.size(), nn = s.nontargets.size();
  std::int64_t m = 0, f = static_cast<std::int64_t>(nn);
  std::vector<std::pair<std::int64_t, std::int64_t>> cuts{{m, f}};
  for (std::size_t i = 0; i < all.size();) {
    const double v = all[i].first;
    for (; i < all.size() && all[i].first == v; ++i) all[i].second ? ++m : --f;
    cuts.push_back({m, f});
  }
  double best = kInf;
  for (auto [a, b] : cuts) best = std::min(best, normalized_cost(x, a / nt, b / nn));
  std::pair<std::int64_t, std::int64_t> pick{-1, -1};
  for (auto c : cuts)
    if (normalized_cost(x, c.first / nt, c.second / nn) <= best * (1 + 1e-12) &&
        std::min(c.first, c.second) > std::min(pick.first, pick.second))
      pick = c;
  return pick;
}

LlrSet random_set(Xoshiro256 &rng, int max_total, bool ties) {
  LlrSet s;
  const int n = 2 + static_cast<int>(rng.next() % (max_total - 1));
  for (int i = 0; i < n; ++i) {
    double v = standard_normal(rng) * 2;
    if (ties) v = std::round(v);
    (i == 0 ? s.targets : i == 1 ? s.nontargets : rng.uniform() < 0.4 ? s.targets : s.nontargets)
        .push_back(v + (rng.uniform() < 0.5 ? 1.0 : 0.0));
  }
  return s;
}

LlrSet gaussian_llrs(std::uint64_t seed, std::size_t n_each, double dprime) {
  // Equal-variance Gaussian scores turned into their true LLRs.
  Xoshiro256 rng(seed);
  LlrSet s;
  for (std::size_t i = 0; i < n_each; ++i) {
    const double t = dprime + standard_normal(rng), n = standard_normal(rng);
    s.targets.push_back(dprime * t - dprime * dprime / 2);
    s.nontargets.push_back(dprime * n - dprime * dprime / 2);
  }
  return s;
}

}  // namespace

TEST_SUITE("evaluate") {

TEST_CASE("error rates under the tie rule") {
  auto r = error_rates_at_threshold(LlrSet{{2, 2}, {-2, -2}}, 0);
  CHECK(r.p_miss == 0);
  CHECK(r.p_fa == 0);
  r = error_rates_at_threshold(LlrSet{{-1, 1}, {-1, 1}}, 0);
  CHECK(r.p_miss == 0.5);
  CHECK(r.p_fa == 0.5);
  r = error_rates_at_threshold(LlrSet{{-1, 1}, {-1, 1}}, 1);  // ties reject
  CHECK(r.p_miss == 1);
  CHECK(r.p_fa == 0);
  r = error_rates_at_threshold(LlrSet{{-1, 1}, {-1, 1}}, -1e300);
  CHECK(r.p_miss == 0);
  CHECK(r.p_fa == 1);
  CHECK_THROWS_AS(error_rates_at_threshold(LlrSet{{}, {1}}, 0), InvalidArgument);
  CHECK_THROWS_AS(error_rates_at_threshold(LlrSet{{std::nan("")}, {1}}, 0), InvalidArgument);
}

TEST_CASE("normalized cost") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  Xoshiro256 rng(61);
  for (int i = 0; i < 1000; ++i) {
    const double x = test::uniform(rng, -15, 15), pm = rng.uniform(), pf = rng.uniform();
    const Big p = 1 / (1 + exp(-Big(x)));
    const Big want = (p * pm + (1 - p) * pf) / (p < 0.5 ? p : 1 - p);
    CHECK(test::rel_err(normalized_cost(x, pm, pf), want.convert_to<double>()) < 1e-14);
  }
  // far out the direct formula loses 1-p; ours does not
  CHECK(normalized_cost(40, 0, 1) == 1);
  CHECK(normalized_cost(-40, 1, 0) == 1);
}

TEST_CASE("bayes error examples") {
  CHECK(bayes_error_at(LlrSet{{2, 2}, {-2, -2}}, 0.5) == 0);
  CHECK(bayes_error_at(LlrSet{{-1, 1}, {-1, 1}}, 0) == 1.0);
  CHECK(std::abs(bayes_error_at(LlrSet{{-1, 1}, {-1, 1}}, std::log(9.0)) - 1.0) < 1e-15);
  CHECK(min_bayes_error_at(LlrSet{{2, 3}, {0, 1}}, 0) == 0);
  CHECK(min_bayes_error_at(LlrSet{{0}, {1}}, 0) == 1.0);
  // -inf LLRs are rejected by every threshold
  CHECK(min_bayes_error_at(LlrSet{{-kInf, 5}, {-kInf, 0}}, 0) == 0.5);
  CHECK(bayes_error_at(LlrSet{{kInf}, {-kInf}}, 3) == 0);
}

TEST_CASE("min over thresholds against exhaustive enumeration") {
  Xoshiro256 rng(62);
  for (int inst = 0; inst < 300; ++inst) {
    const LlrSet s = random_set(rng, 100, inst % 2 == 0);
    const ErrorSweep sweep(s);
    for (int k = 0; k < 10; ++k) {
      const double x = test::uniform(rng, -8, 8);
      const double want = oracle::min_bayes_exhaustive(s, x);
      CHECK(test::rel_err(min_bayes_error_at(s, x), want) < 1e-12);
      CHECK(test::rel_err(sweep.minimum(x), want) < 1e-12);
      CHECK(sweep.actual(x) == bayes_error_at(s, x));
      CHECK(sweep.minimum(x) <= bayes_error_at(s, x) * (1 + 1e-15));
      CHECK(sweep.minimum(x) <= 1.0);
    }
  }
}

TEST_CASE("minimum is invariant under increasing maps") {
  Xoshiro256 rng(63);
  for (int inst = 0; inst < 50; ++inst) {
    const LlrSet s = random_set(rng, 200, inst % 2 == 0);
    LlrSet t = s;
    for (auto *v : {&t.targets, &t.nontargets})
      for (double &l : *v) l = 2 * l + 1;
    const auto a = bayes_error_curve(s, -6, 6, 97), b = bayes_error_curve(t, -6, 6, 97);
    CHECK(a.y_min == b.y_min);
    if (inst == 0) CHECK(a.y != b.y);
  }
}

TEST_CASE("pav recalibration attains the minimum") {
  Xoshiro256 rng(64);
  for (int inst = 0; inst < 100; ++inst) {
    const LlrSet s = random_set(rng, 300, inst % 3 == 0);
    const LlrSet cal = llrcal::apply(CalibratorModel{fit_pav(s, PavOptions{0.0})}, s);
    for (double x = -7; x <= 7; x += 0.25)
      CHECK(std::abs(bayes_error_at(cal, x) - min_bayes_error_at(s, x)) <=
            1e-12 * std::max(1.0, min_bayes_error_at(s, x)));
  }
}

TEST_CASE("curves and grids") {
  const auto g = uniform_grid(-10, 6, 321);
  CHECK(g.front() == -10);
  CHECK(g.back() == 6);
  CHECK(g.size() == 321);
  CHECK(std::abs(g[1] - g[0] - 0.05) < 1e-15);
  CHECK(g == default_grid(LlrSet{{1}, {0}}, false));
  CHECK_THROWS_AS(uniform_grid(1, 1, 5), InvalidArgument);
  CHECK_THROWS_AS(uniform_grid(0, 1, 1), InvalidArgument);

  const auto s = gaussian_llrs(65, 500, 1.5);
  const auto c = bayes_error_curve(s, -3, 3, 7);
  REQUIRE(c.size() == 7);
  CHECK(c.x.front() == -3);
  CHECK(c.x.back() == 3);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c.p[i] == doctest::Approx(1 / (1 + std::exp(-c.x[i]))).epsilon(1e-15));
    CHECK(c.y_min[i] <= c.y[i]);
    CHECK(c.y[i] == bayes_error_at(s, c.x[i]));
    const auto r = error_rates_at_threshold(s, -c.x[i]);
    CHECK(c.p_miss[i] == r.p_miss);
    CHECK(c.p_fa[i] == r.p_fa);
  }
}

TEST_CASE("curve csv") {
  const auto s = gaussian_llrs(66, 100, 1.0);
  const auto c = bayes_error_curve(s, -1, 1, 3);
  std::ostringstream out;
  write_curve_csv(out, c);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,p,y_actual,y_min,p_miss,p_fa");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 6);
    CHECK(v[0] == c.x[rows]);
    CHECK(v[1] == c.p[rows]);  // 17 digits read back exactly
    CHECK(v[2] == c.y[rows]);
    CHECK(v[3] == c.y_min[rows]);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("doddington range") {
  SUBCASE("too few trials") {
    LlrSet s = gaussian_llrs(67, 100, 1.0);
    s.targets.resize(29);
    try {
      doddington_range(s);
      FAIL("expected an error");
    } catch (const InvalidArgument &e) {
      CHECK(std::string(e.what()).find("insufficient targets") != std::string::npos);
    }
    s = gaussian_llrs(67, 100, 1.0);
    s.nontargets.resize(10);
    CHECK_THROWS_WITH_AS(doddington_range(s), doctest::Contains("insufficient non-targets"),
                         InvalidArgument);
    // separable: never 30 errors of each kind
    CHECK_THROWS_AS(doddington_range(LlrSet{std::vector<double>(50, 5.0), std::vector<double>(50, -5.0)}),
                    InvalidArgument);
  }
  SUBCASE("large overlapping classes") {
    const auto s = gaussian_llrs(68, 100000, 2.0);
    const auto [lo, hi] = doddington_range(s);
    MESSAGE("range [" << lo << ", " << hi << "]");
    CHECK(lo < 0);
    CHECK(hi > 0);
    const ErrorSweep sweep(s);
    for (double x : {lo, hi, 0.0}) {
      const auto want = optimal_counts_sweep(s, x);
      CHECK(sweep.optimal_counts(x) == want);
      CHECK(want.first >= 30);
      CHECK(want.second >= 30);
    }
    for (double x : {lo - 0.01, hi + 0.01}) {
      const auto want = optimal_counts_sweep(s, x);
      CHECK(sweep.optimal_counts(x) == want);
      CHECK(std::min(want.first, want.second) < 30);
    }
    // smaller classes, same distributions: a narrower range
    const auto [lo3, hi3] = doddington_range(gaussian_llrs(69, 1000, 2.0));
    CHECK(lo3 > lo);
    CHECK(hi3 < hi);
    const auto grid = default_grid(s, true);
    CHECK(grid.front() >= lo - 1e-9);
    CHECK(grid.back() <= hi + 1e-9);
    CHECK(grid.size() < 321);
  }
}

}  // TEST_SUITE
