// tests/test_scores.cpp

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

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "llrcal/error.hpp"
#include "llrcal/scores.hpp"
#include "test_util.hpp"

using namespace llrcal;

namespace {

double mean(const std::vector<double> &v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

double variance(const std::vector<double> &v) {
  const double m = mean(v);
  long double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return static_cast<double>(s / v.size());
}

LabeledScores parse(const std::string &text) {
  std::istringstream in(text);
  return read_scores(in);
}

}  // namespace

TEST_SUITE("scores") {

TEST_CASE("parse rows, comments and blank lines") {
  const auto s = parse("# header\n\ntgt 1.5\n  non\t-0.5  \n");
  CHECK(s.targets == std::vector<double>{1.5});
  CHECK(s.nontargets == std::vector<double>{-0.5});
}

TEST_CASE("order within each class is preserved") {
  const auto s = parse("non 3\ntgt 2\nnon 1\ntgt 4\n");
  CHECK(s.targets == std::vector<double>{2, 4});
  CHECK(s.nontargets == std::vector<double>{3, 1});
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_WITH_AS(parse(""), "no scores", ParseError);
  CHECK_THROWS_WITH_AS(parse("# only a comment\n"), "no scores", ParseError);
}

TEST_CASE("malformed rows report their line") {
  try {
    parse("tgt abc\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  try {
    parse("tgt 1\nnon 2\nfoo 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("tgt 1 2\nnon 0\n"), ParseError);
  CHECK_THROWS_AS(parse("tgt\nnon 0\n"), ParseError);
  CHECK_THROWS_AS(parse("tgt 1e\nnon 0\n"), ParseError);
}

TEST_CASE("non-finite values and empty classes are rejected") {
  CHECK_THROWS_AS(parse("tgt inf\nnon 0\n"), ParseError);
  CHECK_THROWS_AS(parse("tgt nan\nnon 0\n"), ParseError);
  CHECK_THROWS_AS(parse("tgt 1e999\nnon 0\n"), ParseError);
  CHECK_THROWS_AS(parse("tgt 1\n"), ParseError);
  CHECK_THROWS_AS(parse("non 1\n"), ParseError);
}

TEST_CASE("save/load round-trips bit-exactly") {
  test::TempDir dir("scores");
  Xoshiro256 rng(3);
  LabeledScores s{{1.5, 0.1, -1e-300, 1.0 / 3.0, 5e-324}, {-0.5, 0.2, 1e300}};
  for (int i = 0; i < 1000; ++i) s.nontargets.push_back(standard_normal(rng) * 1e3);
  save_scores(s, dir / "s.txt");
  const auto back = load_scores(dir / "s.txt");
  CHECK(back == s);
  CHECK(format_shortest(0.1) == "0.1");
}

TEST_CASE("I/O failures") {
  const LabeledScores s{{1.0}, {0.0}};
  CHECK_THROWS_AS(save_scores(s, "/nonexistent-dir/x/y.txt"), IoError);
  CHECK_THROWS_AS(load_scores("/nonexistent-dir/x/y.txt"), IoError);
}

TEST_CASE("synthetic generation is a pure function of the spec") {
  SyntheticSpec spec{{100, NigParams{0, 1, 2, 1}}, {200, StudentTParams{1, 2, 5}}, 42};
  const auto a = generate_synthetic(spec), b = generate_synthetic(spec);
  CHECK(a == b);
  CHECK(a.targets.size() == 100);
  CHECK(a.nontargets.size() == 200);
  spec.seed = 43;
  CHECK(generate_synthetic(spec) != a);
}

TEST_CASE("synthetic spec validation") {
  CHECK_THROWS_AS(generate_synthetic({{10, GaussianParams{0, -1}}, {10, GaussianParams{0, 1}}, 1}),
                  InvalidArgument);
  CHECK_THROWS_AS(generate_synthetic({{10, NigParams{0, 1, 1, 1}}, {10, GaussianParams{0, 1}}, 1}),
                  InvalidArgument);
}

TEST_CASE("spec.json round trip") {
  const SyntheticSpec spec{{7, NigParams{0.5, 1, 2, -1}}, {9, StudentTParams{1, 2, 5}}, 99};
  const SyntheticSpec back = parse_synthetic_spec(synthetic_spec_to_json(spec));
  CHECK(generate_synthetic(back) == generate_synthetic(spec));
  CHECK_THROWS_AS(parse_synthetic_spec("{"), ParseError);
  CHECK_THROWS_AS(parse_synthetic_spec(R"({"seed":1,"targets":{"count":1,"family":"cauchy"},)"
                                       R"("nontargets":{"count":1,"family":"gaussian","mu":0,"v":1}})"),
                  ParseError);
}

TEST_CASE("gaussian sample moments") {
  Xoshiro256 rng(11);
  const auto x = sample_family(GaussianParams{0, 1}, 1000000, rng);
  CHECK(std::abs(mean(x)) < 0.01);
  CHECK(std::abs(variance(x) - 1.0) < 0.01);
}

TEST_CASE("student-t sample location and scale") {
  Xoshiro256 rng(12);
  const auto x = sample_family(StudentTParams{1, 2, 5}, 1000000, rng);
  // variance sigma^2 nu / (nu - 2) = 20/3
  CHECK(std::abs(mean(x) - 1.0) < 0.02);
  CHECK(std::abs(variance(x) - 20.0 / 3.0) < 0.3);
}

TEST_CASE("nig sample mean") {
  Xoshiro256 rng(13);
  const NigParams p{0, 1, 2, 1};
  const auto x = sample_family(p, 1000000, rng);
  // mu + delta beta / gamma, checked against quadrature of the density
  const double want = 1.0 / std::sqrt(3.0);
  boost::math::quadrature::exp_sinh<double> es;
  const double m_quad = es.integrate([&](double t) { return t * std::exp(nig_logpdf(t, p)); }) -
                        es.integrate([&](double t) { return t * std::exp(nig_logpdf(-t, p)); });
  CHECK(std::abs(m_quad - want) < 1e-8);
  CHECK(std::abs(nig_mean(p) - want) < 1e-15);
  CHECK(std::abs(mean(x) - want) < 0.02);
}

TEST_CASE("nig sampler matches the density (Kolmogorov-Smirnov)") {
  Xoshiro256 rng(14);
  const NigParams p{0.3, 1.2, 2.5, -1.0};
  auto x = sample_family(p, 1000000, rng);
  std::sort(x.begin(), x.end());
  const auto pdf = [&](double t) { return std::exp(nig_logpdf(t, p)); };

  // CDF at every 500th order statistic by cumulative Gauss-Legendre.
  const std::size_t stride = 500;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); i += stride) idx.push_back(i);
  idx.push_back(x.size() - 1);
  boost::math::quadrature::exp_sinh<double> es;
  std::vector<double> cdf(idx.size());
  cdf[0] = es.integrate([&](double t) { return pdf(x[idx[0]] - t); });
  for (std::size_t k = 1; k < idx.size(); ++k)
    cdf[k] = cdf[k - 1] + boost::math::quadrature::gauss<double, 15>::integrate(
                              pdf, x[idx[k - 1]], x[idx[k]]);
  const double right_tail = es.integrate([&](double t) { return pdf(x.back() + t); });
  CHECK(std::abs(cdf.back() + right_tail - 1.0) < 1e-9);  // oracle self-check
  // Upper bound on sup |F_n - F| from the values at the grid ends.
  const double n = static_cast<double>(x.size());
  double ks = std::max(cdf[0], 1.0 - cdf.back());
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    const double fn_lo = static_cast<double>(idx[k] + 1) / n;      // F_n at grid start
    const double fn_hi = static_cast<double>(idx[k + 1]) / n;      // F_n just below the end
    ks = std::max({ks, std::abs(fn_lo - cdf[k]), fn_hi - cdf[k], cdf[k + 1] - fn_lo});
  }
  CHECK(ks < 0.005);
}

}  // TEST_SUITE
