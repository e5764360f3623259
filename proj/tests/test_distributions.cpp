// tests/test_distributions.cpp

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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>

#include "llrcal/distributions.hpp"
#include "llrcal/error.hpp"
#include "llrcal/objectives.hpp"
#include "test_util.hpp"

using namespace llrcal;

namespace {

template <class Logpdf>
double integrate_density(double center, const Logpdf &logpdf) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return std::exp(logpdf(center + t)); }, 1e-12) +
         es.integrate([&](double t) { return std::exp(logpdf(center - t)); }, 1e-12);
}

GaussianParams random_gauss(Xoshiro256 &r) {
  return {test::uniform(r, -3, 3), test::uniform(r, 0.05, 9)};
}
StudentTParams random_t(Xoshiro256 &r) {
  return {test::uniform(r, -3, 3), test::uniform(r, 0.2, 4), test::uniform(r, 1, 30)};
}
NigParams random_nig(Xoshiro256 &r) {
  const double alpha = test::uniform(r, 0.5, 5);
  return {test::uniform(r, -3, 3), test::uniform(r, 0.2, 3), alpha,
          test::uniform(r, -0.9, 0.9) * alpha};
}

// Logpdf at s as a generic function of the unconstrained coordinates.
template <class Family>
struct AtScore {
  double s;
  template <class T>
  T operator()(const std::array<T, Family::kDim> &u) const {
    return Family::template logpdf<T>(s, Family::constrain(u));
  }
};

template <class Family, class P>
void check_generic_scalars(const P &p, double s) {
  constexpr int D = Family::kDim;
  const auto u = unconstrain(p);
  const AtScore<Family> f{s};
  const double plain = f(u);

  std::array<ad::Complex, D> uc;
  for (int i = 0; i < D; ++i) uc[i] = ad::Complex(u[i], i == 0 ? 1e-150 : 0.0);
  const ad::Complex c = f(uc);
  CHECK(std::abs(c.real() - plain) <= 1e-12 * std::max(1.0, std::abs(plain)));

  const auto [v, g] = generic_value_gradient<D, double>(f, u);
  CHECK(std::abs(v - plain) <= 1e-12 * std::max(1.0, std::abs(plain)));
  // complex step recovers the first gradient component
  CHECK(test::rel_err(c.imag() / 1e-150, g[0]) < 1e-12);
}

template <class Family, class P>
double gradient_fd_error(const P &p, double s) {
  constexpr int D = Family::kDim;
  const auto u = unconstrain(p);
  const AtScore<Family> f{s};
  const auto [v, g] = generic_value_gradient<D, double>(f, u);
  double num = 0, den = 0;
  for (int i = 0; i < D; ++i) {
    auto up = u, dn = u;
    up[i] += 1e-5;
    dn[i] -= 1e-5;
    const double fd = (f(up) - f(dn)) / 2e-5;
    num += (fd - g[i]) * (fd - g[i]);
    den += g[i] * g[i];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("gaussian logpdf values") {
  CHECK(gauss_logpdf(0, GaussianParams{0, 1}) == doctest::Approx(-0.9189385332).epsilon(1e-10));
  CHECK(gauss_logpdf(1, GaussianParams{0, 1}) == doctest::Approx(-1.4189385332).epsilon(1e-10));
  CHECK(gauss_logpdf(0, GaussianParams{0, 4}) == doctest::Approx(-1.6120857137).epsilon(1e-10));
  CHECK_THROWS_AS(gauss_logpdf(0, GaussianParams{0, 0}), InvalidArgument);
}

TEST_CASE("student-t logpdf values") {
  CHECK(t_logpdf(0, StudentTParams{0, 1, 1}) == doctest::Approx(-std::log(M_PI)).epsilon(1e-12));
  CHECK(t_logpdf(1, StudentTParams{0, 1, 1}) ==
        doctest::Approx(-std::log(2 * M_PI)).epsilon(1e-12));
  CHECK(std::abs(t_logpdf(0, StudentTParams{0, 1, 1e6}) + 0.918939) < 1e-5);
  CHECK_THROWS_AS(t_logpdf(0, StudentTParams{0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(t_logpdf(0, StudentTParams{0, 1, -1}), InvalidArgument);
}

TEST_CASE("nig logpdf values") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big k1 = boost::math::cyl_bessel_k(1, Big(1));
  const double want = static_cast<double>(log(exp(Big(1)) * k1 / boost::math::constants::pi<Big>()));
  const NigParams p{0, 1, 1, 0};
  CHECK(std::abs(nig_logpdf(0, p) - want) < 1e-14);
  CHECK(std::abs(want + 0.6524) < 1e-4);
  CHECK(std::abs(integrate_density(0, [&](double s) { return nig_logpdf(s, p); }) - 1) < 1e-8);

  for (double d : {0.1, 1.0, 7.5, 1e3})
    CHECK(nig_logpdf(d, p) == nig_logpdf(-d, p));
  const double far = nig_logpdf(1e6, p);
  CHECK(std::isfinite(far));
  CHECK(far < 0);
  CHECK_THROWS_AS(nig_logpdf(0, NigParams{0, 1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(nig_logpdf(0, NigParams{0, -1, 2, 1}), InvalidArgument);
}

TEST_CASE("nig mean") { CHECK(nig_mean(NigParams{1, 2, 5, 3}) == doctest::Approx(1 + 2 * 3 / 4.0)); }

TEST_CASE("densities normalise to one") {
  Xoshiro256 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_gauss(rng);
    const auto t = random_t(rng);
    const auto n = random_nig(rng);
    CAPTURE(i);
    CHECK(std::abs(integrate_density(g.mu, [&](double s) { return gauss_logpdf(s, g); }) - 1) < 1e-6);
    CHECK(std::abs(integrate_density(t.mu, [&](double s) { return t_logpdf(s, t); }) - 1) < 1e-6);
    CHECK(std::abs(integrate_density(n.mu, [&](double s) { return nig_logpdf(s, n); }) - 1) < 1e-6);
  }
}

TEST_CASE("real, complex and dual evaluations agree") {
  Xoshiro256 rng(22);
  for (int i = 0; i < 20; ++i) {
    const double s = test::uniform(rng, -6, 6);
    check_generic_scalars<GaussianFamily>(random_gauss(rng), s);
    check_generic_scalars<StudentTFamily>(random_t(rng), s);
    check_generic_scalars<NigFamily>(random_nig(rng), s);
  }
}

TEST_CASE("dual gradients match central differences") {
  Xoshiro256 rng(23);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double s = test::uniform(rng, -6, 6);
    worst = std::max({worst, gradient_fd_error<GaussianFamily>(random_gauss(rng), s),
                      gradient_fd_error<StudentTFamily>(random_t(rng), s),
                      gradient_fd_error<NigFamily>(random_nig(rng), s)});
  }
  MESSAGE("worst relative gradient error " << worst);
  CHECK(worst < 1e-6);
}

TEST_CASE("student-t approaches the gaussian as nu grows") {
  const double nu = 1e8;
  double sup = 0;
  for (int k = -1000; k <= 1000; ++k) {
    const double s = k / 100.0;
    sup = std::max(sup, std::abs(t_logpdf(s, StudentTParams{0.5, 5, nu}) -
                                 gauss_logpdf(s, GaussianParams{0.5, 25})));
  }
  CHECK(sup < 1e-6);
  // At unit scale the 1/nu term is visible at |s| = 10: the gap is
  // (z^4 - 2 z^2 - 1) / (4 nu) + O(nu^-2), i.e. 2.45e-5 rather than < 1e-6.
  const double gap = t_logpdf(10, StudentTParams{0, 1, nu}) - gauss_logpdf(10, GaussianParams{0, 1});
  CHECK(test::rel_err(gap, (1e4 - 200 - 1) / (4 * nu)) < 1e-2);
}

TEST_CASE("constrain and unconstrain") {
  CHECK(std::abs(unconstrain(GaussianParams{0, 4})[1]) == 2.0);
  CHECK(constrain(std::array<double, 2>{0, 2}).v == 4.0);
  CHECK(constrain(std::array<double, 2>{0, -2}).v == 4.0);

  const StudentTParams t{1, 2, 5};
  const auto tb = constrain(unconstrain(t));
  CHECK(std::abs(tb.mu - 1) < 1e-12);
  CHECK(std::abs(tb.sigma - 2) < 1e-12);
  CHECK(std::abs(tb.nu - 5) < 1e-12);

  const auto u = unconstrain(NigParams{0, 1, 2, 1});
  CHECK(std::abs(std::abs(u[3]) - 1.0) < 1e-15);
  CHECK(constrain(u).alpha == 2.0);
  CHECK(constrain(std::array<double, 4>{0, 1, 1, -1}).alpha == 2.0);
  CHECK_THROWS_AS(constrain(std::array<double, 4>{0, 1, 1, 0}), InvalidArgument);

  Xoshiro256 rng(24);
  for (int i = 0; i < 50; ++i) {
    const NigParams n = random_nig(rng);
    const NigParams b = constrain(unconstrain(n));
    CHECK(std::abs(b.mu - n.mu) < 1e-12);
    CHECK(std::abs(b.delta - n.delta) < 1e-12);
    CHECK(std::abs(b.alpha - n.alpha) < 1e-12);
    CHECK(std::abs(b.beta - n.beta) < 1e-12);
  }
}

}  // TEST_SUITE
