// src/rng.cpp

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

#include "llrcal/rng.hpp"

#include <cmath>
#include <numbers>

namespace llrcal {

double standard_normal(Xoshiro256 &rng) {
  const double u1 = rng.uniform_pos();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double standard_gamma(Xoshiro256 &rng, double shape) {
  if (shape < 1.0) {
    const double g = standard_gamma(rng, shape + 1.0);
    return g * std::pow(rng.uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = standard_normal(rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double chi_square(Xoshiro256 &rng, double nu) {
  return 2.0 * standard_gamma(rng, 0.5 * nu);
}

double inverse_gaussian(Xoshiro256 &rng, double mean, double shape) {
  const double z = standard_normal(rng);
  const double a = mean * z * z;
  if (a == 0.0) return mean;
  // mean - 2*mean*a / (a + sqrt(a^2 + 4*shape*a)) is the smaller root,
  // written without the cancellation of the textbook form.
  const double x = mean - 2.0 * mean * a / (a + std::sqrt(a * a + 4.0 * shape * a));
  const double u = rng.uniform();
  if (u * (mean + x) <= mean) return x;
  return mean * mean / x;
}

}  // namespace llrcal
