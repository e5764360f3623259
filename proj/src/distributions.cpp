// src/distributions.cpp

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

#include "llrcal/distributions.hpp"

#include <cmath>

#include "llrcal/error.hpp"

namespace llrcal {
namespace {

void require(bool ok, const char *what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void validate(const GaussianParams &p) {
  require(std::isfinite(p.mu), "gaussian: mu must be finite");
  require(std::isfinite(p.v) && p.v > 0.0, "gaussian: variance must be positive");
}

void validate(const StudentTParams &p) {
  require(std::isfinite(p.mu), "student-t: mu must be finite");
  require(std::isfinite(p.sigma) && p.sigma > 0.0, "student-t: sigma must be positive");
  require(p.nu > 0.0 && !std::isnan(p.nu), "student-t: nu must be positive");
}

void validate(const NigParams &p) {
  require(std::isfinite(p.mu), "nig: mu must be finite");
  require(std::isfinite(p.delta) && p.delta > 0.0, "nig: delta must be positive");
  require(std::isfinite(p.alpha) && p.alpha > 0.0, "nig: alpha must be positive");
  require(std::isfinite(p.beta) && p.alpha > std::abs(p.beta), "nig: alpha must exceed |beta|");
}

double gauss_logpdf(double s, const GaussianParams &p) {
  validate(p);
  return gauss_logpdf<double>(s, p);
}

double t_logpdf(double s, const StudentTParams &p) {
  validate(p);
  return t_logpdf<double>(s, p);
}

double nig_logpdf(double s, const NigParams &p) {
  validate(p);
  return nig_logpdf<double>(s, p);
}

double nig_mean(const NigParams &p) {
  validate(p);
  return p.mu + p.delta * p.beta / std::sqrt((p.alpha - p.beta) * (p.alpha + p.beta));
}

std::array<double, 2> unconstrain(const GaussianParams &p) {
  validate(p);
  return {p.mu, std::sqrt(p.v)};
}

std::array<double, 3> unconstrain(const StudentTParams &p) {
  validate(p);
  return {p.mu, std::sqrt(p.sigma), std::sqrt(p.nu)};
}

std::array<double, 4> unconstrain(const NigParams &p) {
  validate(p);
  return {p.mu, std::sqrt(p.delta), p.beta, std::sqrt(p.alpha - std::abs(p.beta))};
}

GaussianParams constrain(const std::array<double, 2> &u) { return constrain_gaussian(u); }

StudentTParams constrain(const std::array<double, 3> &u) { return constrain_student_t(u); }

NigParams constrain(const std::array<double, 4> &u) {
  if (u[3] == 0.0) throw InvalidArgument("nig: w = 0 maps onto the alpha = |beta| boundary");
  return constrain_nig(u);
}

}  // namespace llrcal
