// include/llrcal/scores.hpp

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

#ifndef LLRCAL_SCORES_HPP_
#define LLRCAL_SCORES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "llrcal/distributions.hpp"
#include "llrcal/rng.hpp"

namespace llrcal {

/// Target and non-target score populations.  Plain value type; the
/// non-empty/finite invariants are enforced by load_scores and by each fit.
struct LabeledScores {
  std::vector<double> targets;
  std::vector<double> nontargets;

  std::size_t num_targets() const { return targets.size(); }
  std::size_t num_nontargets() const { return nontargets.size(); }

  friend bool operator==(const LabeledScores &, const LabeledScores &) = default;
};

/// Throws InvalidArgument unless both classes are non-empty and every value
/// is finite.  `what` prefixes the message.
void check_scores(const LabeledScores &scores, const std::string &what);

/**
   Score file format: UTF-8 text, one trial per line, `<label> <score>`,
   label in {tgt, non}, whitespace-separated.  Blank lines and lines whose
   first non-blank character is `#` are ignored.  Errors (ParseError) carry
   the 1-based line number.
*/
LabeledScores read_scores(std::istream &in);
LabeledScores load_scores(const std::filesystem::path &path);

/// Writes targets then non-targets, each value in shortest round-trip form.
void write_scores(std::ostream &out, const LabeledScores &scores);
void save_scores(const LabeledScores &scores, const std::filesystem::path &path);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_shortest(double x);

using FamilyParams = std::variant<GaussianParams, StudentTParams, NigParams>;

struct ClassSpec {
  std::size_t count = 0;
  FamilyParams params;
};

/**
   Deterministic synthetic scores.  One xoshiro256** stream seeded with
   `seed` draws all targets, then all non-targets.
     gaussian:  mu + sqrt(v) Z
     student-t: mu + sigma Z / sqrt(G / nu), G ~ chi-square(nu)
     nig:       mu + beta V + sqrt(V) Z, V ~ IG(mean delta/gamma, shape delta^2)
*/
struct SyntheticSpec {
  ClassSpec targets;
  ClassSpec nontargets;
  std::uint64_t seed = 0;
};

LabeledScores generate_synthetic(const SyntheticSpec &spec);

/// Draws `count` values from one family, advancing `rng`.
std::vector<double> sample_family(const FamilyParams &params, std::size_t count,
                                  Xoshiro256 &rng);

/**
   spec.json:
     { "seed": 7,
       "targets":    {"count": 1000, "family": "gaussian", "mu": 2.0, "v": 1.0},
       "nontargets": {"count": 100000, "family": "nig",
                      "mu": 0.0, "delta": 1.0, "alpha": 2.0, "beta": 1.0} }
   Student-T uses "mu", "sigma", "nu".
*/
SyntheticSpec parse_synthetic_spec(const std::string &json_text);
SyntheticSpec load_synthetic_spec(const std::filesystem::path &path);
std::string synthetic_spec_to_json(const SyntheticSpec &spec);

}  // namespace llrcal

#endif  // LLRCAL_SCORES_HPP_
