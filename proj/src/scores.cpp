// src/scores.cpp

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

#include "llrcal/scores.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string_view>

#include "llrcal/error.hpp"
#include "llrcal/rng.hpp"

namespace llrcal {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

}  // namespace

void check_scores(const LabeledScores &scores, const std::string &what) {
  if (scores.targets.empty()) throw InvalidArgument(what + ": no target scores");
  if (scores.nontargets.empty()) throw InvalidArgument(what + ": no non-target scores");
  for (double s : scores.targets)
    if (!std::isfinite(s)) throw InvalidArgument(what + ": non-finite target score");
  for (double s : scores.nontargets)
    if (!std::isfinite(s)) throw InvalidArgument(what + ": non-finite non-target score");
}

LabeledScores read_scores(std::istream &in) {
  LabeledScores out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    const auto split = rest.find_first_of(" \t");
    if (split == std::string_view::npos) throw ParseError("expected '<label> <score>'", lineno);
    const std::string_view label = rest.substr(0, split);
    const std::string_view value = trim(rest.substr(split));
    if (value.find_first_of(" \t") != std::string_view::npos)
      throw ParseError("trailing fields after score", lineno);

    double s = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw ParseError("cannot parse score '" + std::string(value) + "'", lineno);
    if (!std::isfinite(s)) throw ParseError("non-finite score", lineno);

    if (label == "tgt") {
      out.targets.push_back(s);
    } else if (label == "non") {
      out.nontargets.push_back(s);
    } else {
      throw ParseError("unknown label '" + std::string(label) + "' (expected tgt or non)", lineno);
    }
  }
  if (in.bad()) throw IoError("read failure");
  if (out.targets.empty() && out.nontargets.empty()) throw ParseError("no scores");
  if (out.targets.empty()) throw ParseError("empty class: no target scores");
  if (out.nontargets.empty()) throw ParseError("empty class: no non-target scores");
  return out;
}

LabeledScores load_scores(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_scores(in);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

std::string format_shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

void write_scores(std::ostream &out, const LabeledScores &scores) {
  for (double s : scores.targets) out << "tgt " << format_shortest(s) << '\n';
  for (double s : scores.nontargets) out << "non " << format_shortest(s) << '\n';
}

void save_scores(const LabeledScores &scores, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_scores(out, scores);
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

// ---- synthetic scores --------------------------------------------------------

std::vector<double> sample_family(const FamilyParams &params, std::size_t count,
                                  Xoshiro256 &rng) {
  std::vector<double> out;
  out.reserve(count);
  if (const auto *g = std::get_if<GaussianParams>(&params)) {
    validate(*g);
    const double sd = std::sqrt(g->v);
    for (std::size_t i = 0; i < count; ++i) out.push_back(g->mu + sd * standard_normal(rng));
  } else if (const auto *t = std::get_if<StudentTParams>(&params)) {
    validate(*t);
    for (std::size_t i = 0; i < count; ++i) {
      const double z = standard_normal(rng);
      const double g = chi_square(rng, t->nu);
      out.push_back(t->mu + t->sigma * z / std::sqrt(g / t->nu));
    }
  } else {
    const auto &n = std::get<NigParams>(params);
    validate(n);
    const double gamma = std::sqrt((n.alpha - n.beta) * (n.alpha + n.beta));
    const double ig_mean = n.delta / gamma;
    const double ig_shape = n.delta * n.delta;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = inverse_gaussian(rng, ig_mean, ig_shape);
      const double z = standard_normal(rng);
      out.push_back(n.mu + n.beta * v + std::sqrt(v) * z);
    }
  }
  return out;
}

LabeledScores generate_synthetic(const SyntheticSpec &spec) {
  Xoshiro256 rng(spec.seed);
  LabeledScores out;
  out.targets = sample_family(spec.targets.params, spec.targets.count, rng);
  out.nontargets = sample_family(spec.nontargets.params, spec.nontargets.count, rng);
  return out;
}

namespace {

double number_field(const json &j, const char *key, const std::string &where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseError(where + ": missing numeric field '" + key + "'");
  return j.at(key).get<double>();
}

ClassSpec parse_class(const json &j, const std::string &where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  ClassSpec c;
  if (!j.contains("count") || !j.at("count").is_number_unsigned())
    throw ParseError(where + ": 'count' must be a non-negative integer");
  c.count = j.at("count").get<std::size_t>();
  if (!j.contains("family") || !j.at("family").is_string())
    throw ParseError(where + ": missing 'family'");
  const auto family = j.at("family").get<std::string>();
  if (family == "gaussian") {
    GaussianParams p{number_field(j, "mu", where), number_field(j, "v", where)};
    validate(p);
    c.params = p;
  } else if (family == "student-t") {
    StudentTParams p{number_field(j, "mu", where), number_field(j, "sigma", where),
                     number_field(j, "nu", where)};
    validate(p);
    c.params = p;
  } else if (family == "nig") {
    NigParams p{number_field(j, "mu", where), number_field(j, "delta", where),
                number_field(j, "alpha", where), number_field(j, "beta", where)};
    validate(p);
    c.params = p;
  } else {
    throw ParseError(where + ": unknown family '" + family + "'");
  }
  return c;
}

json class_to_json(const ClassSpec &c) {
  json j;
  j["count"] = c.count;
  std::visit(
      [&](const auto &p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GaussianParams>) {
          j["family"] = "gaussian";
          j["mu"] = p.mu;
          j["v"] = p.v;
        } else if constexpr (std::is_same_v<P, StudentTParams>) {
          j["family"] = "student-t";
          j["mu"] = p.mu;
          j["sigma"] = p.sigma;
          j["nu"] = p.nu;
        } else {
          j["family"] = "nig";
          j["mu"] = p.mu;
          j["delta"] = p.delta;
          j["alpha"] = p.alpha;
          j["beta"] = p.beta;
        }
      },
      c.params);
  return j;
}

}  // namespace

SyntheticSpec parse_synthetic_spec(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec: expected a JSON object");
  SyntheticSpec spec;
  if (!j.contains("seed") || !j.at("seed").is_number_unsigned())
    throw ParseError("spec: 'seed' must be a non-negative integer");
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("targets")) throw ParseError("spec: missing 'targets'");
  if (!j.contains("nontargets")) throw ParseError("spec: missing 'nontargets'");
  try {
    spec.targets = parse_class(j.at("targets"), "spec.targets");
    spec.nontargets = parse_class(j.at("nontargets"), "spec.nontargets");
  } catch (const InvalidArgument &e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_synthetic_spec(ss.str());
}

std::string synthetic_spec_to_json(const SyntheticSpec &spec) {
  json j;
  j["seed"] = spec.seed;
  j["targets"] = class_to_json(spec.targets);
  j["nontargets"] = class_to_json(spec.nontargets);
  return j.dump(2);
}

}  // namespace llrcal
