// src/model_io.cpp

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

#include "llrcal/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace llrcal {

using nlohmann::json;

namespace {

double finite(double x, const char *name) {
  if (!std::isfinite(x))
    throw InvalidArgument(std::string("model: parameter '") + name + "' is not finite");
  return x;
}

struct ToJson {
  json &p;
  void put(const char *k, double x) const { p[k] = finite(x, k); }
  void put_gauss(const std::string &pre, const GaussianParams &g) const {
    put((pre + "_mu").c_str(), g.mu);
    put((pre + "_v").c_str(), g.v);
  }
  void operator()(const GaussianSharedModel &m) const {
    put("mu_target", m.mu_target);
    put("mu_nontarget", m.mu_nontarget);
    put("v", m.v);
  }
  void operator()(const GaussianSeparateModel &m) const {
    put_gauss("target", m.target);
    put_gauss("nontarget", m.nontarget);
  }
  void operator()(const StudentTModel &m) const {
    for (const auto &[pre, t] : {std::pair{std::string("target"), m.target},
                                 std::pair{std::string("nontarget"), m.nontarget}}) {
      put((pre + "_mu").c_str(), t.mu);
      put((pre + "_sigma").c_str(), t.sigma);
      put((pre + "_nu").c_str(), t.nu);
    }
  }
  void operator()(const NigModel &m) const {
    for (const auto &[pre, t] : {std::pair{std::string("target"), m.target},
                                 std::pair{std::string("nontarget"), m.nontarget}}) {
      put((pre + "_mu").c_str(), t.mu);
      put((pre + "_delta").c_str(), t.delta);
      put((pre + "_alpha").c_str(), t.alpha);
      put((pre + "_beta").c_str(), t.beta);
    }
  }
  void operator()(const LogRegModel &m) const {
    put("a", m.a);
    put("b", m.b);
  }
  void operator()(const PavModel &m) const {
    for (double x : m.knot_scores) finite(x, "knot_scores");
    for (double x : m.knot_llrs) finite(x, "knot_llrs");
    p["knot_scores"] = m.knot_scores;
    p["knot_llrs"] = m.knot_llrs;
  }
};

double get(const json &p, const std::string &key) {
  const auto it = p.find(key);
  if (it == p.end() || !it->is_number())
    throw ParseError("model: missing or non-numeric parameter '" + key + "'");
  return it->get<double>();
}

std::vector<double> get_array(const json &p, const std::string &key) {
  const auto it = p.find(key);
  if (it == p.end() || !it->is_array()) throw ParseError("model: missing array '" + key + "'");
  std::vector<double> out;
  for (const auto &e : *it) {
    if (!e.is_number()) throw ParseError("model: non-numeric entry in '" + key + "'");
    out.push_back(e.get<double>());
  }
  return out;
}

void check_pav(const PavModel &m) {
  if (m.knot_scores.empty() || m.knot_scores.size() != m.knot_llrs.size())
    throw ParseError("model: pav knot arrays must be non-empty and of equal length");
  for (std::size_t i = 1; i < m.knot_scores.size(); ++i) {
    if (!(m.knot_scores[i] > m.knot_scores[i - 1]))
      throw ParseError("model: pav knot scores must be strictly increasing");
    if (m.knot_llrs[i] < m.knot_llrs[i - 1])
      throw ParseError("model: pav knot llrs must be non-decreasing");
  }
}

template <class P>
P checked(const P &p) {
  try {
    validate(p);
  } catch (const InvalidArgument &e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  return p;
}

}  // namespace

std::string model_to_json(const CalibratorModel &model) {
  json params = json::object();
  std::visit(ToJson{params}, model);
  json j;
  j["type"] = std::string(model_type(model));
  j["params"] = params;
  return j.dump(2) + "\n";
}

CalibratorModel model_from_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string() || !j.contains("params") ||
      !j["params"].is_object())
    throw ParseError("model: expected an object with \"type\" and \"params\"");
  const std::string type = j["type"].get<std::string>();
  const json &p = j["params"];
  if (type == "gauss-shared") {
    GaussianSharedModel m{get(p, "mu_target"), get(p, "mu_nontarget"), get(p, "v")};
    if (!(m.v > 0.0)) throw ParseError("model: variance must be positive");
    return m;
  }
  if (type == "gauss-sep")
    return GaussianSeparateModel{checked(GaussianParams{get(p, "target_mu"), get(p, "target_v")}),
                                 checked(GaussianParams{get(p, "nontarget_mu"),
                                                        get(p, "nontarget_v")})};
  if (type == "t") {
    auto t = [&](const std::string &pre) {
      return checked(StudentTParams{get(p, pre + "_mu"), get(p, pre + "_sigma"),
                                    get(p, pre + "_nu")});
    };
    return StudentTModel{t("target"), t("nontarget")};
  }
  if (type == "nig") {
    auto n = [&](const std::string &pre) {
      return checked(NigParams{get(p, pre + "_mu"), get(p, pre + "_delta"),
                               get(p, pre + "_alpha"), get(p, pre + "_beta")});
    };
    return NigModel{n("target"), n("nontarget")};
  }
  if (type == "logreg") return LogRegModel{get(p, "a"), get(p, "b")};
  if (type == "pav") {
    PavModel m{get_array(p, "knot_scores"), get_array(p, "knot_llrs")};
    check_pav(m);
    return m;
  }
  throw ParseError("model: unknown type '" + type + "'");
}

void save_model(const CalibratorModel &model, const std::filesystem::path &path) {
  const std::string text = model_to_json(model);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

CalibratorModel load_model(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace llrcal
