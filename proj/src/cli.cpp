// src/cli.cpp

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

#include "llrcal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "llrcal/calibrators.hpp"
#include "llrcal/evaluate.hpp"
#include "llrcal/model_io.hpp"
#include "llrcal/scores.hpp"

namespace llrcal::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods = {"gauss-shared", "gauss-sep", "t",
                                           "nig",          "logreg",    "pav"};

struct TrainArgs {
  std::string method;
  std::optional<double> alpha;
  std::optional<std::string> alpha_preset;
  std::optional<double> hessian_subsample;
  std::optional<std::uint64_t> seed;
  std::string scores;
  std::string out;
};

struct Args {
  std::string spec, out, scores, model, llrs;
  std::vector<std::string> llr_files;
  bool doddington = false;
  TrainArgs train;
};

void validate_train(const TrainArgs &t) {
  const bool takes_alpha = t.method == "gauss-shared" || t.method == "logreg";
  if (t.alpha && t.alpha_preset) throw UsageError("--alpha and --alpha-preset are exclusive");
  if ((t.alpha || t.alpha_preset) && !takes_alpha)
    throw UsageError("method '" + t.method + "' takes no alpha");
  if (t.alpha && !(*t.alpha > 0.0 && *t.alpha < 1.0))
    throw UsageError("--alpha must be in (0, 1)");
  if ((t.hessian_subsample || t.seed) && t.method != "nig")
    throw UsageError("--hessian-subsample and --seed apply to method 'nig' only");
  if (t.hessian_subsample && !(*t.hessian_subsample > 0.0 && *t.hessian_subsample <= 1.0))
    throw UsageError("--hessian-subsample must be in (0, 1]");
}

double resolve_alpha(const TrainArgs &t, const LabeledScores &scores) {
  if (t.alpha) return *t.alpha;
  const std::string preset = t.alpha_preset.value_or("data-prior");
  if (preset == "balanced") return 0.5;
  if (preset == "high") return 0.92;
  return static_cast<double>(scores.targets.size()) /
         static_cast<double>(scores.targets.size() + scores.nontargets.size());
}

template <class M>
CalibratorModel report(const Fitted<M> &fit, std::ostream &err) {
  for (const auto &w : fit.warnings) err << "warning: " << w << "\n";
  return fit.model;
}

CalibratorModel train_model(const TrainArgs &t, const LabeledScores &scores, std::ostream &err) {
  const std::string &m = t.method;
  if (m == "gauss-shared") return fit_gaussian_shared(scores, resolve_alpha(t, scores));
  if (m == "gauss-sep") return fit_gaussian_separate(scores);
  if (m == "t") return report(fit_t_ml(scores), err);
  if (m == "nig") {
    TrustRegionConfig cfg;
    cfg.hessian_subsample = t.hessian_subsample.value_or(1.0);
    cfg.seed = t.seed.value_or(0);
    return report(fit_nig_ml(scores, cfg), err);
  }
  if (m == "logreg") return report(fit_logreg(scores, resolve_alpha(t, scores)), err);
  return fit_pav(scores);
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream &out, const std::string &path) {
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<double> shared_grid(const std::vector<LlrSet> &sets, bool doddington) {
  std::vector<double> g = default_grid(sets.front(), false);
  if (!doddington) return g;
  double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto &s : sets) {
    const auto [l, h] = doddington_range(s);
    lo = std::max(lo, l);
    hi = std::min(hi, h);
  }
  std::erase_if(g, [&](double x) { return x < lo - 1e-9 || x > hi + 1e-9; });
  if (g.empty()) throw InvalidArgument("compare: the Doddington ranges do not overlap the grid");
  return g;
}

void run_compare(const Args &a) {
  std::vector<LlrSet> sets;
  std::vector<std::string> names;
  std::map<std::string, int> seen;
  for (const auto &f : a.llr_files) {
    sets.push_back(load_scores(f));
    std::string stem = std::filesystem::path(f).stem().string();
    if (int n = seen[stem]++; n > 0) stem += "_" + std::to_string(n + 1);
    names.push_back(stem);
  }
  const std::vector<double> grid = shared_grid(sets, a.doddington);
  std::vector<BayesErrorCurve> curves;
  for (const auto &s : sets) curves.push_back(bayes_error_curve(s, grid));

  std::ofstream out = open_out(a.out);
  out << "x,p";
  for (const auto &n : names) out << ",y_" << n << ",y_min_" << n;
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    put(curves[0].x[i]);
    out << ",";
    put(curves[0].p[i]);
    for (const auto &c : curves) {
      out << ",";
      put(c.y[i]);
      out << ",";
      put(c.y_min[i]);
    }
    out << "\n";
  }
  finish(out, a.out);
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Score-to-LLR calibration and Bayes error-rate evaluation", "llrcal"};
  app.require_subcommand(1);
  Args a;

  auto *synth = app.add_subcommand("synth", "generate synthetic labelled scores");
  synth->add_option("--spec", a.spec, "spec.json")->required();
  synth->add_option("--out", a.out, "output score file")->required();

  auto *train = app.add_subcommand("train", "fit a calibrator");
  train->add_option("--method", a.train.method, "calibrator")
      ->required()
      ->check(CLI::IsMember(kMethods));
  train->add_option("--alpha", a.train.alpha, "target weight in (0, 1)");
  train->add_option("--alpha-preset", a.train.alpha_preset, "data-prior, balanced or high")
      ->check(CLI::IsMember({"data-prior", "balanced", "high"}));
  train->add_option("--hessian-subsample", a.train.hessian_subsample,
                    "fraction of non-targets per Hessian (nig)");
  train->add_option("--seed", a.train.seed, "subsampling seed (nig)");
  train->add_option("--scores", a.train.scores, "training score file")->required();
  train->add_option("--out", a.train.out, "model.json")->required();

  auto *apply_cmd = app.add_subcommand("apply", "map scores to LLRs");
  apply_cmd->add_option("--model", a.model, "model.json")->required();
  apply_cmd->add_option("--scores", a.scores, "score file")->required();
  apply_cmd->add_option("--out", a.out, "output LLR file")->required();

  auto *eval = app.add_subcommand("eval", "normalized Bayes error-rate curve");
  eval->add_option("--llrs", a.llrs, "LLR file")->required();
  eval->add_option("--out", a.out, "curve.csv")->required();
  eval->add_flag("--doddington", a.doddington, "restrict the grid to the rule-of-30 range");

  auto *compare = app.add_subcommand("compare", "actual and minimum curves of several LLR files");
  compare->add_option("--llrs", a.llr_files, "LLR files")->required()->expected(1, -1);
  compare->add_option("--out", a.out, "table.csv")->required();
  compare->add_flag("--doddington", a.doddington, "restrict the grid to the shared range");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (train->parsed()) validate_train(a.train);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError &e) {
    err << "llrcal: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (synth->parsed()) {
      save_scores(generate_synthetic(load_synthetic_spec(a.spec)), a.out);
    } else if (train->parsed()) {
      const LabeledScores scores = load_scores(a.train.scores);
      save_model(train_model(a.train, scores, err), a.train.out);
    } else if (apply_cmd->parsed()) {
      const CalibratorModel model = load_model(a.model);
      const LabeledScores scores = load_scores(a.scores);
      save_scores(apply(model, scores), a.out);
    } else if (eval->parsed()) {
      const LlrSet llrs = load_scores(a.llrs);
      const BayesErrorCurve curve = bayes_error_curve(llrs, default_grid(llrs, a.doddington));
      std::ofstream f = open_out(a.out);
      write_curve_csv(f, curve);
      finish(f, a.out);
    } else if (compare->parsed()) {
      run_compare(a);
    }
  } catch (const std::exception &e) {
    err << "llrcal: error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace llrcal::cli
