// include/llrcal/model_io.hpp

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

#ifndef LLRCAL_MODEL_IO_HPP_
#define LLRCAL_MODEL_IO_HPP_

#include <filesystem>
#include <string>

#include "llrcal/calibrators.hpp"

namespace llrcal {

/**
   model.json: {"type": <model_type()>, "params": {...}} with params
     gauss-shared  mu_target, mu_nontarget, v
     gauss-sep     target_mu, target_v, nontarget_mu, nontarget_v
     t             target_{mu,sigma,nu}, nontarget_{mu,sigma,nu}
     nig           target_{mu,delta,alpha,beta}, nontarget_{mu,delta,alpha,beta}
     logreg        a, b
     pav           knot_scores, knot_llrs (arrays)
   Numbers are written in shortest round-trip form, so reading back is
   lossless.  Non-finite values cannot be stored.
*/
std::string model_to_json(const CalibratorModel &model);
CalibratorModel model_from_json(const std::string &text);

void save_model(const CalibratorModel &model, const std::filesystem::path &path);
CalibratorModel load_model(const std::filesystem::path &path);

}  // namespace llrcal

#endif  // LLRCAL_MODEL_IO_HPP_
