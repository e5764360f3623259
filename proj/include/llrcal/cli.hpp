// include/llrcal/cli.hpp

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

#ifndef LLRCAL_CLI_HPP_
#define LLRCAL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace llrcal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/**
   llrcal synth   --spec spec.json --out scores.txt
   llrcal train   --method {gauss-shared|gauss-sep|t|nig|logreg|pav}
                  [--alpha A | --alpha-preset {data-prior|balanced|high}]
                  [--hessian-subsample R] [--seed S] --scores f --out model.json
   llrcal apply   --model model.json --scores f --out llrs.txt
   llrcal eval    --llrs f --out curve.csv [--doddington]
   llrcal compare --llrs f1 f2 ... --out table.csv [--doddington]

   Returns 0 on success, 2 on usage errors and 1 on runtime errors.  Help
   goes to `out`, every diagnostic to `err`.
*/
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace llrcal::cli

#endif  // LLRCAL_CLI_HPP_
