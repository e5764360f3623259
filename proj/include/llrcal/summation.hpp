// include/llrcal/summation.hpp

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

#ifndef LLRCAL_SUMMATION_HPP_
#define LLRCAL_SUMMATION_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace llrcal {

inline constexpr std::size_t kSumBlock = 4096;

/// Worker threads used by blocked_sum; 0 means hardware concurrency.
void set_sum_threads(unsigned n);
unsigned sum_threads();

/**
   Sum of term(i) for i in [0, n): sequential within fixed blocks of
   kSumBlock indices, then pairwise over block partials.  The result depends
   only on n and the terms, never on the thread count.
*/
template <class T, class Term>
T blocked_sum(std::size_t n, const Term &term, const T &zero) {
  if (n == 0) return zero;
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<T> partial(nblocks, zero);
  auto run_blocks = [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      T acc = zero;
      const std::size_t end = std::min(n, (b + 1) * kSumBlock);
      for (std::size_t i = b * kSumBlock; i < end; ++i) acc += term(i);
      partial[b] = acc;
    }
  };
  const unsigned workers = std::min<std::size_t>(sum_threads(), nblocks);
  if (workers <= 1) {
    run_blocks(0, nblocks);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run_blocks, nblocks * w / workers, nblocks * (w + 1) / workers);
  }
  for (std::size_t width = 1; width < nblocks; width *= 2)
    for (std::size_t i = 0; i + width < nblocks; i += 2 * width) partial[i] += partial[i + width];
  return partial[0];
}

}  // namespace llrcal

#endif  // LLRCAL_SUMMATION_HPP_
