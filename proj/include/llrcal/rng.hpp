// include/llrcal/rng.hpp

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

#ifndef LLRCAL_RNG_HPP_
#define LLRCAL_RNG_HPP_

#include <array>
#include <cstdint>

namespace llrcal {

/// SplitMix64 step. Used to expand a 64-bit seed into generator state and
/// as a stateless hash for index subsampling.
inline std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0xD1B54A32D192ED03ULL);
  return splitmix64(s);
}

/**
   xoshiro256** (Blackman & Vigna, 2018), state initialised by four
   successive SplitMix64 outputs of the seed.  All derived variates below
   are computed with documented transforms from next() so that the
   streams can be reproduced bit-for-bit in other languages, provided the
   same libm results for log/sqrt/cos.
*/
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto &w : s_) w = splitmix64(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return next(); }

  result_type next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

/// Standard normal by the cosine branch of Box-Muller (one variate per two
/// uniforms, no cached spare).
double standard_normal(Xoshiro256 &rng);

/// Gamma(shape, scale=1) by Marsaglia-Tsang; shape < 1 uses the
/// U^(1/shape) boost.
double standard_gamma(Xoshiro256 &rng, double shape);

/// Chi-square with nu degrees of freedom, as 2 * Gamma(nu/2).
double chi_square(Xoshiro256 &rng, double nu);

/// Inverse Gaussian with the given mean and shape, by the
/// Michael-Schucany-Haas transformation.
double inverse_gaussian(Xoshiro256 &rng, double mean, double shape);

}  // namespace llrcal

#endif  // LLRCAL_RNG_HPP_
