// include/mdnn/random.hpp

// Copyright 2026  The mdnn Authors

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

#ifndef MDNN_RANDOM_HPP_
#define MDNN_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace mdnn {

using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent streams from (seed, stream).
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng MakeRng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(MixSeed(seed, stream));
}

// Fisher-Yates with an explicit index draw, so the permutation depends only
// on the generator and not on the standard library's shuffle.
template <typename T>
void Shuffle(std::vector<T> *values, Rng *rng) {
  for (std::size_t i = values->size(); i > 1; --i) {
    std::uint64_t j = (*rng)() % i;
    std::swap((*values)[i - 1], (*values)[j]);
  }
}

// Splits `total` into integer parts proportional to `weights` (Hamilton /
// largest-remainder rounding). Ties go to the lower index.
std::vector<int> LargestRemainder(const std::vector<int> &weights, int total);

}  // namespace mdnn

#endif  // MDNN_RANDOM_HPP_
