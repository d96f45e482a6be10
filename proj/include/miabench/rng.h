// Copyright 2026 The miabench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIABENCH_RNG_H_
#define MIABENCH_RNG_H_

#include <cstdint>
#include <random>

namespace miabench {

using Rng = std::mt19937_64;

// Stage tags used when deriving child seeds from a root seed.
enum class Stage : std::uint64_t {
  kData = 1,
  kTrain = 2,
  kInit = 3,
  kPerturb = 4,
  kPermutation = 5,
  kPool = 6,
  kLabelGate = 7,
  kShuffle = 8,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hierarchical seed derivation: the same (root, index) pair always yields
// the same child, and distinct pairs yield unrelated streams.
inline std::uint64_t DeriveSeed(std::uint64_t root, std::uint64_t index) {
  return SplitMix64(SplitMix64(root) ^ (index + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t DeriveSeed(std::uint64_t root, Stage stage,
                                std::uint64_t index = 0) {
  return DeriveSeed(DeriveSeed(root, static_cast<std::uint64_t>(stage)),
                    index);
}

}  // namespace miabench

#endif  // MIABENCH_RNG_H_
