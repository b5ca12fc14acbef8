// Copyright 2026 The lrisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LRISIM_RANDOM_HPP_
#define LRISIM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace lrisim {

using Rng = std::mt19937_64;

// Independent streams derived from one replication seed. Traffic and policy
// sampling never share a generator, so two schemes run with the same seed see
// identical arrivals.
enum class Stream : std::uint32_t {
  kPlacement = 1,
  kLearnTraffic = 2,
  kLearnPolicy = 3,
  kEvalTraffic = 4,
  kEvalPolicy = 5,
  kWarmup = 6,
};

inline Rng make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace lrisim

#endif  // LRISIM_RANDOM_HPP_
