// Copyright 2026 The portsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded sampling helpers. std::mt19937_64 output is fixed by the standard
// but std::uniform_int_distribution and std::shuffle are not, so draws go
// through these functions to keep results identical across toolchains.

#ifndef PORTSCHED_RANDOM_HPP_
#define PORTSCHED_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace portsched {

using Rng = std::mt19937_64;

// Uniform in [0, n). n must be positive.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  // 2^64 - threshold is a multiple of n.
  const std::uint64_t threshold = (std::uint64_t{0} - n) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % n;
}

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

}  // namespace portsched

#endif  // PORTSCHED_RANDOM_HPP_
