// Copyright 2026 The advsel Authors
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

#ifndef ADVSEL_RNG_HPP_
#define ADVSEL_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace advsel {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const RngSeed&) const = default;
};

// Sub-stream reserved for building instances/adversaries in the harness, so
// trial streams 0..trials-1 never collide with it.
inline constexpr std::uint64_t kScenarioStream = 0xA5A5'0000'0000'0001ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic generator keyed by (seed, stream). The engine and every
// derived distribution below are specified bit-for-bit, so transcripts are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(RngSeed s)
      : engine_(splitmix64(splitmix64(s.seed) ^ splitmix64(s.stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace advsel

#endif  // ADVSEL_RNG_HPP_
