// Copyright 2026 The splp-cmcs Authors
//
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

#ifndef SPLP_RANDOM_H_
#define SPLP_RANDOM_H_

#include <cstdint>
#include <random>

namespace splp {

// Source of uniform integers used by the randomized components and the
// executor. Abstract so tests can inject scripted draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, bound). bound must be positive.
  virtual std::uint64_t below(std::uint64_t bound) = 0;

  // Uniform double in [0, 1).
  virtual double unit() = 0;

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
};

// Seedable 64-bit Mersenne Twister with unbiased bounded sampling
// (rejection on the top remainder), so streams are reproducible across
// standard library implementations.
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) override;
  double unit() override;

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent seeds from tuples.
std::uint64_t mix64(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

inline std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
  return derive_seed(derive_seed(a, b), c);
}

}  // namespace splp

#endif  // SPLP_RANDOM_H_
