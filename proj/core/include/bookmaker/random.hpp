// Copyright 2026 The Bookmaker Authors.
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

#ifndef BOOKMAKER_RANDOM_HPP_
#define BOOKMAKER_RANDOM_HPP_

#include <cstdint>
#include <span>
#include <utility>

#include "bookmaker/contingency.hpp"

namespace bookmaker {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Stream key for run `run` of step `step` under a master seed.
std::uint64_t stream_id(std::uint64_t seed, std::uint64_t step, std::uint64_t run);

// Counter-based generator: the i-th output is mix64(key + (i + 1) * gamma).
// Output depends only on the key and the draw count, so it is identical
// across platforms, compilers and thread schedules.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static Rng substream(std::uint64_t seed, std::uint64_t step, std::uint64_t run) {
    return Rng(stream_id(seed, step, run));
  }

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64();

  // [0, 1) with 53 random bits.
  double uniform01();

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_int(std::uint64_t bound);

  // Standard normal via Box-Muller (one value per pair of uniforms).
  double normal();

  // Binomial(n, p) by inverting the CDF; the pmf is built outward from the
  // mode so cost grows with the standard deviation, not with n.
  Count binomial(Count n, double p);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_int(i)]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bookmaker

#endif  // BOOKMAKER_RANDOM_HPP_
