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

#include "bookmaker/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "int128.hpp"

namespace bookmaker {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_id(std::uint64_t seed, std::uint64_t step, std::uint64_t run) {
  std::uint64_t h = mix64(seed + kGamma);
  h = mix64(h ^ (step + 0x632be59bd9b4e019ULL));
  return mix64(h ^ (run + 0x85157af5ULL * kGamma));
}

std::uint64_t Rng::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw UsageError("uniform_int bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low region.
  UInt128 m = static_cast<UInt128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<UInt128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Count Rng::binomial(Count n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw UsageError(fmt::format("binomial parameters out of range: n={}, p={}", n, p));
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const Count mode = std::min<Count>(n, static_cast<Count>(std::floor((static_cast<double>(n) + 1) * p)));

  // Relative pmf values around the mode until they fall below 1e-18.
  constexpr double kCutoff = 1e-18;
  std::vector<double> left, right;  // left[i] = pmf(mode - 1 - i), right[i] = pmf(mode + 1 + i)
  const double odds = p / (1.0 - p);
  double w = 1.0;
  for (Count x = mode; x > 0; --x) {
    w *= static_cast<double>(x) / (static_cast<double>(n - x + 1) * odds);
    if (w < kCutoff) break;
    left.push_back(w);
  }
  w = 1.0;
  for (Count x = mode; x < n; ++x) {
    w *= static_cast<double>(n - x) * odds / static_cast<double>(x + 1);
    if (w < kCutoff) break;
    right.push_back(w);
  }

  double total = 1.0;
  for (double v : left) total += v;
  for (double v : right) total += v;

  const Count lo = mode - static_cast<Count>(left.size());
  double target = uniform01() * total;
  for (Count x = lo; x < mode; ++x) {
    target -= left[static_cast<std::size_t>(mode - 1 - x)];
    if (target < 0.0) return x;
  }
  target -= 1.0;
  if (target < 0.0) return mode;
  for (std::size_t i = 0; i < right.size(); ++i) {
    target -= right[i];
    if (target < 0.0) return mode + 1 + static_cast<Count>(i);
  }
  return mode + static_cast<Count>(right.size());
}

}  // namespace bookmaker
