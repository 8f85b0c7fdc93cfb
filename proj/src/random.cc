// Copyright 2026 The emlang Authors
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

#include "emlang/random.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace emlang {

double UniformOpen01(Rng& rng) {
  // 53 random bits, shifted by half an ulp so that 0 is never produced.
  std::uint64_t bits = rng() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: n must be positive");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t value;
  do {
    value = rng();
  } while (value >= limit);
  return value % n;
}

double SampleGumbel(Rng& rng) { return -std::log(-std::log(UniformOpen01(rng))); }

double SampleNormal(Rng& rng) {
  double u1 = UniformOpen01(rng);
  double u2 = UniformOpen01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<int> SampleWithoutReplacement(int n, int count, int excluded,
                                          Rng& rng) {
  int pool = excluded >= 0 && excluded < n ? n - 1 : n;
  if (count < 0 || count > pool) {
    throw std::invalid_argument("SampleWithoutReplacement: cannot draw " +
                                std::to_string(count) + " of " +
                                std::to_string(pool));
  }
  // Floyd's algorithm over the pool [0, pool), then skip over `excluded`.
  std::vector<int> picked;
  picked.reserve(count);
  std::unordered_set<int> seen;
  seen.reserve(static_cast<std::size_t>(count) * 2);
  for (int j = pool - count; j < pool; ++j) {
    int t = static_cast<int>(UniformIndex(rng, static_cast<std::uint64_t>(j) + 1));
    int chosen = seen.contains(t) ? j : t;
    seen.insert(chosen);
    picked.push_back(chosen);
  }
  if (pool != n) {
    for (int& v : picked) {
      if (v >= excluded) ++v;
    }
  }
  Shuffle(picked, rng);
  return picked;
}

std::uint64_t Fnv1a(std::string_view text, std::uint64_t basis) {
  std::uint64_t hash = basis;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t DeriveSeed(std::uint64_t base, std::string_view purpose) {
  return Fnv1a(purpose, Fnv1a(std::to_string(base)));
}

}  // namespace emlang
