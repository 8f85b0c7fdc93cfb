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

#ifndef EMLANG_RANDOM_H_
#define EMLANG_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace emlang {

// All stochastic code takes an explicit Rng. The helpers below avoid the
// standard distributions so that streams are identical across standard
// library implementations.
using Rng = std::mt19937_64;

// Uniform double in the open interval (0, 1).
double UniformOpen01(Rng& rng);

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

// Standard Gumbel(0, 1) draw.
double SampleGumbel(Rng& rng);

// Standard normal draw (Box-Muller).
double SampleNormal(Rng& rng);

template <typename T>
void Shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = UniformIndex(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

// `count` distinct values from [0, n) excluding `excluded`, uniformly
// without replacement. Order of the result is random.
std::vector<int> SampleWithoutReplacement(int n, int count, int excluded,
                                          Rng& rng);

// Stable 64-bit FNV-1a. Used for seed derivation and config hashing.
std::uint64_t Fnv1a(std::string_view text,
                    std::uint64_t basis = 0xcbf29ce484222325ULL);

// Derives an independent seed from a base seed and a purpose tag.
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view purpose);

}  // namespace emlang

#endif  // EMLANG_RANDOM_H_
