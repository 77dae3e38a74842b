// Copyright 2026 The screenparse Authors.
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

#ifndef SCREENPARSE_RANDOM_H_
#define SCREENPARSE_RANDOM_H_

#include <cstdint>
#include <string_view>

namespace screenparse {

// 64-bit FNV-1a. Used for page-id hashing, shard assignment and content
// hashes; the constants are part of the on-disk contract.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Per-page seed: Mix64(global_seed ^ Fnv1a64(page_id)).
std::uint64_t DerivePageSeed(std::uint64_t global_seed,
                             std::string_view page_id);

// xoshiro256** seeded through SplitMix64. All sampling helpers are written
// against raw 64-bit draws so streams are identical on every platform
// (the <random> distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t Next();

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t Uniform(std::uint64_t n);

  // Uniform integer in [lo, hi].
  std::int64_t UniformInRange(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformDouble();

  // Geometric on {1, 2, ...} with the given mean (>= 1): the number of
  // trials up to and including the first success at p = 1 / mean.
  std::int64_t Geometric(double mean);

 private:
  std::uint64_t state_[4];
};

}  // namespace screenparse

#endif  // SCREENPARSE_RANDOM_H_
