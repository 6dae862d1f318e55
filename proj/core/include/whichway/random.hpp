// Copyright 2026 The whichway Authors
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

#pragma once

#include <cstdint>

namespace whichway {

/// Counter-based generator: the i-th output is the SplitMix64 finalizer
/// applied to seed + (i + 1) * 0x9E3779B97F4A7C15. Any draw can be computed
/// independently of the others, so shards never share state.
class CounterRng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-counter";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;
  /// Generator for shard i: seed XOR i.
  CounterRng shard(std::uint64_t i) const { return CounterRng(seed_ ^ i); }

 private:
  std::uint64_t seed_;
};

}  // namespace whichway
