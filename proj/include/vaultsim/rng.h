// Copyright 2026 The Vaultsim Authors
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

#ifndef VAULTSIM_RNG_H_
#define VAULTSIM_RNG_H_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "vaultsim/bytes.h"

namespace vaultsim {

// Deterministic randomness source: the ChaCha20 keystream under a 256-bit key.
// Every primitive in the library draws from an injected instance; nothing
// reads ambient entropy.
class SeededRng {
 public:
  using result_type = uint64_t;

  explicit SeededRng(uint64_t seed);
  static SeededRng FromKey(const std::array<uint8_t, 32>& key);

  // Independent child stream named by `label`. Does not advance this stream.
  SeededRng Derive(std::string_view label) const;

  void Fill(std::span<uint8_t> out);
  Bytes Draw(size_t n);
  uint64_t NextU64();
  // Uniform in [0, bound); bound must be positive.
  uint64_t Uniform(uint64_t bound);
  double UniformDouble();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  explicit SeededRng(const std::array<uint8_t, 32>& key) : key_(key) {}
  void Refill();

  std::array<uint8_t, 32> key_{};
  std::array<uint8_t, 64> block_{};
  uint64_t block_counter_ = 0;
  size_t block_pos_ = 64;
};

}  // namespace vaultsim

#endif  // VAULTSIM_RNG_H_
