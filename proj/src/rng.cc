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

#include "vaultsim/rng.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>

namespace vaultsim {
namespace {

constexpr std::array<uint8_t, 8> kNonce = {'v', 's', '-', 'r', 'n', 'g', 0, 1};

const bool kSodiumReady = sodium_init() >= 0;

}  // namespace

SeededRng::SeededRng(uint64_t seed) {
  (void)kSodiumReady;
  uint8_t seed_bytes[8];
  for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<uint8_t>(seed >> (8 * i));
  crypto_hash_sha256(key_.data(), seed_bytes, sizeof(seed_bytes));
}

SeededRng SeededRng::FromKey(const std::array<uint8_t, 32>& key) {
  return SeededRng(key);
}

SeededRng SeededRng::Derive(std::string_view label) const {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, key_.data(), key_.size());
  crypto_hash_sha256_update(
      &st, reinterpret_cast<const unsigned char*>(label.data()), label.size());
  std::array<uint8_t, 32> child{};
  crypto_hash_sha256_final(&st, child.data());
  return SeededRng(child);
}

void SeededRng::Refill() {
  std::array<uint8_t, 64> zeros{};
  crypto_stream_chacha20_xor_ic(block_.data(), zeros.data(), zeros.size(),
                                kNonce.data(), block_counter_, key_.data());
  ++block_counter_;
  block_pos_ = 0;
}

void SeededRng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (block_pos_ == block_.size()) Refill();
    size_t take = std::min(out.size() - done, block_.size() - block_pos_);
    std::memcpy(out.data() + done, block_.data() + block_pos_, take);
    block_pos_ += take;
    done += take;
  }
}

Bytes SeededRng::Draw(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t SeededRng::NextU64() {
  uint8_t b[8];
  Fill(b);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{b[i]} << (8 * i);
  return v;
}

uint64_t SeededRng::Uniform(uint64_t bound) {
  // Rejection sampling keeps the result unbiased.
  const uint64_t limit = max() - max() % bound;
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

double SeededRng::UniformDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

}  // namespace vaultsim
