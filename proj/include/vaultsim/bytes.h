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

#ifndef VAULTSIM_BYTES_H_
#define VAULTSIM_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace vaultsim {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

Bytes ToBytes(std::string_view s);
std::string ToString(ByteView b);
std::string ToHex(ByteView b);

// True iff `needle` occurs as a contiguous run inside `haystack`. An empty
// needle never matches.
bool ContainsBytes(ByteView haystack, ByteView needle);

// Little-endian, length-prefixed encoder. Every variable-size field is written
// as a 32-bit length followed by its bytes.
class ByteWriter {
 public:
  ByteWriter& PutU32(uint32_t v);
  ByteWriter& PutU64(uint64_t v);
  ByteWriter& PutI64(int64_t v) { return PutU64(static_cast<uint64_t>(v)); }
  ByteWriter& PutField(ByteView field);
  ByteWriter& PutField(std::string_view field);
  ByteWriter& PutU64Field(uint64_t v);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  absl::StatusOr<uint32_t> ReadU32();
  absl::StatusOr<uint64_t> ReadU64();
  absl::StatusOr<Bytes> ReadField();
  absl::StatusOr<std::string> ReadStringField();
  absl::StatusOr<uint64_t> ReadU64Field();

  bool done() const { return pos_ == in_.size(); }
  // Fails unless the whole input has been consumed.
  absl::Status ExpectDone() const;

 private:
  ByteView in_;
  size_t pos_ = 0;
};

// Tagged message: the tag is the first length-prefixed field.
template <typename... Fields>
Bytes EncodeTagged(std::string_view tag, const Fields&... fields) {
  ByteWriter w;
  w.PutField(tag);
  (w.PutField(fields), ...);
  return std::move(w).bytes();
}

}  // namespace vaultsim

#endif  // VAULTSIM_BYTES_H_
