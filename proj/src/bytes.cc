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

#include "vaultsim/bytes.h"

#include <algorithm>

#include "vaultsim/status.h"

namespace vaultsim {

Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string ToString(ByteView b) { return std::string(b.begin(), b.end()); }

std::string ToHex(ByteView b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (uint8_t c : b) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

bool ContainsBytes(ByteView haystack, ByteView needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

ByteWriter& ByteWriter::PutU32(uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::PutU64(uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::PutField(ByteView field) {
  PutU32(static_cast<uint32_t>(field.size()));
  out_.insert(out_.end(), field.begin(), field.end());
  return *this;
}

ByteWriter& ByteWriter::PutField(std::string_view field) {
  return PutField(ByteView(reinterpret_cast<const uint8_t*>(field.data()),
                           field.size()));
}

ByteWriter& ByteWriter::PutU64Field(uint64_t v) {
  ByteWriter inner;
  inner.PutU64(v);
  return PutField(inner.bytes());
}

absl::StatusOr<uint32_t> ByteReader::ReadU32() {
  if (in_.size() - pos_ < 4) {
    return MakeError(ErrorKind::kMalformed, "truncated u32");
  }
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t{in_[pos_ + i]} << (8 * i);
  pos_ += 4;
  return v;
}

absl::StatusOr<uint64_t> ByteReader::ReadU64() {
  if (in_.size() - pos_ < 8) {
    return MakeError(ErrorKind::kMalformed, "truncated u64");
  }
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{in_[pos_ + i]} << (8 * i);
  pos_ += 8;
  return v;
}

absl::StatusOr<Bytes> ByteReader::ReadField() {
  VS_ASSIGN_OR_RETURN(uint32_t len, ReadU32());
  if (in_.size() - pos_ < len) {
    return MakeError(ErrorKind::kMalformed, "field length exceeds input");
  }
  Bytes out(in_.begin() + pos_, in_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

absl::StatusOr<std::string> ByteReader::ReadStringField() {
  VS_ASSIGN_OR_RETURN(Bytes b, ReadField());
  return ToString(b);
}

absl::StatusOr<uint64_t> ByteReader::ReadU64Field() {
  VS_ASSIGN_OR_RETURN(Bytes b, ReadField());
  ByteReader inner(b);
  VS_ASSIGN_OR_RETURN(uint64_t v, inner.ReadU64());
  VS_RETURN_IF_ERROR(inner.ExpectDone());
  return v;
}

absl::Status ByteReader::ExpectDone() const {
  if (!done()) return MakeError(ErrorKind::kMalformed, "trailing bytes");
  return absl::OkStatus();
}

}  // namespace vaultsim
