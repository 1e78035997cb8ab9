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

#include "vaultsim/sec.h"

#include "vaultsim/status.h"

namespace vaultsim {

Bytes SecHistory::Serialize() const {
  ByteWriter w;
  w.PutField("sec-v1");
  w.PutU64(upload_tick);
  w.PutU32(static_cast<uint32_t>(samples.size()));
  for (const SensitiveData& s : samples) {
    w.PutU64(s.day);
    w.PutU32(s.hour);
    w.PutU32(s.location_cell);
  }
  return std::move(w).bytes();
}

absl::StatusOr<SecHistory> SecHistory::Parse(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "sec-v1") return MakeError(ErrorKind::kMalformed, "not a SEC blob");
  SecHistory h;
  VS_ASSIGN_OR_RETURN(h.upload_tick, r.ReadU64());
  VS_ASSIGN_OR_RETURN(uint32_t count, r.ReadU32());
  for (uint32_t i = 0; i < count; ++i) {
    SensitiveData s;
    VS_ASSIGN_OR_RETURN(s.day, r.ReadU64());
    VS_ASSIGN_OR_RETURN(s.hour, r.ReadU32());
    VS_ASSIGN_OR_RETURN(s.location_cell, r.ReadU32());
    h.samples.push_back(s);
  }
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return h;
}

}  // namespace vaultsim
