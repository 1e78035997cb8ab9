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

#ifndef VAULTSIM_SEC_H_
#define VAULTSIM_SEC_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"

namespace vaultsim {

// One tick is one hour of simulated time.
inline constexpr uint64_t kTicksPerDay = 24;

// One hourly location sample: the sensitive field of a reality record.
struct SensitiveData {
  uint64_t day = 0;
  uint32_t hour = 0;
  uint32_t location_cell = 0;

  bool operator==(const SensitiveData&) const = default;
};

// A user's accumulated sensitive samples as of `upload_tick`. This is the
// plaintext an exposed user encrypts and the input the analysis functions
// decode.
struct SecHistory {
  uint64_t upload_tick = 0;
  std::vector<SensitiveData> samples;

  uint64_t upload_day() const { return upload_tick / kTicksPerDay; }

  Bytes Serialize() const;
  static absl::StatusOr<SecHistory> Parse(ByteView bytes);
  bool operator==(const SecHistory&) const = default;
};

}  // namespace vaultsim

#endif  // VAULTSIM_SEC_H_
