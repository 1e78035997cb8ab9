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

#ifndef VAULTSIM_HEATMAP_H_
#define VAULTSIM_HEATMAP_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/function.h"
#include "vaultsim/sec.h"

namespace vaultsim {

struct HeatmapParams {
  int64_t cells = 1;      // number of map cells
  int64_t min_users = 1;  // contributors required before anything is released
  int64_t days = 1;       // window length in days
  int64_t home_cell = 0;  // where unsampled hours are attributed
  bool strict = false;    // abort the whole step on a malformed matrix

  absl::Status Validate() const;
  FunctionSpec ToSpec() const;
  static absl::StatusOr<HeatmapParams> FromSpec(const FunctionSpec& spec);
};

// days x cells hour counts. Row 0 is the oldest day, the last row the most
// recent one.
struct UserMatrix {
  std::vector<std::vector<int64_t>> rows;

  bool operator==(const UserMatrix&) const = default;
};

// Every row sums to exactly 24.
bool HeatmapWellFormed(const UserMatrix& u);

// Fixed-capacity FIFO; appending to a full buffer overwrites the oldest entry.
template <typename T>
class CircularBuffer {
 public:
  explicit CircularBuffer(size_t capacity) : capacity_(capacity) {}

  void Append(T item) {
    if (capacity_ == 0) return;
    if (items_.size() == capacity_) items_.pop_front();
    items_.push_back(std::move(item));
  }

  size_t capacity() const { return capacity_; }
  size_t size() const { return items_.size(); }
  bool full() const { return items_.size() == capacity_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const CircularBuffer&) const = default;

 private:
  size_t capacity_;
  std::deque<T> items_;
};

using DayVector = std::vector<int64_t>;

struct HeatmapState {
  std::vector<CircularBuffer<DayVector>> m;
  // Number of list entries already aggregated; see HeatmapFunction.
  uint64_t ingested = 0;
  uint64_t rejected_total = 0;

  bool operator==(const HeatmapState&) const = default;
};

struct HeatmapStepResult {
  DayVector y;
  std::vector<size_t> rejected;  // indices into the step input
};

// One daily step. All matrices are validated before any mutation: existing
// buffers then age by one day (dropping those that become all-zero), every
// valid matrix becomes a new buffer, and the cell totals are released only if
// at least min_users buffers remain. In strict mode a malformed matrix fails
// the step and leaves `state` untouched.
absl::StatusOr<HeatmapStepResult> HeatmapStep(const std::vector<UserMatrix>& x,
                                              HeatmapState& state,
                                              const HeatmapParams& params);

// Hour counts per (day, cell) for the `params.days` days ending at
// `reference_day`. Later samples for an already-seen (day, hour) replace
// earlier ones; samples outside the window are ignored; unsampled hours go to
// the home cell.
absl::StatusOr<UserMatrix> EncodeSecHistory(
    const std::vector<SensitiveData>& samples, uint64_t reference_day,
    const HeatmapParams& params);

// The registered "heatmap" list function. Its input list is the cumulative
// upload list (in upload order); entries beyond the `ingested` watermark are
// decoded as SecHistory, encoded with EncodeSecHistory relative to their
// upload day, and fed to one HeatmapStep.
std::unique_ptr<ListFunction> MakeHeatmapFunction(const HeatmapParams& params);

FunctionState EncodeHeatmapState(const HeatmapState& state);
absl::StatusOr<HeatmapState> DecodeHeatmapState(const FunctionState& state,
                                                const HeatmapParams& params);

Bytes EncodeHeatmapOutput(const DayVector& y);
absl::StatusOr<DayVector> DecodeHeatmapOutput(ByteView bytes);

}  // namespace vaultsim

#endif  // VAULTSIM_HEATMAP_H_
