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

#include "vaultsim/heatmap.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "fmt/format.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kStateBuffers = "m";
constexpr std::string_view kStateIngested = "ingested";
constexpr std::string_view kStateRejected = "rejected";

bool IsZero(const DayVector& v) {
  return std::all_of(v.begin(), v.end(), [](int64_t c) { return c == 0; });
}

bool AllZero(const CircularBuffer<DayVector>& b) {
  return std::all_of(b.begin(), b.end(), IsZero);
}

bool ShapeMatches(const UserMatrix& u, const HeatmapParams& p) {
  if (u.rows.size() != static_cast<size_t>(p.days)) return false;
  for (const auto& row : u.rows) {
    if (row.size() != static_cast<size_t>(p.cells)) return false;
    for (int64_t c : row) {
      if (c < 0) return false;
    }
  }
  return true;
}

class HeatmapFunction final : public ListFunction {
 public:
  explicit HeatmapFunction(HeatmapParams params) : params_(params) {}

  absl::StatusOr<Output> Evaluate(const std::vector<Bytes>& inputs,
                                  const FunctionState& state,
                                  SeededRng& /*rand*/) const override {
    VS_ASSIGN_OR_RETURN(HeatmapState hs, DecodeHeatmapState(state, params_));
    std::vector<UserMatrix> fresh;
    size_t start = std::min<uint64_t>(hs.ingested, inputs.size());
    for (size_t i = start; i < inputs.size(); ++i) {
      absl::StatusOr<SecHistory> history = SecHistory::Parse(inputs[i]);
      absl::StatusOr<UserMatrix> matrix =
          history.ok() ? EncodeSecHistory(history->samples,
                                          history->upload_day(), params_)
                       : absl::StatusOr<UserMatrix>(history.status());
      // Undecodable uploads travel on as an empty (malformed) matrix so the
      // step's rejection policy applies to them too.
      fresh.push_back(matrix.ok() ? *std::move(matrix) : UserMatrix{});
    }
    VS_ASSIGN_OR_RETURN(HeatmapStepResult step,
                        HeatmapStep(fresh, hs, params_));
    hs.ingested = std::max<uint64_t>(hs.ingested, inputs.size());
    hs.rejected_total += step.rejected.size();
    return Output{EncodeHeatmapOutput(step.y), EncodeHeatmapState(hs)};
  }

 private:
  HeatmapParams params_;
};

}  // namespace

absl::Status HeatmapParams::Validate() const {
  if (cells < 1 || min_users < 1 || days < 1) {
    return MakeError(ErrorKind::kUnknownFunction,
                     "heatmap parameters must all be >= 1");
  }
  if (home_cell < 0 || home_cell >= cells) {
    return MakeError(ErrorKind::kUnknownFunction, "home cell out of range");
  }
  return absl::OkStatus();
}

FunctionSpec HeatmapParams::ToSpec() const {
  FunctionSpec spec;
  spec.name = "heatmap";
  spec.params = {{"cells", cells},
                 {"q", min_users},
                 {"days", days},
                 {"home", home_cell},
                 {"strict", strict ? 1 : 0}};
  return spec;
}

absl::StatusOr<HeatmapParams> HeatmapParams::FromSpec(const FunctionSpec& spec) {
  if (spec.name != "heatmap" || !spec.inner.empty()) {
    return MakeError(ErrorKind::kUnknownFunction, spec.ToString());
  }
  HeatmapParams p;
  for (const auto& [key, value] : spec.params) {
    if (key == "cells") {
      p.cells = value;
    } else if (key == "q") {
      p.min_users = value;
    } else if (key == "days") {
      p.days = value;
    } else if (key == "home") {
      p.home_cell = value;
    } else if (key == "strict") {
      p.strict = value != 0;
    } else {
      return MakeError(ErrorKind::kUnknownFunction,
                       fmt::format("unknown heatmap parameter {}", key));
    }
  }
  if (!spec.params.contains("cells") || !spec.params.contains("q") ||
      !spec.params.contains("days")) {
    return MakeError(ErrorKind::kUnknownFunction,
                     "heatmap needs cells, q and days");
  }
  VS_RETURN_IF_ERROR(p.Validate());
  return p;
}

bool HeatmapWellFormed(const UserMatrix& u) {
  return std::all_of(u.rows.begin(), u.rows.end(), [](const auto& row) {
    return std::accumulate(row.begin(), row.end(), int64_t{0}) == 24;
  });
}

absl::StatusOr<HeatmapStepResult> HeatmapStep(const std::vector<UserMatrix>& x,
                                              HeatmapState& state,
                                              const HeatmapParams& params) {
  HeatmapStepResult result;
  std::vector<const UserMatrix*> valid;
  for (size_t i = 0; i < x.size(); ++i) {
    if (ShapeMatches(x[i], params) && HeatmapWellFormed(x[i])) {
      valid.push_back(&x[i]);
    } else {
      result.rejected.push_back(i);
    }
  }
  if (params.strict && !result.rejected.empty()) {
    return MakeError(ErrorKind::kRejected,
        fmt::format("malformed matrix at index {}", result.rejected.front()));
  }

  const DayVector zero(params.cells, 0);
  for (auto& buffer : state.m) buffer.Append(zero);
  std::erase_if(state.m, AllZero);

  for (const UserMatrix* u : valid) {
    CircularBuffer<DayVector> buffer(params.days);
    for (const auto& row : u->rows) buffer.Append(row);
    state.m.push_back(std::move(buffer));
  }

  result.y = zero;
  if (state.m.size() >= static_cast<size_t>(params.min_users)) {
    for (const auto& buffer : state.m) {
      for (const DayVector& day : buffer) {
        for (int64_t c = 0; c < params.cells; ++c) result.y[c] += day[c];
      }
    }
  }
  return result;
}

absl::StatusOr<UserMatrix> EncodeSecHistory(
    const std::vector<SensitiveData>& samples, uint64_t reference_day,
    const HeatmapParams& params) {
  const int64_t first_day =
      static_cast<int64_t>(reference_day) - params.days + 1;
  std::map<std::pair<int64_t, uint32_t>, uint32_t> by_hour;
  for (const SensitiveData& s : samples) {
    if (s.location_cell >= params.cells) {
      return MakeError(ErrorKind::kEncodeFailed,
                       fmt::format("cell {} out of range", s.location_cell));
    }
    if (s.hour >= 24) {
      return MakeError(ErrorKind::kEncodeFailed,
                       fmt::format("hour {} out of range", s.hour));
    }
    const int64_t day = static_cast<int64_t>(s.day);
    if (day < first_day || day > static_cast<int64_t>(reference_day)) continue;
    by_hour[{day - first_day, s.hour}] = s.location_cell;
  }
  UserMatrix u;
  u.rows.assign(params.days, DayVector(params.cells, 0));
  for (const auto& [key, cell] : by_hour) u.rows[key.first][cell] += 1;
  for (auto& row : u.rows) {
    row[params.home_cell] +=
        24 - std::accumulate(row.begin(), row.end(), int64_t{0});
  }
  return u;
}

std::unique_ptr<ListFunction> MakeHeatmapFunction(const HeatmapParams& params) {
  return std::make_unique<HeatmapFunction>(params);
}

FunctionState EncodeHeatmapState(const HeatmapState& state) {
  FunctionState fs;
  std::vector<Bytes> buffers;
  for (const auto& buffer : state.m) {
    ByteWriter w;
    w.PutU32(static_cast<uint32_t>(buffer.size()));
    for (const DayVector& day : buffer) {
      w.PutU32(static_cast<uint32_t>(day.size()));
      for (int64_t c : day) w.PutI64(c);
    }
    buffers.push_back(std::move(w).bytes());
  }
  fs.SetList(kStateBuffers, buffers);
  fs.SetU64(kStateIngested, state.ingested);
  fs.SetU64(kStateRejected, state.rejected_total);
  return fs;
}

absl::StatusOr<HeatmapState> DecodeHeatmapState(const FunctionState& state,
                                                const HeatmapParams& params) {
  HeatmapState hs;
  if (state.empty()) return hs;
  for (const Bytes& raw : state.GetList(kStateBuffers)) {
    ByteReader r(raw);
    CircularBuffer<DayVector> buffer(params.days);
    VS_ASSIGN_OR_RETURN(uint32_t entries, r.ReadU32());
    for (uint32_t i = 0; i < entries; ++i) {
      VS_ASSIGN_OR_RETURN(uint32_t cells, r.ReadU32());
      DayVector day(cells);
      for (auto& c : day) {
        VS_ASSIGN_OR_RETURN(uint64_t v, r.ReadU64());
        c = static_cast<int64_t>(v);
      }
      buffer.Append(std::move(day));
    }
    VS_RETURN_IF_ERROR(r.ExpectDone());
    hs.m.push_back(std::move(buffer));
  }
  hs.ingested = state.GetU64(kStateIngested).value_or(0);
  hs.rejected_total = state.GetU64(kStateRejected).value_or(0);
  return hs;
}

Bytes EncodeHeatmapOutput(const DayVector& y) {
  ByteWriter w;
  w.PutU32(static_cast<uint32_t>(y.size()));
  for (int64_t c : y) w.PutI64(c);
  return std::move(w).bytes();
}

absl::StatusOr<DayVector> DecodeHeatmapOutput(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(uint32_t n, r.ReadU32());
  DayVector y(n);
  for (auto& c : y) {
    VS_ASSIGN_OR_RETURN(uint64_t v, r.ReadU64());
    c = static_cast<int64_t>(v);
  }
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return y;
}

}  // namespace vaultsim
