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

#ifndef VAULTSIM_DRIVER_H_
#define VAULTSIM_DRIVER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/analytics.h"
#include "vaultsim/op_counter.h"
#include "vaultsim/scenario.h"
#include "vaultsim/threshold_fe.h"
#include "vaultsim/world.h"

namespace vaultsim {

enum class RunMode { kProtocol, kIdeal, kBoth };

absl::StatusOr<RunMode> ParseRunMode(std::string_view text);

struct EventRecord {
  size_t line = 0;
  uint64_t tick = 0;
  std::string actor;
  std::string op;
  std::string outcome;
};

struct HeatmapRow {
  uint64_t tick = 0;
  std::string analyst;
  std::vector<int64_t> y;
};

struct RiskRow {
  uint64_t tick = 0;
  std::string user;
  int64_t risk = 0;
};

struct OpCountRow {
  size_t line = 0;
  uint64_t tick = 0;
  std::string op;
  std::string actor;
  OpCounts delta;
};

struct Divergence {
  size_t line = 0;
  uint64_t tick = 0;
  std::string op;
  std::string protocol;
  std::string ideal;
};

struct Transcript {
  std::vector<EventRecord> events;
  std::vector<HeatmapRow> heatmap;
  std::vector<RiskRow> risks;
  std::vector<OpCountRow> opcounts;
  // Set only in kBoth mode, at the first mismatching observable.
  std::optional<Divergence> divergence;

  std::string EventsJsonl() const;
  std::string HeatmapCsv() const;
  std::string RisksCsv() const;
  std::string OpCountsCsv() const;
};

absl::StatusOr<ErrorFunction> ErrorFunctionByName(std::string_view name,
                                                  uint64_t seed);

// Replays a scenario against the real stack, the ideal stack, or both.
class Simulation {
 public:
  static absl::StatusOr<std::unique_ptr<Simulation>> Create(
      const Scenario& scenario, RunMode mode);

  // Replays the whole timeline. ValidationHalt and scenario faults surface
  // as errors naming the tick.
  absl::StatusOr<Transcript> Run();

  const Reality& reality() const { return reality_; }
  const Clock& clock() const { return clock_; }
  const OpCounter& counter() const { return counter_; }
  ThresholdFeProtocol* fe() { return fe_.get(); }
  AnalyticsProtocol* protocol() { return protocol_.get(); }
  IdealAnalytics* ideal() { return ideal_.get(); }

 private:
  Simulation(const Scenario& scenario, RunMode mode);

  absl::Status FeedReality(const std::vector<const ScenarioEvent*>& events);
  std::string Dispatch(AnalyticsService& service, const ScenarioEvent& ev,
                       Transcript* out);

  Scenario scenario_;
  RunMode mode_;
  Clock clock_;
  Reality reality_;
  OpCounter counter_;
  std::unique_ptr<ThresholdFeProtocol> fe_;
  std::unique_ptr<AnalyticsProtocol> protocol_;
  std::unique_ptr<IdealAnalytics> ideal_;
  std::map<std::string, bool> infected_;
};

absl::StatusOr<Transcript> RunScenario(const Scenario& scenario, RunMode mode);

// Writes events.jsonl, heatmap.csv, risks.csv and opcounts.csv.
absl::Status Emit(const Transcript& transcript,
                  const std::filesystem::path& out_dir);

}  // namespace vaultsim

#endif  // VAULTSIM_DRIVER_H_
