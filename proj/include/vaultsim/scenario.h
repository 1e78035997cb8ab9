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

#ifndef VAULTSIM_SCENARIO_H_
#define VAULTSIM_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/function.h"

namespace vaultsim {

inline constexpr int kScenarioVersion = 1;

struct ScenarioParams {
  int64_t days = 3;
  int64_t cells = 4;
  int64_t q = 2;
  int64_t home = 0;
  double d_max = 2.0;
  uint64_t tau = 24;
  std::string threshold = "majority";
  std::string error = "identity";
  double max_speed = 1e5;
  double symmetry_tolerance = 0.10;

  FunctionSpec HeatmapSpec() const;
};

enum class EventKind {
  kMove,
  kSampleSec,
  kInfect,
  kActivate,
  kRemove,
  kShare,
  kCheck,
  kRegister,
  kAccept,
  kAnalyse,
  kCorrupt,
  kFake,
  kLeak,
};

std::string_view EventKindName(EventKind kind);

// Events that write ground truth rather than call a service.
bool IsRealityEvent(EventKind kind);

struct ScenarioEvent {
  size_t line = 0;
  uint64_t tick = 0;
  EventKind kind = EventKind::kLeak;
  std::string user;
  std::string analyst;
  FunctionSpec alpha;
  std::map<std::string, double> dists;
  uint32_t cell = 0;
  bool infected = true;
  // fake events: "move-user" uses user + dists, "mark-distance" uses
  // user + peer + metres.
  std::string fake;
  std::string peer;
  double metres = 0;
};

struct Scenario {
  uint64_t seed = 0;
  ScenarioParams params;
  std::vector<std::string> users;
  std::vector<std::string> analysts;
  std::vector<ScenarioEvent> timeline;

  bool Declares(std::string_view pid) const;
};

absl::StatusOr<Scenario> ParseScenario(std::string_view text);
absl::StatusOr<Scenario> LoadScenario(const std::filesystem::path& path);
std::string SerializeScenario(const Scenario& scenario);

}  // namespace vaultsim

#endif  // VAULTSIM_SCENARIO_H_
