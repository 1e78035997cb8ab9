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

#ifndef VAULTSIM_TESTS_SUPPORT_ORACLES_H_
#define VAULTSIM_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vaultsim/scenario.h"

namespace vaultsim::testing {

// Brute-force plaintext heatmap for every analyse event of `s`, computed
// straight from the scenario's hourly samples. nullopt marks a gated
// analyse.
struct OracleRow {
  size_t line = 0;
  uint64_t tick = 0;
  std::optional<std::vector<int64_t>> y;
  int64_t contributors = 0;   // buffers alive in the window
  int64_t full_buffers = 0;   // of those, buffers with all days intact
  int64_t live_days = 0;      // nonzero day rows across all buffers
};
std::vector<OracleRow> HeatmapOracle(const Scenario& s);

// Plaintext SEC encodings the honest app would upload, keyed by user.
std::map<std::string, std::vector<uint8_t>> HonestSecEncodings(const Scenario& s);

// Users u01..uN; the first `infected` users become infected and share
// exposure, everyone checks once.
Scenario CostScenario(int users, int infected, uint64_t seed);

// Random users, infections, consents and one analyse per day, for checking
// the heatmap path against HeatmapOracle.
Scenario RandomHeatmapScenario(uint64_t seed);

std::string ScenarioDir();

}  // namespace vaultsim::testing

#endif  // VAULTSIM_TESTS_SUPPORT_ORACLES_H_
