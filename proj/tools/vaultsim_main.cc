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

// Command-line entry point: replays a scenario file and writes the transcript.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "spdlog/spdlog.h"
#include "vaultsim/driver.h"
#include "vaultsim/scenario.h"
#include "vaultsim/status.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 1;

void ConfigureLogging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("GV_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int Fail(const absl::Status& status, int code) {
  fmt::print(stderr, "vaultsim: {}\n", std::string(status.message()));
  return code;
}

int RunCommand(const std::string& file, const std::string& mode_text,
               const std::string& out_dir, std::optional<uint64_t> seed) {
  absl::StatusOr<vaultsim::RunMode> mode = vaultsim::ParseRunMode(mode_text);
  if (!mode.ok()) return Fail(mode.status(), kExitInvalid);
  absl::StatusOr<vaultsim::Scenario> scenario = vaultsim::LoadScenario(file);
  if (!scenario.ok()) {
    bool io = vaultsim::IsError(scenario.status(), vaultsim::ErrorKind::kIoError);
    return Fail(scenario.status(), io ? kExitIo : kExitInvalid);
  }
  if (seed) scenario->seed = *seed;

  absl::StatusOr<vaultsim::Transcript> transcript =
      vaultsim::RunScenario(*scenario, *mode);
  if (!transcript.ok()) return Fail(transcript.status(), kExitInvalid);

  if (absl::Status s = vaultsim::Emit(*transcript, out_dir); !s.ok()) {
    return Fail(s, kExitIo);
  }
  if (*mode == vaultsim::RunMode::kBoth) {
    if (const auto& d = transcript->divergence) {
      fmt::print("divergence at line {} (tick {}, {}): protocol={} ideal={}\n",
                 d->line, d->tick, d->op, d->protocol, d->ideal);
      return kExitDivergence;
    }
    fmt::print("equivalent\n");
  }
  fmt::print("{} events -> {}\n", transcript->events.size(), out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Replay exposure-notification analytics scenarios"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "replay a scenario file");
  std::string file;
  std::string mode = "protocol";
  std::string out = "out";
  std::optional<uint64_t> seed;
  run->add_option("file", file, "scenario (.jsonl)")->required();
  run->add_option("--mode", mode, "protocol | ideal | both")
      ->check(CLI::IsMember({"protocol", "ideal", "both"}));
  run->add_option("--out", out, "output directory");
  run->add_option("--seed", seed, "override the scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  return RunCommand(file, mode, out, seed);
}
