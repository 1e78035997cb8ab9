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

#include "vaultsim/scenario.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "fmt/format.h"
#include "json.hpp"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<EventKind, std::string_view>, 13> kEventNames = {{
    {EventKind::kMove, "move"},
    {EventKind::kSampleSec, "sample_sec"},
    {EventKind::kInfect, "infect"},
    {EventKind::kActivate, "activate"},
    {EventKind::kRemove, "remove"},
    {EventKind::kShare, "share"},
    {EventKind::kCheck, "check"},
    {EventKind::kRegister, "register"},
    {EventKind::kAccept, "accept"},
    {EventKind::kAnalyse, "analyse"},
    {EventKind::kCorrupt, "corrupt"},
    {EventKind::kFake, "fake"},
    {EventKind::kLeak, "leak"},
}};

absl::Status ParseErr(size_t line, std::string_view field, std::string_view what) {
  return MakeError(ErrorKind::kParseError,
                   fmt::format("line {}: field '{}': {}", line, field, what));
}

absl::Status Invalid(size_t line, std::string_view what) {
  return MakeError(ErrorKind::kInvalidScenario,
                   fmt::format("line {}: {}", line, what));
}

// Reads an optional member, leaving `out` untouched when absent.
template <typename T>
absl::Status Read(const json& obj, size_t line, const char* field, T& out) {
  auto it = obj.find(field);
  if (it == obj.end()) return absl::OkStatus();
  try {
    out = it->template get<T>();
  } catch (const json::exception& e) {
    return ParseErr(line, field, e.what());
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status Require(const json& obj, size_t line, const char* field, T& out) {
  if (!obj.contains(field)) return ParseErr(line, field, "missing");
  return Read(obj, line, field, out);
}

absl::Status ReadAlpha(const json& obj, size_t line, const ScenarioParams& p,
                       FunctionSpec& out) {
  std::string text;
  VS_RETURN_IF_ERROR(Read(obj, line, "alpha", text));
  if (text.empty()) {
    out = p.HeatmapSpec();
    return absl::OkStatus();
  }
  absl::StatusOr<FunctionSpec> spec = FunctionSpec::Parse(text);
  if (!spec.ok()) return ParseErr(line, "alpha", std::string(spec.status().message()));
  out = *std::move(spec);
  return absl::OkStatus();
}

absl::Status ParseHeader(const json& h, Scenario& s) {
  int version = 0;
  VS_RETURN_IF_ERROR(Require(h, 1, "v", version));
  if (version != kScenarioVersion) {
    return ParseErr(1, "v", fmt::format("unsupported version {}", version));
  }
  VS_RETURN_IF_ERROR(Read(h, 1, "seed", s.seed));
  VS_RETURN_IF_ERROR(Require(h, 1, "users", s.users));
  VS_RETURN_IF_ERROR(Read(h, 1, "analysts", s.analysts));
  if (h.contains("params")) {
    const json& p = h["params"];
    if (!p.is_object()) return ParseErr(1, "params", "expected an object");
    ScenarioParams& o = s.params;
    VS_RETURN_IF_ERROR(Read(p, 1, "days", o.days));
    VS_RETURN_IF_ERROR(Read(p, 1, "cells", o.cells));
    VS_RETURN_IF_ERROR(Read(p, 1, "q", o.q));
    VS_RETURN_IF_ERROR(Read(p, 1, "home", o.home));
    VS_RETURN_IF_ERROR(Read(p, 1, "d_max", o.d_max));
    VS_RETURN_IF_ERROR(Read(p, 1, "tau", o.tau));
    VS_RETURN_IF_ERROR(Read(p, 1, "K", o.threshold));
    VS_RETURN_IF_ERROR(Read(p, 1, "error", o.error));
    VS_RETURN_IF_ERROR(Read(p, 1, "max_speed", o.max_speed));
    VS_RETURN_IF_ERROR(Read(p, 1, "symmetry_tolerance", o.symmetry_tolerance));
  }
  std::vector<std::string> all = s.users;
  all.insert(all.end(), s.analysts.begin(), s.analysts.end());
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end()) return Invalid(1, fmt::format("pid '{}' declared twice", *dup));
  for (const std::string& pid : all) {
    if (pid.empty()) return Invalid(1, "empty pid");
  }
  return absl::OkStatus();
}

absl::Status CheckPid(const Scenario& s, size_t line, std::string_view field,
                      std::string_view pid) {
  if (pid.empty()) return ParseErr(line, field, "missing");
  if (!s.Declares(pid)) {
    return Invalid(line, fmt::format("undeclared pid '{}' in field '{}'", pid, field));
  }
  return absl::OkStatus();
}

absl::StatusOr<ScenarioEvent> ParseEvent(const json& e, size_t line,
                                         const Scenario& s) {
  ScenarioEvent ev;
  ev.line = line;
  std::string op;
  VS_RETURN_IF_ERROR(Require(e, line, "tick", ev.tick));
  VS_RETURN_IF_ERROR(Require(e, line, "op", op));
  auto it = std::find_if(kEventNames.begin(), kEventNames.end(),
                         [&](const auto& p) { return p.second == op; });
  if (it == kEventNames.end()) {
    return ParseErr(line, "op", fmt::format("unknown event '{}'", op));
  }
  ev.kind = it->first;
  VS_RETURN_IF_ERROR(Read(e, line, "user", ev.user));
  VS_RETURN_IF_ERROR(Read(e, line, "analyst", ev.analyst));

  switch (ev.kind) {
    case EventKind::kMove:
      VS_RETURN_IF_ERROR(Require(e, line, "dists", ev.dists));
      break;
    case EventKind::kSampleSec: {
      int64_t cell = -1;
      VS_RETURN_IF_ERROR(Require(e, line, "cell", cell));
      if (cell < 0 || cell > UINT32_MAX) return ParseErr(line, "cell", "out of range");
      ev.cell = static_cast<uint32_t>(cell);
      break;
    }
    case EventKind::kInfect:
      VS_RETURN_IF_ERROR(Read(e, line, "infected", ev.infected));
      break;
    case EventKind::kRegister:
    case EventKind::kAnalyse:
    case EventKind::kAccept:
      VS_RETURN_IF_ERROR(ReadAlpha(e, line, s.params, ev.alpha));
      break;
    case EventKind::kFake:
      VS_RETURN_IF_ERROR(Require(e, line, "fake", ev.fake));
      if (ev.fake == "move-user") {
        VS_RETURN_IF_ERROR(Require(e, line, "dists", ev.dists));
      } else if (ev.fake == "mark-distance") {
        VS_RETURN_IF_ERROR(Require(e, line, "peer", ev.peer));
        VS_RETURN_IF_ERROR(Require(e, line, "metres", ev.metres));
        VS_RETURN_IF_ERROR(CheckPid(s, line, "peer", ev.peer));
      }
      break;
    default:
      break;
  }

  switch (ev.kind) {
    case EventKind::kLeak:
      break;
    case EventKind::kRegister:
    case EventKind::kAnalyse:
      VS_RETURN_IF_ERROR(CheckPid(s, line, "analyst", ev.analyst));
      break;
    case EventKind::kAccept:
      VS_RETURN_IF_ERROR(CheckPid(s, line, "user", ev.user));
      VS_RETURN_IF_ERROR(CheckPid(s, line, "analyst", ev.analyst));
      break;
    default:
      VS_RETURN_IF_ERROR(CheckPid(s, line, "user", ev.user));
      break;
  }
  for (const auto& [peer, d] : ev.dists) {
    VS_RETURN_IF_ERROR(CheckPid(s, line, "dists", peer));
  }
  return ev;
}

json AlphaJson(const FunctionSpec& alpha, const ScenarioParams& p) {
  return alpha == p.HeatmapSpec() ? json() : json(alpha.ToString());
}

}  // namespace

FunctionSpec ScenarioParams::HeatmapSpec() const {
  FunctionSpec spec;
  spec.name = "heatmap";
  spec.params = {{"cells", cells}, {"q", q}, {"days", days}, {"home", home},
                 {"strict", 0}};
  return spec;
}

std::string_view EventKindName(EventKind kind) {
  for (const auto& [k, name] : kEventNames) {
    if (k == kind) return name;
  }
  return "?";
}

bool IsRealityEvent(EventKind kind) {
  return kind == EventKind::kMove || kind == EventKind::kSampleSec ||
         kind == EventKind::kInfect;
}

bool Scenario::Declares(std::string_view pid) const {
  return std::find(users.begin(), users.end(), pid) != users.end() ||
         std::find(analysts.begin(), analysts.end(), pid) != analysts.end();
}

absl::StatusOr<Scenario> ParseScenario(std::string_view text) {
  Scenario s;
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      return MakeError(ErrorKind::kParseError,
                       fmt::format("line {}: {}", line, e.what()));
    }
    if (!obj.is_object()) return ParseErr(line, "", "expected a JSON object");
    if (!have_header) {
      if (line != 1) return ParseErr(line, "v", "header must be the first line");
      VS_RETURN_IF_ERROR(ParseHeader(obj, s));
      have_header = true;
      continue;
    }
    VS_ASSIGN_OR_RETURN(ScenarioEvent ev, ParseEvent(obj, line, s));
    if (!s.timeline.empty() && ev.tick < s.timeline.back().tick) {
      return Invalid(line, fmt::format("tick regression {} after {}", ev.tick,
                                       s.timeline.back().tick));
    }
    s.timeline.push_back(std::move(ev));
  }
  if (!have_header) return ParseErr(1, "v", "missing header line");
  return s;
}

absl::StatusOr<Scenario> LoadScenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    return MakeError(ErrorKind::kIoError,
                     fmt::format("cannot read {}", path.string()));
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  return ParseScenario(buf.str());
}

std::string SerializeScenario(const Scenario& s) {
  const ScenarioParams& p = s.params;
  json header = {
      {"v", kScenarioVersion},
      {"seed", s.seed},
      {"params",
       {{"days", p.days}, {"cells", p.cells}, {"q", p.q}, {"home", p.home},
        {"d_max", p.d_max}, {"tau", p.tau}, {"K", p.threshold},
        {"error", p.error}, {"max_speed", p.max_speed},
        {"symmetry_tolerance", p.symmetry_tolerance}}},
      {"users", s.users},
  };
  if (!s.analysts.empty()) header["analysts"] = s.analysts;
  std::string out = header.dump() + "\n";
  for (const ScenarioEvent& ev : s.timeline) {
    json e = {{"tick", ev.tick}, {"op", EventKindName(ev.kind)}};
    if (!ev.user.empty()) e["user"] = ev.user;
    if (!ev.analyst.empty()) e["analyst"] = ev.analyst;
    switch (ev.kind) {
      case EventKind::kMove:
        e["dists"] = ev.dists;
        break;
      case EventKind::kSampleSec:
        e["cell"] = ev.cell;
        break;
      case EventKind::kInfect:
        if (!ev.infected) e["infected"] = false;
        break;
      case EventKind::kRegister:
      case EventKind::kAccept:
      case EventKind::kAnalyse:
        if (json a = AlphaJson(ev.alpha, p); !a.is_null()) e["alpha"] = a;
        break;
      case EventKind::kFake:
        e["fake"] = ev.fake;
        if (ev.fake == "move-user") e["dists"] = ev.dists;
        if (ev.fake == "mark-distance") {
          e["peer"] = ev.peer;
          e["metres"] = ev.metres;
        }
        break;
      default:
        break;
    }
    out += e.dump() + "\n";
  }
  return out;
}

}  // namespace vaultsim
