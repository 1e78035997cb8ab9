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

#include "vaultsim/driver.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <utility>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "json.hpp"
#include "spdlog/spdlog.h"
#include "vaultsim/crypto.h"
#include "vaultsim/heatmap.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kWorldActor = "world";
constexpr std::string_view kAdversaryActor = "adversary";

std::string ActorOf(const ScenarioEvent& ev) {
  switch (ev.kind) {
    case EventKind::kMove:
    case EventKind::kSampleSec:
    case EventKind::kInfect:
      return std::string(kWorldActor);
    case EventKind::kRegister:
    case EventKind::kAnalyse:
      return ev.analyst;
    case EventKind::kFake:
    case EventKind::kLeak:
      return std::string(kAdversaryActor);
    default:
      return ev.user;
  }
}

std::optional<double> ParseDouble(std::string_view text) {
  double v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string OpCountFields(const OpCounts& c) {
  return fmt::format("{},{},{},{},{},{},{},{}", c.enclave_installs,
                     c.enclave_resumes, c.pke_keygen, c.pke_encrypt,
                     c.pke_decrypt, c.sig_keygen, c.sign, c.verify);
}

}  // namespace

absl::StatusOr<RunMode> ParseRunMode(std::string_view text) {
  if (text == "protocol") return RunMode::kProtocol;
  if (text == "ideal") return RunMode::kIdeal;
  if (text == "both") return RunMode::kBoth;
  return MakeError(ErrorKind::kParseError, fmt::format("mode '{}'", text));
}

absl::StatusOr<ErrorFunction> ErrorFunctionByName(std::string_view name,
                                                  uint64_t seed) {
  if (name == "identity") return IdentityError();
  auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    std::optional<double> v = ParseDouble(name.substr(colon + 1));
    std::string_view kind = name.substr(0, colon);
    if (v && *v >= 0 && kind == "noise") return UniformDistanceNoise(*v, seed);
    if (v && kind == "shift") return ShiftDistances(*v);
  }
  return MakeError(ErrorKind::kParseError,
                   fmt::format("error function '{}'", name));
}

Simulation::Simulation(const Scenario& scenario, RunMode mode)
    : scenario_(scenario),
      mode_(mode),
      reality_(&clock_, {std::string(kEnPid), std::string(kAppPid)},
               ValidationConfig{scenario.params.symmetry_tolerance,
                                scenario.params.max_speed}) {}

absl::StatusOr<std::unique_ptr<Simulation>> Simulation::Create(
    const Scenario& scenario, RunMode mode) {
  const ScenarioParams& p = scenario.params;
  VS_ASSIGN_OR_RETURN(ErrorFunction error,
                      ErrorFunctionByName(p.error, scenario.seed));
  VS_ASSIGN_OR_RETURN(ThresholdPolicy policy, ThresholdPolicy::Parse(p.threshold));
  EnConfig config;
  config.risk = RiskParams{p.d_max, p.tau};
  VS_RETURN_IF_ERROR(config.risk.Validate());
  config.threshold = policy;
  if (error.name != "identity") config.allowed_errors.push_back(error);
  VS_ASSIGN_OR_RETURN(HeatmapParams heatmap,
                      HeatmapParams::FromSpec(p.HeatmapSpec()));
  VS_RETURN_IF_ERROR(heatmap.Validate());

  auto sim = std::unique_ptr<Simulation>(new Simulation(scenario, mode));
  const SeededRng function_root = SeededRng(scenario.seed).Derive("function");
  if (mode != RunMode::kIdeal) {
    ThresholdFeProtocol::Config fc;
    fc.sid = "vaultsim";
    fc.seed = scenario.seed;
    fc.function_root = function_root;
    fc.counter = &sim->counter_;
    sim->fe_ = std::make_unique<ThresholdFeProtocol>(std::move(fc));
    sim->protocol_ = std::make_unique<AnalyticsProtocol>(
        &sim->reality_, &sim->clock_, config, sim->fe_.get());
    VS_RETURN_IF_ERROR(sim->protocol_->Setup(error.name));
  }
  if (mode != RunMode::kProtocol) {
    sim->ideal_ = std::make_unique<IdealAnalytics>(&sim->reality_, &sim->clock_,
                                                   config, function_root);
    VS_RETURN_IF_ERROR(sim->ideal_->Setup(error.name));
  }
  for (const std::string& u : scenario.users) sim->infected_[u] = false;
  return sim;
}

absl::Status Simulation::FeedReality(
    const std::vector<const ScenarioEvent*>& events) {
  const uint64_t now = clock_.Now();
  std::map<std::string, RealityRecord> records;
  for (const std::string& u : scenario_.users) {
    RealityRecord r;
    r.user = u;
    r.time = now;
    records.emplace(u, std::move(r));
  }
  std::set<std::pair<std::string, std::string>> stated;
  for (const ScenarioEvent* ev : events) {
    RealityRecord& r = records.at(ev->user);
    switch (ev->kind) {
      case EventKind::kMove:
        for (const auto& [peer, d] : ev->dists) {
          r.dist[peer] = d;
          stated.emplace(ev->user, peer);
        }
        break;
      case EventKind::kSampleSec:
        r.sec = SensitiveData{now / kTicksPerDay,
                              static_cast<uint32_t>(now % kTicksPerDay),
                              ev->cell};
        break;
      case EventKind::kInfect:
        infected_[ev->user] = ev->infected;
        break;
      default:
        break;
    }
  }
  // Distances are reported by both endpoints; a peer that did not state its
  // own value mirrors the other side.
  for (const auto& [u, v] : stated) {
    if (!records.contains(v) || stated.contains({v, u})) continue;
    records.at(v).dist[u] = records.at(u).dist.at(v);
  }
  for (auto& [u, r] : records) {
    r.infected = infected_[u];
    absl::Status s = reality_.Input(u, r);
    if (!s.ok()) {
      return MakeError(ErrorKind::kValidationHalt,
                       fmt::format("tick {}: record of {}: {}", now, u,
                                   std::string(s.message())));
    }
  }
  return absl::OkStatus();
}

std::string Simulation::Dispatch(AnalyticsService& service,
                                 const ScenarioEvent& ev, Transcript* out) {
  switch (ev.kind) {
    case EventKind::kActivate:
      service.Activate(ev.user);
      return "ok";
    case EventKind::kRemove:
      service.Remove(ev.user);
      return "ok";
    case EventKind::kShare:
      return ObservableStatus(service.ShareExposure(ev.user));
    case EventKind::kCheck: {
      absl::StatusOr<int64_t> risk = service.ExposureCheck(ev.user);
      if (!risk.ok()) return ObservableStatus(risk.status());
      if (out != nullptr) out->risks.push_back({ev.tick, ev.user, *risk});
      return fmt::format("risk:{}", *risk);
    }
    case EventKind::kRegister:
      return ObservableStatus(service.RegisterAnalyst(ev.analyst, ev.alpha));
    case EventKind::kAccept:
      return ObservableStatus(service.Accept(ev.user, ev.alpha, ev.analyst));
    case EventKind::kAnalyse: {
      absl::StatusOr<std::optional<Bytes>> y =
          service.Analyse(ev.analyst, ev.alpha);
      if (!y.ok()) return ObservableStatus(y.status());
      if (!y->has_value()) return "gated";
      if (out != nullptr && ev.alpha.name == "heatmap") {
        absl::StatusOr<DayVector> row = DecodeHeatmapOutput(**y);
        if (row.ok()) out->heatmap.push_back({ev.tick, ev.analyst, *row});
      }
      return fmt::format("y:{}", ToHex(**y));
    }
    case EventKind::kCorrupt: {
      std::vector<std::string> grants;
      for (const AnalystGrant& g : service.Corrupt(ev.user)) {
        grants.push_back(fmt::format("{}@{}", g.alpha.ToString(), g.analyst));
      }
      return fmt::format("grants:[{}]", fmt::join(grants, ";"));
    }
    case EventKind::kFake: {
      FakingFunction phi =
          ev.fake == "mark-distance"
              ? MarkDistance(ev.user, ev.peer, ev.metres, ev.tick)
              : MoveUser(ev.user, ev.dists, ev.tick);
      phi.name = ev.fake;
      service.Fake(phi);
      return "ok";
    }
    case EventKind::kLeak:
      return fmt::format("leak:{}", ToHex(Sha256(service.Leak().Serialize())));
    default:
      return "ok";
  }
}

absl::StatusOr<Transcript> Simulation::Run() {
  Transcript t;
  const auto& timeline = scenario_.timeline;
  size_t i = 0;
  while (i < timeline.size()) {
    const uint64_t tick = timeline[i].tick;
    while (clock_.Now() < tick) clock_.Increment();
    size_t end = i;
    std::vector<const ScenarioEvent*> world;
    while (end < timeline.size() && timeline[end].tick == tick) {
      if (IsRealityEvent(timeline[end].kind)) world.push_back(&timeline[end]);
      ++end;
    }
    if (!world.empty()) VS_RETURN_IF_ERROR(FeedReality(world));

    for (; i < end; ++i) {
      const ScenarioEvent& ev = timeline[i];
      EventRecord rec{ev.line, tick, ActorOf(ev),
                      std::string(EventKindName(ev.kind)), "ok"};
      if (!IsRealityEvent(ev.kind)) {
        AnalyticsService& primary =
            protocol_ ? static_cast<AnalyticsService&>(*protocol_) : *ideal_;
        const std::map<std::string, OpCounts> before = counter_.all();
        rec.outcome = Dispatch(primary, ev, &t);
        for (const auto& [actor, after] : counter_.all()) {
          auto prev = before.find(actor);
          OpCounts delta = prev == before.end() ? after : after - prev->second;
          if (delta == OpCounts{}) continue;
          t.opcounts.push_back({ev.line, tick, rec.op, actor, delta});
        }
        if (mode_ == RunMode::kBoth) {
          std::string ideal = Dispatch(*ideal_, ev, nullptr);
          if (ideal != rec.outcome && !t.divergence) {
            t.divergence = Divergence{ev.line, tick, rec.op, rec.outcome, ideal};
          }
        }
      }
      spdlog::debug("t={} {} {} -> {}", tick, rec.actor, rec.op, rec.outcome);
      t.events.push_back(std::move(rec));
    }
  }
  return t;
}

absl::StatusOr<Transcript> RunScenario(const Scenario& scenario, RunMode mode) {
  VS_ASSIGN_OR_RETURN(std::unique_ptr<Simulation> sim,
                      Simulation::Create(scenario, mode));
  return sim->Run();
}

std::string Transcript::EventsJsonl() const {
  std::string out;
  for (const EventRecord& e : events) {
    nlohmann::json j = {{"line", e.line},   {"tick", e.tick},
                        {"actor", e.actor}, {"op", e.op},
                        {"outcome", e.outcome}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string Transcript::HeatmapCsv() const {
  size_t cells = 0;
  for (const HeatmapRow& r : heatmap) cells = std::max(cells, r.y.size());
  std::string out = "tick,analyst";
  for (size_t c = 0; c < cells; ++c) out += fmt::format(",cell_{}", c);
  out += "\n";
  for (const HeatmapRow& r : heatmap) {
    out += fmt::format("{},{}", r.tick, r.analyst);
    for (size_t c = 0; c < cells; ++c) {
      out += fmt::format(",{}", c < r.y.size() ? r.y[c] : 0);
    }
    out += "\n";
  }
  return out;
}

std::string Transcript::RisksCsv() const {
  std::string out = "tick,user,risk\n";
  for (const RiskRow& r : risks) {
    out += fmt::format("{},{},{}\n", r.tick, r.user, r.risk);
  }
  return out;
}

std::string Transcript::OpCountsCsv() const {
  std::string out =
      "line,tick,op,actor,enclave_installs,enclave_resumes,pke_keygen,"
      "pke_encrypt,pke_decrypt,sig_keygen,sign,verify\n";
  for (const OpCountRow& r : opcounts) {
    out += fmt::format("{},{},{},{},{}\n", r.line, r.tick, r.op, r.actor,
                       OpCountFields(r.delta));
  }
  return out;
}

absl::Status Emit(const Transcript& transcript,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     fmt::format("{}: {}", out_dir.string(), ec.message()));
  }
  const std::pair<const char*, std::string> files[] = {
      {"events.jsonl", transcript.EventsJsonl()},
      {"heatmap.csv", transcript.HeatmapCsv()},
      {"risks.csv", transcript.RisksCsv()},
      {"opcounts.csv", transcript.OpCountsCsv()},
  };
  for (const auto& [name, body] : files) {
    const std::filesystem::path path = out_dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << body;
    f.close();
    if (!f) {
      return MakeError(ErrorKind::kIoError,
                       fmt::format("cannot write {}", path.string()));
    }
  }
  return absl::OkStatus();
}

}  // namespace vaultsim
