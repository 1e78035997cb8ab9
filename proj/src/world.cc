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

#include "vaultsim/world.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fmt/format.h"
#include "vaultsim/crypto.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

const RealityRecord* Latest(const std::vector<RealityRecord>& store,
                            std::string_view user, uint64_t at_or_before) {
  const RealityRecord* best = nullptr;
  for (const RealityRecord& r : store) {
    if (r.user == user && r.time <= at_or_before) best = &r;
  }
  return best;
}

double NoiseUnit(uint64_t seed, std::string_view user, uint64_t time,
                 std::string_view peer) {
  ByteWriter w;
  w.PutU64(seed).PutField(user).PutU64(time).PutField(peer);
  Bytes digest = Sha256(w.bytes());
  ByteReader r(digest);
  uint64_t v = r.ReadU64().value_or(0);
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace

ErrorFunction IdentityError() {
  return {"identity", [](const RealityRecord& r) { return r; }};
}

ErrorFunction UniformDistanceNoise(double delta, uint64_t seed) {
  return {fmt::format("noise:{}", delta), [delta, seed](const RealityRecord& r) {
            RealityRecord out = r;
            for (auto& [peer, d] : out.dist) {
              double u = NoiseUnit(seed, r.user, r.time, peer);
              d = std::max(0.0, d + (2.0 * u - 1.0) * delta);
            }
            return out;
          }};
}

ErrorFunction ShiftDistances(double metres) {
  return {fmt::format("shift:{}", metres), [metres](const RealityRecord& r) {
            RealityRecord out = r;
            for (auto& [peer, d] : out.dist) d += metres;
            return out;
          }};
}

absl::Status DefaultValidate(const std::vector<RealityRecord>& store,
                             const RealityRecord& candidate,
                             const ValidationConfig& config) {
  for (const auto& [peer, d] : candidate.dist) {
    if (!std::isfinite(d) || d < 0) {
      return MakeError(ErrorKind::kValidationHalt,
                       fmt::format("{} -> {}: negative distance {}",
                                   candidate.user, peer, d));
    }
    for (const RealityRecord& other : store) {
      if (other.user != peer || other.time != candidate.time) continue;
      auto back = other.dist.find(candidate.user);
      if (back == other.dist.end()) continue;
      double tolerance = config.symmetry_tolerance * std::max(d, back->second);
      if (std::abs(d - back->second) > tolerance) {
        return MakeError(
            ErrorKind::kValidationHalt,
            fmt::format("t={}: dist {}->{} = {} but {}->{} = {}",
                        candidate.time, candidate.user, peer, d, peer,
                        candidate.user, back->second));
      }
    }
    const RealityRecord* previous = nullptr;
    for (const RealityRecord& r : store) {
      if (r.user == candidate.user && r.time < candidate.time &&
          r.dist.contains(peer)) {
        previous = &r;
      }
    }
    if (previous != nullptr) {
      double elapsed = static_cast<double>(candidate.time - previous->time);
      double change = std::abs(d - previous->dist.at(peer));
      if (change > config.max_speed * elapsed) {
        return MakeError(ErrorKind::kValidationHalt,
                         fmt::format("t={}: {}->{} moved {} m in {} ticks",
                                     candidate.time, candidate.user, peer,
                                     change, elapsed));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status Reality::Input(std::string_view user,
                            const RealityRecord& record) {
  if (halted_) return MakeError(ErrorKind::kValidationHalt, "world halted");
  if (record.user != user) {
    return MakeError(ErrorKind::kDenied,
                     fmt::format("{} submitted a record for {}", user,
                                 record.user));
  }
  if (record.time != clock_->Now()) {
    return MakeError(ErrorKind::kStaleRecord,
                     fmt::format("record time {} at tick {}", record.time,
                                 clock_->Now()));
  }
  absl::Status valid = DefaultValidate(records_, record, config_);
  if (!valid.ok()) {
    halted_ = true;
    return valid;
  }
  records_.push_back(record);
  return absl::OkStatus();
}

absl::StatusOr<Measurement> Reality::MyCurrentMeas(
    std::string_view caller, std::string_view user,
    const std::set<Field>& fields, const ErrorFunction& errfn) const {
  const bool privileged = IsPrivileged(caller);
  if (fields.contains(Field::kSec) && !privileged) {
    return MakeError(ErrorKind::kFieldDenied,
                     fmt::format("{} may not read SEC", caller));
  }
  if (caller != user && !privileged) {
    return MakeError(ErrorKind::kDenied,
                     fmt::format("{} may not measure {}", caller, user));
  }
  const RealityRecord* latest = Latest(records_, user, clock_->Now());
  if (latest == nullptr) {
    return MakeError(ErrorKind::kNoMeasurement, std::string(user));
  }
  RealityRecord noisy = errfn.apply(*latest);
  Measurement m{noisy.user, noisy.time, {}, {}, {}, {}};
  if (fields.contains(Field::kDist)) m.dist = noisy.dist;
  if (fields.contains(Field::kTp)) m.tp = noisy.tp;
  if (fields.contains(Field::kInfected)) {
    m.infected = noisy.infected.value_or(false);
  }
  if (fields.contains(Field::kSec)) {
    VS_ASSIGN_OR_RETURN(m.sec, SecAsOf(caller, user, clock_->Now()));
  }
  return m;
}

absl::StatusOr<std::vector<RealityRecord>> Reality::AllMeas(
    std::string_view caller, const ErrorFunction& errfn) const {
  if (!IsPrivileged(caller)) {
    return MakeError(ErrorKind::kDenied, std::string(caller));
  }
  std::vector<RealityRecord> out;
  out.reserve(records_.size());
  for (const RealityRecord& r : records_) out.push_back(errfn.apply(r));
  return out;
}

absl::StatusOr<SecHistory> Reality::SecAsOf(std::string_view caller,
                                            std::string_view user,
                                            uint64_t tick) const {
  if (!IsPrivileged(caller)) {
    return MakeError(ErrorKind::kFieldDenied,
                     fmt::format("{} may not read SEC", caller));
  }
  SecHistory history;
  history.upload_tick = tick;
  for (const RealityRecord& r : records_) {
    if (r.user == user && r.time <= tick && r.sec.has_value()) {
      history.samples.push_back(*r.sec);
    }
  }
  return history;
}

bool Reality::IsInfected(std::string_view user) const {
  bool infected = false;
  for (const RealityRecord& r : records_) {
    if (r.user == user && r.time <= clock_->Now() && r.infected.has_value()) {
      infected = *r.infected;
    }
  }
  return infected;
}

FakingFunction MarkDistance(std::string user, std::string peer, double metres,
                            uint64_t time) {
  return {"mark-distance",
          [user = std::move(user), peer = std::move(peer), metres,
           time](NoisyStore& store) {
            auto it = store.find({user, time});
            if (it == store.end()) {
              it = store.emplace(std::pair{user, time},
                                 RealityRecord{user, time, {}, 0.0, {}, {}})
                       .first;
            }
            it->second.dist[peer] = metres;
          }};
}

FakingFunction MoveUser(std::string user, std::map<std::string, double> dists,
                        uint64_t time) {
  return {"move-user",
          [user = std::move(user), dists = std::move(dists),
           time](NoisyStore& store) {
            auto it = store.find({user, time});
            if (it == store.end()) {
              it = store.emplace(std::pair{user, time},
                                 RealityRecord{user, time, {}, 0.0, {}, {}})
                       .first;
            }
            it->second.dist = dists;
          }};
}

void ApplyFaking(const FakingFunction& phi, const std::set<std::string>& allowed,
                 NoisyStore& store) {
  if (!allowed.contains(phi.name) || !phi.apply) return;
  std::map<std::pair<std::string, uint64_t>, std::optional<SensitiveData>> sec;
  for (const auto& [key, record] : store) sec[key] = record.sec;
  phi.apply(store);
  for (auto& [key, record] : store) {
    auto it = sec.find(key);
    record.sec = it == sec.end() ? std::nullopt : it->second;
  }
}

Bytes LeakView::Serialize() const {
  ByteWriter w;
  w.PutField("leak-v1");
  w.PutU32(static_cast<uint32_t>(noisy.size()));
  for (const RealityRecord& r : noisy) {
    w.PutField(r.user).PutU64(r.time);
    w.PutU32(static_cast<uint32_t>(r.dist.size()));
    for (const auto& [peer, d] : r.dist) {
      w.PutField(peer).PutU64(std::bit_cast<uint64_t>(d));
    }
    w.PutU64(std::bit_cast<uint64_t>(r.tp));
    w.PutU32(r.infected.has_value() ? (*r.infected ? 2 : 1) : 0);
  }
  w.PutU32(static_cast<uint32_t>(active.size()));
  for (const std::string& u : active) w.PutField(u);
  w.PutU32(static_cast<uint32_t>(shared.size()));
  for (const SharedExposure& s : shared) w.PutField(s.user).PutU64(s.tick);
  return std::move(w).bytes();
}

LeakView DefaultLeakage(const NoisyStore& noisy,
                        const std::vector<std::string>& active,
                        const std::vector<SharedExposure>& shared) {
  LeakView view;
  for (const auto& [key, record] : noisy) {
    RealityRecord stripped = record;
    stripped.sec.reset();
    view.noisy.push_back(std::move(stripped));
  }
  view.active = active;
  view.shared = shared;
  return view;
}

}  // namespace vaultsim
