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

#ifndef VAULTSIM_WORLD_H_
#define VAULTSIM_WORLD_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/sec.h"

namespace vaultsim {

class Clock {
 public:
  uint64_t Increment() { return ++now_; }
  uint64_t Now() const { return now_; }

 private:
  uint64_t now_ = 0;
};

struct RealityRecord {
  std::string user;
  uint64_t time = 0;
  std::map<std::string, double> dist;  // peer -> metres
  double tp = 0.0;
  std::optional<bool> infected;
  std::optional<SensitiveData> sec;

  bool operator==(const RealityRecord&) const = default;
};

enum class Field { kDist, kTp, kInfected, kSec };

// A measured slice of a record. `sec` is the user's accumulated history.
struct Measurement {
  std::string user;
  uint64_t time = 0;
  std::optional<std::map<std::string, double>> dist;
  std::optional<double> tp;
  std::optional<bool> infected;
  std::optional<SecHistory> sec;
};

struct ErrorFunction {
  std::string name;
  std::function<RealityRecord(const RealityRecord&)> apply;
};

ErrorFunction IdentityError();
// Adds noise uniform in [-delta, delta] to every distance, clamped at zero.
// The noise is a fixed function of (seed, user, time, peer).
ErrorFunction UniformDistanceNoise(double delta, uint64_t seed);
// Adds a constant to every distance.
ErrorFunction ShiftDistances(double metres);

struct ValidationConfig {
  double symmetry_tolerance = 0.10;
  double max_speed = 1e5;  // metres of distance change per tick
};

// Default validation predicate over the ground truth plus a candidate record.
absl::Status DefaultValidate(const std::vector<RealityRecord>& store,
                             const RealityRecord& candidate,
                             const ValidationConfig& config);

// Ground truth. Append-only; reads of SEC are restricted to the privileged
// set.
class Reality {
 public:
  Reality(const Clock* clock, std::set<std::string> privileged,
          ValidationConfig config = {})
      : clock_(clock), privileged_(std::move(privileged)), config_(config) {}

  // Stale records fail with StaleRecord; validation failure halts the world
  // and every later call fails with ValidationHalt.
  absl::Status Input(std::string_view user, const RealityRecord& record);

  absl::StatusOr<Measurement> MyCurrentMeas(std::string_view caller,
                                            std::string_view user,
                                            const std::set<Field>& fields,
                                            const ErrorFunction& errfn) const;
  absl::StatusOr<std::vector<RealityRecord>> AllMeas(
      std::string_view caller, const ErrorFunction& errfn) const;

  // SEC samples of `user` recorded at or before `tick`.
  absl::StatusOr<SecHistory> SecAsOf(std::string_view caller,
                                     std::string_view user,
                                     uint64_t tick) const;

  bool IsPrivileged(std::string_view caller) const {
    return privileged_.contains(std::string(caller));
  }
  // Latest INFECTED measurement of `user` in the ground truth.
  bool IsInfected(std::string_view user) const;
  bool halted() const { return halted_; }
  const std::vector<RealityRecord>& records() const { return records_; }

 private:
  const Clock* clock_;
  std::set<std::string> privileged_;
  ValidationConfig config_;
  std::vector<RealityRecord> records_;
  bool halted_ = false;
};

// The EN layer's noisy copy of reality, keyed by (user, time).
using NoisyStore = std::map<std::pair<std::string, uint64_t>, RealityRecord>;

struct FakingFunction {
  std::string name;
  std::function<void(NoisyStore&)> apply;
};

// Sets dist(user, peer) = metres in every record of `user` at `time`.
FakingFunction MarkDistance(std::string user, std::string peer, double metres,
                            uint64_t time);
// Rewrites the distances of `user` at `time` to `dists`.
FakingFunction MoveUser(std::string user, std::map<std::string, double> dists,
                        uint64_t time);

// Applies `phi` when its name is in `allowed`; SEC fields always survive.
void ApplyFaking(const FakingFunction& phi, const std::set<std::string>& allowed,
                 NoisyStore& store);

struct SharedExposure {
  std::string user;
  uint64_t tick = 0;
  bool operator==(const SharedExposure&) const = default;
};

// What the default leakage selector reveals: the noisy records without SEC,
// the active users and the shared-exposure list.
struct LeakView {
  std::vector<RealityRecord> noisy;
  std::vector<std::string> active;
  std::vector<SharedExposure> shared;

  Bytes Serialize() const;
};

LeakView DefaultLeakage(const NoisyStore& noisy,
                        const std::vector<std::string>& active,
                        const std::vector<SharedExposure>& shared);

}  // namespace vaultsim

#endif  // VAULTSIM_WORLD_H_
