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

#ifndef VAULTSIM_EXPOSURE_H_
#define VAULTSIM_EXPOSURE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/world.h"

namespace vaultsim {

inline constexpr std::string_view kEnPid = "F_EN";

struct RiskParams {
  double d_max = 2.0;  // metres
  uint64_t tau = 24;   // ticks

  absl::Status Validate() const;
};

// Number of distinct ticks t in [now - tau, now] at which `user` was within
// d_max of some shared-exposure member, in either direction of measurement.
int64_t DefaultRisk(std::string_view user,
                    const std::vector<RealityRecord>& mu,
                    const std::set<std::string>& shared, uint64_t now,
                    const RiskParams& params);

// K: exposed-population size -> required authorisations. Always within
// [0, n].
class ThresholdPolicy {
 public:
  static ThresholdPolicy Majority() { return ThresholdPolicy(kMajority, 0); }
  static ThresholdPolicy All() { return ThresholdPolicy(kAll, 0); }
  static ThresholdPolicy Fixed(int64_t k) { return ThresholdPolicy(kFixed, k); }
  // "majority", "all" or "fixed:N".
  static absl::StatusOr<ThresholdPolicy> Parse(std::string_view text);

  int64_t operator()(int64_t n) const;
  std::string ToString() const;

 private:
  enum Kind { kMajority, kAll, kFixed };
  ThresholdPolicy(Kind kind, int64_t k) : kind_(kind), k_(k) {}
  Kind kind_;
  int64_t k_;
};

struct EnConfig {
  RiskParams risk;
  ThresholdPolicy threshold = ThresholdPolicy::Majority();
  std::vector<ErrorFunction> allowed_errors = {IdentityError()};
  std::set<std::string> allowed_fakes = {"move-user", "mark-distance"};
};

// The exposure-notification functionality: noisy view of reality, active and
// exposed users, risk checks.
class ExposureNotification {
 public:
  ExposureNotification(const Reality* reality, const Clock* clock,
                       EnConfig config);

  absl::Status Setup(std::string_view error_name);
  void Activate(std::string_view user);
  void Remove(std::string_view user);
  absl::Status ShareExposure(std::string_view user);
  absl::StatusOr<int64_t> ExposureCheck(std::string_view user);

  void MarkCorrupt(std::string_view user) { corrupted_.insert(std::string(user)); }
  bool IsCorrupt(std::string_view user) const {
    return corrupted_.contains(std::string(user));
  }
  void Fake(const FakingFunction& phi);
  LeakView Leak() const;

  bool HasShared(std::string_view user) const;
  bool IsActive(std::string_view user) const;
  const std::vector<SharedExposure>& shared() const { return shared_; }
  const std::vector<std::string>& active() const { return active_; }
  const NoisyStore& noisy() const { return noisy_; }
  const EnConfig& config() const { return config_; }
  uint64_t Now() const { return clock_->Now(); }

 private:
  absl::Status Refresh();

  const Reality* reality_;
  const Clock* clock_;
  EnConfig config_;
  ErrorFunction error_;
  NoisyStore noisy_;
  std::vector<std::string> active_;
  std::vector<SharedExposure> shared_;
  std::set<std::string> corrupted_;
};

}  // namespace vaultsim

#endif  // VAULTSIM_EXPOSURE_H_
