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

#include "vaultsim/exposure.h"

#include <algorithm>
#include <charconv>

#include "fmt/format.h"
#include "vaultsim/status.h"

namespace vaultsim {

absl::Status RiskParams::Validate() const {
  if (!(d_max > 0) || tau < 1) {
    return MakeError(ErrorKind::kRejected, "need d_max > 0 and tau >= 1");
  }
  return absl::OkStatus();
}

int64_t DefaultRisk(std::string_view user,
                    const std::vector<RealityRecord>& mu,
                    const std::set<std::string>& shared, uint64_t now,
                    const RiskParams& params) {
  const uint64_t from = now >= params.tau ? now - params.tau : 0;
  std::set<uint64_t> ticks;
  for (const RealityRecord& r : mu) {
    if (r.time < from || r.time > now) continue;
    for (const auto& [peer, d] : r.dist) {
      if (d > params.d_max) continue;
      const bool forward = r.user == user && shared.contains(peer);
      const bool backward = peer == user && shared.contains(r.user);
      if (forward || backward) ticks.insert(r.time);
    }
  }
  return static_cast<int64_t>(ticks.size());
}

absl::StatusOr<ThresholdPolicy> ThresholdPolicy::Parse(std::string_view text) {
  if (text == "majority") return Majority();
  if (text == "all") return All();
  if (text.starts_with("fixed:")) {
    std::string_view digits = text.substr(6);
    int64_t k = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && end == digits.data() + digits.size() && k >= 0) {
      return Fixed(k);
    }
  }
  return MakeError(ErrorKind::kParseError,
                   fmt::format("threshold policy '{}'", text));
}

int64_t ThresholdPolicy::operator()(int64_t n) const {
  if (n <= 0) return 0;
  switch (kind_) {
    case kMajority: return (n + 1) / 2;
    case kAll: return n;
    case kFixed: return std::min(k_, n);
  }
  return n;
}

std::string ThresholdPolicy::ToString() const {
  switch (kind_) {
    case kMajority: return "majority";
    case kAll: return "all";
    case kFixed: return fmt::format("fixed:{}", k_);
  }
  return "majority";
}

ExposureNotification::ExposureNotification(const Reality* reality,
                                           const Clock* clock, EnConfig config)
    : reality_(reality),
      clock_(clock),
      config_(std::move(config)),
      error_(IdentityError()) {}

absl::Status ExposureNotification::Setup(std::string_view error_name) {
  for (const ErrorFunction& e : config_.allowed_errors) {
    if (e.name == error_name) {
      error_ = e;
      noisy_.clear();
      return absl::OkStatus();
    }
  }
  return MakeError(ErrorKind::kRejected,
                   fmt::format("error function {} not allowed", error_name));
}

void ExposureNotification::Activate(std::string_view user) {
  if (!IsActive(user) && !HasShared(user)) active_.emplace_back(user);
}

void ExposureNotification::Remove(std::string_view user) {
  std::erase(active_, std::string(user));
}

bool ExposureNotification::IsActive(std::string_view user) const {
  return std::find(active_.begin(), active_.end(), user) != active_.end();
}

bool ExposureNotification::HasShared(std::string_view user) const {
  return std::any_of(shared_.begin(), shared_.end(),
                     [&](const SharedExposure& s) { return s.user == user; });
}

absl::Status ExposureNotification::Refresh() {
  VS_ASSIGN_OR_RETURN(std::vector<RealityRecord> records,
                      reality_->AllMeas(kEnPid, error_));
  for (RealityRecord& r : records) {
    std::pair<std::string, uint64_t> key{r.user, r.time};
    noisy_.try_emplace(std::move(key), std::move(r));
  }
  return absl::OkStatus();
}

absl::Status ExposureNotification::ShareExposure(std::string_view user) {
  VS_RETURN_IF_ERROR(Refresh());
  if (HasShared(user)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} already shared exposure", user));
  }
  bool infected = false;
  for (const auto& [key, record] : noisy_) {
    if (key.first == user && record.infected.has_value()) {
      infected = *record.infected;
    }
  }
  if (!infected) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not infected", user));
  }
  shared_.push_back({std::string(user), clock_->Now()});
  Remove(user);
  return absl::OkStatus();
}

absl::StatusOr<int64_t> ExposureNotification::ExposureCheck(
    std::string_view user) {
  if (!IsActive(user)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not an active user", user));
  }
  VS_RETURN_IF_ERROR(Refresh());
  std::set<std::string> exposed;
  for (const SharedExposure& s : shared_) exposed.insert(s.user);
  std::vector<RealityRecord> mu;
  for (const auto& [key, record] : noisy_) {
    if (key.first == user || exposed.contains(key.first)) mu.push_back(record);
  }
  return DefaultRisk(user, mu, exposed, clock_->Now(), config_.risk);
}

void ExposureNotification::Fake(const FakingFunction& phi) {
  ApplyFaking(phi, config_.allowed_fakes, noisy_);
}

LeakView ExposureNotification::Leak() const {
  return DefaultLeakage(noisy_, active_, shared_);
}

}  // namespace vaultsim
