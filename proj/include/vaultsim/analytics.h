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

#ifndef VAULTSIM_ANALYTICS_H_
#define VAULTSIM_ANALYTICS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/exposure.h"
#include "vaultsim/fe_service.h"
#include "vaultsim/function.h"
#include "vaultsim/setups.h"
#include "vaultsim/world.h"

namespace vaultsim {

// Privileged reader used by the client application for its own SEC.
inline constexpr std::string_view kAppPid = "app";

struct AnalystGrant {
  FunctionSpec alpha;
  std::string analyst;
  bool operator==(const AnalystGrant&) const = default;
};

// Exposure notification with analyst registration, user consent and
// threshold-gated analysis. A gated analysis yields nullopt.
class AnalyticsService {
 public:
  virtual ~AnalyticsService() = default;

  virtual ExposureNotification& en() = 0;

  virtual absl::Status Setup(std::string_view error_name) { return en().Setup(error_name); }
  virtual void Activate(std::string_view user) { en().Activate(user); }
  virtual void Remove(std::string_view user) { en().Remove(user); }
  virtual absl::Status ShareExposure(std::string_view user) = 0;
  virtual absl::StatusOr<int64_t> ExposureCheck(std::string_view user) {
    return en().ExposureCheck(user);
  }
  virtual absl::Status RegisterAnalyst(std::string_view analyst,
                                       const FunctionSpec& alpha) = 0;
  virtual absl::Status Accept(std::string_view user, const FunctionSpec& alpha,
                              std::string_view analyst) = 0;
  virtual absl::StatusOr<std::optional<Bytes>> Analyse(
      std::string_view analyst, const FunctionSpec& alpha) = 0;
  virtual std::vector<AnalystGrant> Corrupt(std::string_view user) = 0;
  virtual void Fake(const FakingFunction& phi) { en().Fake(phi); }
  virtual LeakView Leak() { return en().Leak(); }
};

// True iff `alpha` is an analysis function this layer accepts.
bool IsAnalysisFunction(const FunctionSpec& alpha);

// The ideal functionality: evaluates alpha directly on the exposed users' SEC.
class IdealAnalytics final : public AnalyticsService {
 public:
  IdealAnalytics(const Reality* reality, const Clock* clock, EnConfig config,
                 SeededRng function_root);

  ExposureNotification& en() override { return en_; }
  absl::Status ShareExposure(std::string_view user) override;
  absl::Status RegisterAnalyst(std::string_view analyst,
                               const FunctionSpec& alpha) override;
  absl::Status Accept(std::string_view user, const FunctionSpec& alpha,
                      std::string_view analyst) override;
  absl::StatusOr<std::optional<Bytes>> Analyse(
      std::string_view analyst, const FunctionSpec& alpha) override;
  std::vector<AnalystGrant> Corrupt(std::string_view user) override;

  const FunctionState* StateOf(std::string_view analyst,
                               const FunctionSpec& alpha) const;
  // Registration requests delivered to `user`.
  std::vector<AnalystGrant> RequestsFor(std::string_view user) const;

 private:
  using Key = std::pair<Bytes, std::string>;  // (alpha descriptor, analyst)

  const Reality* reality_;
  ExposureNotification en_;
  SeededRng function_root_;
  std::map<Key, FunctionSpec> registered_;
  std::map<Key, std::vector<std::string>> auth_;
  std::map<Key, FunctionState> states_;
  std::map<Key, SeededRng> streams_;
  std::map<std::string, std::vector<AnalystGrant>> requests_;
};

// The protocol: the exposure-notification functionality for contact
// tracing, threshold functional encryption for the analytics.
class AnalyticsProtocol final : public AnalyticsService {
 public:
  AnalyticsProtocol(const Reality* reality, const Clock* clock,
                    EnConfig config, FunctionalEncryptionService* fe);

  ExposureNotification& en() override { return en_; }
  absl::Status ShareExposure(std::string_view user) override;
  absl::Status RegisterAnalyst(std::string_view analyst,
                               const FunctionSpec& alpha) override;
  absl::Status Accept(std::string_view user, const FunctionSpec& alpha,
                      std::string_view analyst) override;
  absl::StatusOr<std::optional<Bytes>> Analyse(
      std::string_view analyst, const FunctionSpec& alpha) override;
  std::vector<AnalystGrant> Corrupt(std::string_view user) override;

  const BulletinBoard& board() const { return tbb_; }
  // The client application's plaintext SEC buffer for `user` after its last
  // upload.
  const Bytes* SecBuffer(std::string_view user) const;
  // Skip the analyst's own authorisation count before decrypting.
  void set_skip_precheck(bool skip) { skip_precheck_ = skip; }

 private:
  const Reality* reality_;
  ExposureNotification en_;
  FunctionalEncryptionService* fe_;
  BulletinBoard tbb_;
  std::set<std::pair<Bytes, std::string>> registered_;
  std::map<std::string, Bytes> sec_buffers_;
  std::map<std::string, std::vector<AnalystGrant>> accepts_;
  bool skip_precheck_ = false;
};

}  // namespace vaultsim

#endif  // VAULTSIM_ANALYTICS_H_
