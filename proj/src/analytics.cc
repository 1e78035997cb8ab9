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

#include "vaultsim/analytics.h"

#include <algorithm>

#include "fmt/format.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

int64_t Distinct(const std::vector<std::string>& users) {
  return static_cast<int64_t>(std::set<std::string>(users.begin(), users.end()).size());
}

}  // namespace

bool IsAnalysisFunction(const FunctionSpec& alpha) {
  return MakeListFunction(alpha).ok() && Descriptor(AggSSpec(alpha)).ok();
}

IdealAnalytics::IdealAnalytics(const Reality* reality, const Clock* clock,
                               EnConfig config, SeededRng function_root)
    : reality_(reality),
      en_(reality, clock, std::move(config)),
      function_root_(std::move(function_root)) {}

absl::Status IdealAnalytics::ShareExposure(std::string_view user) {
  return en_.ShareExposure(user);
}

absl::Status IdealAnalytics::RegisterAnalyst(std::string_view analyst,
                                             const FunctionSpec& alpha) {
  if (!IsAnalysisFunction(alpha)) return absl::OkStatus();
  VS_ASSIGN_OR_RETURN(Bytes descriptor, Descriptor(alpha));
  Key key{descriptor, std::string(analyst)};
  if (registered_.emplace(key, alpha).second) auth_[key];
  for (const SharedExposure& s : en_.shared()) {
    requests_[s.user].push_back({alpha, std::string(analyst)});
  }
  return absl::OkStatus();
}

absl::Status IdealAnalytics::Accept(std::string_view user,
                                    const FunctionSpec& alpha,
                                    std::string_view analyst) {
  if (!en_.HasShared(user)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} has not shared exposure", user));
  }
  absl::StatusOr<Bytes> descriptor = Descriptor(alpha);
  if (!descriptor.ok() ||
      !registered_.contains({*descriptor, std::string(analyst)})) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not registered for {}", analyst,
                                 alpha.ToString()));
  }
  auth_[{*descriptor, std::string(analyst)}].emplace_back(user);
  return absl::OkStatus();
}

absl::StatusOr<std::optional<Bytes>> IdealAnalytics::Analyse(
    std::string_view analyst, const FunctionSpec& alpha) {
  absl::StatusOr<Bytes> descriptor = Descriptor(alpha);
  Key key{descriptor.ok() ? *descriptor : Bytes{}, std::string(analyst)};
  if (!descriptor.ok() || !registered_.contains(key)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not registered for {}", analyst,
                                 alpha.ToString()));
  }
  const auto exposed = static_cast<int64_t>(en_.shared().size());
  if (Distinct(auth_[key]) < en_.config().threshold(exposed)) {
    return std::optional<Bytes>();
  }
  std::vector<Bytes> inputs;
  for (const SharedExposure& s : en_.shared()) {
    VS_ASSIGN_OR_RETURN(SecHistory sec,
                        reality_->SecAsOf(kEnPid, s.user, s.tick));
    inputs.push_back(sec.Serialize());
  }
  VS_ASSIGN_OR_RETURN(std::unique_ptr<ListFunction> f, MakeListFunction(alpha));
  auto stream = streams_.find(key);
  if (stream == streams_.end()) {
    VS_ASSIGN_OR_RETURN(Bytes wrapped, Descriptor(AggSSpec(alpha)));
    stream = streams_
                 .emplace(key, FunctionRandomness(function_root_, analyst,
                                                  wrapped))
                 .first;
  }
  SeededRng rand = stream->second;
  VS_ASSIGN_OR_RETURN(ListFunction::Output out,
                      f->Evaluate(inputs, states_[key], rand));
  stream->second = rand;
  states_[key] = std::move(out.state);
  return std::optional<Bytes>(std::move(out.y));
}

std::vector<AnalystGrant> IdealAnalytics::Corrupt(std::string_view user) {
  en_.MarkCorrupt(user);
  std::vector<AnalystGrant> out;
  for (const auto& [key, users] : auth_) {
    if (std::find(users.begin(), users.end(), user) != users.end()) {
      out.push_back({registered_.at(key), key.second});
    }
  }
  return out;
}

const FunctionState* IdealAnalytics::StateOf(std::string_view analyst,
                                             const FunctionSpec& alpha) const {
  absl::StatusOr<Bytes> descriptor = Descriptor(alpha);
  if (!descriptor.ok()) return nullptr;
  auto it = states_.find({*descriptor, std::string(analyst)});
  return it == states_.end() ? nullptr : &it->second;
}

std::vector<AnalystGrant> IdealAnalytics::RequestsFor(
    std::string_view user) const {
  auto it = requests_.find(std::string(user));
  return it == requests_.end() ? std::vector<AnalystGrant>{} : it->second;
}

AnalyticsProtocol::AnalyticsProtocol(const Reality* reality,
                                       const Clock* clock, EnConfig config,
                                       FunctionalEncryptionService* fe)
    : reality_(reality),
      en_(reality, clock, std::move(config)),
      fe_(fe),
      tbb_([reality](std::string_view party) {
        return reality->IsInfected(party);
      }) {}

absl::Status AnalyticsProtocol::ShareExposure(std::string_view user) {
  VS_RETURN_IF_ERROR(en_.ShareExposure(user));
  VS_RETURN_IF_ERROR(fe_->Setup(user, FeRole::kEncryptor));
  const auto encryptors = static_cast<int64_t>(fe_->encryptor_count());
  if (encryptors != static_cast<int64_t>(en_.shared().size())) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} encryptors but {} exposed users",
                                 encryptors, en_.shared().size()));
  }
  VS_ASSIGN_OR_RETURN(
      Measurement own,
      reality_->MyCurrentMeas(kAppPid, user, {Field::kSec}, IdentityError()));
  Bytes& buffer = sec_buffers_[std::string(user)];
  buffer = own.sec->Serialize();
  absl::StatusOr<Handle> h =
      fe_->Encrypt(user, buffer, en_.config().threshold(encryptors));
  std::fill(buffer.begin(), buffer.end(), 0);
  if (!h.ok()) return h.status();
  if (!tbb_.Add(user, *h)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("bulletin board refused {}", user));
  }
  return absl::OkStatus();
}

absl::Status AnalyticsProtocol::RegisterAnalyst(std::string_view analyst,
                                                 const FunctionSpec& alpha) {
  if (!IsAnalysisFunction(alpha)) return absl::OkStatus();
  VS_ASSIGN_OR_RETURN(Bytes descriptor, Descriptor(alpha));
  if (!fe_->IsSetUp(analyst)) {
    VS_RETURN_IF_ERROR(fe_->Setup(analyst, FeRole::kDecryptor));
  }
  registered_.insert({descriptor, std::string(analyst)});
  return absl::OkStatus();
}

absl::Status AnalyticsProtocol::Accept(std::string_view user,
                                        const FunctionSpec& alpha,
                                        std::string_view analyst) {
  if (!en_.HasShared(user)) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} has not shared exposure", user));
  }
  absl::StatusOr<Bytes> descriptor = Descriptor(alpha);
  if (!descriptor.ok() ||
      !registered_.contains({*descriptor, std::string(analyst)})) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not registered for {}", analyst,
                                 alpha.ToString()));
  }
  VS_RETURN_IF_ERROR(fe_->KeyShareGen(user, AggSSpec(alpha), analyst));
  accepts_[std::string(user)].push_back({alpha, std::string(analyst)});
  return absl::OkStatus();
}

absl::StatusOr<std::optional<Bytes>> AnalyticsProtocol::Analyse(
    std::string_view analyst, const FunctionSpec& alpha) {
  absl::StatusOr<Bytes> descriptor = Descriptor(alpha);
  if (!descriptor.ok() ||
      !registered_.contains({*descriptor, std::string(analyst)})) {
    return MakeError(ErrorKind::kRejected,
                     fmt::format("{} is not registered for {}", analyst,
                                 alpha.ToString()));
  }
  const FunctionSpec wrapped = AggSSpec(alpha);
  const std::vector<Handle> uploads = tbb_.Retrieve();
  const auto count = static_cast<int64_t>(uploads.size());
  if (!skip_precheck_ &&
      static_cast<int64_t>(fe_->AuthorizationCount(analyst, wrapped)) <
          en_.config().threshold(count)) {
    return std::optional<Bytes>();
  }
  VS_ASSIGN_OR_RETURN(Handle batch, fe_->Encrypt(analyst, EncodeInt(count), 0));
  VS_ASSIGN_OR_RETURN(AggregatorOutput y, fe_->Decrypt(analyst, wrapped, batch));
  for (Handle h : uploads) {
    absl::StatusOr<AggregatorOutput> step = fe_->Decrypt(analyst, wrapped, h);
    if (IsError(step.status(), ErrorKind::kPolicyUnsatisfied)) {
      return std::optional<Bytes>();
    }
    if (!step.ok()) return step.status();
    y = *std::move(step);
  }
  if (y.pending()) {
    return MakeError(ErrorKind::kRejected, "batch did not complete");
  }
  return std::optional<Bytes>(y.value());
}

std::vector<AnalystGrant> AnalyticsProtocol::Corrupt(std::string_view user) {
  en_.MarkCorrupt(user);
  std::map<std::pair<Bytes, std::string>, FunctionSpec> pairs;
  for (const AnalystGrant& g : accepts_[std::string(user)]) {
    absl::StatusOr<Bytes> descriptor = Descriptor(g.alpha);
    if (descriptor.ok()) pairs.emplace(std::pair{*descriptor, g.analyst}, g.alpha);
  }
  std::vector<AnalystGrant> out;
  for (const auto& [key, alpha] : pairs) {
    (void)fe_->KeyShareGen(user, AggSSpec(alpha), key.second);
    out.push_back({alpha, key.second});
  }
  fe_->Corrupt(user);
  return out;
}

const Bytes* AnalyticsProtocol::SecBuffer(std::string_view user) const {
  auto it = sec_buffers_.find(std::string(user));
  return it == sec_buffers_.end() ? nullptr : &it->second;
}

}  // namespace vaultsim
