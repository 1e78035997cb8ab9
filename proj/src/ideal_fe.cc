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

#include "vaultsim/ideal_fe.h"

#include <algorithm>

#include "fmt/format.h"
#include "vaultsim/crypto.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

bool Contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

absl::Status IdealThresholdFe::Setup(std::string_view party, FeRole role) {
  if (role == FeRole::kAuthority) return absl::OkStatus();
  std::string p(party);
  if (setup_.contains(p)) {
    return MakeError(ErrorKind::kAlreadySetup, p);
  }
  setup_[p] = role;
  (role == FeRole::kEncryptor ? encryptors_ : decryptors_).push_back(p);
  return absl::OkStatus();
}

absl::Status IdealThresholdFe::KeyShareGen(std::string_view encryptor,
                                           const FunctionSpec& function,
                                           std::string_view decryptor) {
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  if (!descriptor.ok()) return absl::OkStatus();
  if (!Contains(encryptors_, encryptor) || !Contains(decryptors_, decryptor)) {
    return absl::OkStatus();
  }
  shares_[{std::string(decryptor), *descriptor}].emplace_back(encryptor);
  return absl::OkStatus();
}

absl::StatusOr<Handle> IdealThresholdFe::Encrypt(std::string_view party,
                                                 ByteView x,
                                                 int64_t threshold) {
  if (!IsSetUp(party)) {
    return MakeError(ErrorKind::kEncryptFailed,
                     fmt::format("{} is not set up", party));
  }
  if (threshold < 0) {
    return MakeError(ErrorKind::kEncryptFailed, "negative threshold");
  }
  if (x.size() > kMaxPlaintextBytes) {
    return MakeError(ErrorKind::kEncryptFailed, "message too large");
  }
  Handle h = next_handle_++;
  messages_[h] = Entry{Bytes(x.begin(), x.end()), threshold};
  return h;
}

absl::StatusOr<AggregatorOutput> IdealThresholdFe::Decrypt(
    std::string_view decryptor, const FunctionSpec& function, Handle h) {
  if (!Contains(decryptors_, decryptor)) {
    return MakeError(ErrorKind::kNotSetUp, std::string(decryptor));
  }
  VS_ASSIGN_OR_RETURN(Bytes descriptor, Descriptor(function));
  auto message = messages_.find(h);
  if (message == messages_.end()) {
    return MakeError(ErrorKind::kNoSuchHandle, fmt::format("handle {}", h));
  }
  const Entry& entry = message->second;
  if (IsLeakageDescriptor(descriptor)) {
    return AggregatorOutput::Result(
        EncodeInt(static_cast<int64_t>(LeakageLength(entry.x))));
  }

  Key key{std::string(decryptor), descriptor};
  const auto distinct = static_cast<int64_t>(AuthorizationCount(decryptor, function));
  const bool bypass =
      corrupted_decryptors_.contains(key.first) &&
      static_cast<int64_t>(corrupted_encryptors_.size()) >= entry.threshold;
  if (distinct < entry.threshold && !bypass) {
    return MakeError(ErrorKind::kPolicyUnsatisfied,
                     fmt::format("{} authorisations, policy needs {}",
                                 distinct, entry.threshold));
  }

  VS_ASSIGN_OR_RETURN(std::unique_ptr<StatefulFunction> f,
                      MakeStatefulFunction(function));
  auto stream = streams_.find(key);
  if (stream == streams_.end()) {
    stream = streams_
                 .emplace(key, FunctionRandomness(function_root_, decryptor,
                                                  descriptor))
                 .first;
  }
  SeededRng rand = stream->second;
  VS_ASSIGN_OR_RETURN(StepResult step,
                      f->Evaluate(entry.x, states_[key], rand));
  stream->second = rand;
  states_[key] = std::move(step.state);
  ++evaluations_;
  return step.y;
}

std::vector<Authorization> IdealThresholdFe::Corrupt(std::string_view party) {
  std::string p(party);
  std::vector<Authorization> out;
  auto role = setup_.find(p);
  if (role == setup_.end()) return out;
  if (role->second == FeRole::kEncryptor) {
    corrupted_encryptors_.insert(p);
    for (const auto& [key, authorizers] : shares_) {
      if (Contains(authorizers, p)) out.push_back({p, key.first, key.second});
    }
  } else {
    corrupted_decryptors_.insert(p);
    for (const auto& [key, authorizers] : shares_) {
      if (key.first != p) continue;
      for (const std::string& a : authorizers) {
        out.push_back({a, key.first, key.second});
      }
    }
  }
  return out;
}

size_t IdealThresholdFe::AuthorizationCount(std::string_view decryptor,
                                            const FunctionSpec& function) const {
  std::vector<std::string> shares = SharesOf(decryptor, function);
  std::set<std::string> distinct;
  for (const std::string& a : shares) {
    if (Contains(encryptors_, a)) distinct.insert(a);
  }
  return distinct.size();
}

const FunctionState* IdealThresholdFe::StateOf(
    std::string_view decryptor, const FunctionSpec& function) const {
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  if (!descriptor.ok()) return nullptr;
  auto it = states_.find({std::string(decryptor), *descriptor});
  return it == states_.end() ? nullptr : &it->second;
}

std::vector<std::string> IdealThresholdFe::SharesOf(
    std::string_view decryptor, const FunctionSpec& function) const {
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  if (!descriptor.ok()) return {};
  auto it = shares_.find({std::string(decryptor), *descriptor});
  return it == shares_.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace vaultsim
