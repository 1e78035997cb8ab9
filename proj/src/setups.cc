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

#include "vaultsim/setups.h"

#include "fmt/format.h"
#include "vaultsim/op_counter.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kCertTag = "vaultsim-cert-v1";

}  // namespace

Bytes Certificate::Serialize() const {
  return EncodeTagged("cert", subject_vk, signature);
}

absl::StatusOr<Certificate> Certificate::Parse(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "cert") return MakeError(ErrorKind::kMalformed, "not a cert");
  Certificate cert;
  VS_ASSIGN_OR_RETURN(cert.subject_vk, r.ReadField());
  VS_ASSIGN_OR_RETURN(cert.signature, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return cert;
}

const Bytes& CertAuthority::GetK() {
  if (!key_.has_value()) {
    OpCounter::Scope functionality(nullptr, "");
    key_ = SigKeygen(rng_);
  }
  return key_->verification_key;
}

absl::StatusOr<Certificate> CertAuthority::Sign(std::string_view party,
                                                ByteView vk) {
  GetK();
  if (!issued_.emplace(std::string(party), Bytes(vk.begin(), vk.end()))
           .second) {
    return MakeError(ErrorKind::kAlreadyCertified,
                     fmt::format("{} already holds a certificate", party));
  }
  OpCounter::Scope functionality(nullptr, "");
  Bytes subject(vk.begin(), vk.end());
  Bytes signature =
      vaultsim::Sign(key_->signing_key, EncodeTagged(kCertTag, subject));
  return Certificate{std::move(subject), std::move(signature)};
}

bool VerifyCertificate(ByteView authority_vk, const Certificate& cert) {
  return Verify(authority_vk, EncodeTagged(kCertTag, cert.subject_vk),
                cert.signature);
}

Handle Repository::Write(CiphertextMsg payload) {
  Handle h = next_++;
  entries_.emplace(h, std::move(payload));
  return h;
}

absl::StatusOr<CiphertextMsg> Repository::Read(Handle h) const {
  auto it = entries_.find(h);
  if (it == entries_.end()) {
    return MakeError(ErrorKind::kNoSuchHandle, fmt::format("handle {}", h));
  }
  return it->second;
}

Bytes SecureChannels::Send(std::string_view sender, std::string_view receiver,
                           Bytes message) {
  if (interceptor_) message = interceptor_(sender, receiver, std::move(message));
  log_[{std::string(sender), std::string(receiver)}].push_back(message.size());
  if (tap_) tap_(sender, receiver, message);
  return message;
}

std::vector<size_t> SecureChannels::Leak(std::string_view sender,
                                         std::string_view receiver) const {
  auto it = log_.find({std::string(sender), std::string(receiver)});
  return it == log_.end() ? std::vector<size_t>{} : it->second;
}

bool BulletinBoard::Add(std::string_view party, Handle item) {
  if (!infectious_ || !infectious_(party)) return false;
  items_.push_back(item);
  return true;
}

}  // namespace vaultsim
