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

#ifndef VAULTSIM_SETUPS_H_
#define VAULTSIM_SETUPS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/crypto.h"
#include "vaultsim/rng.h"

namespace vaultsim {

struct Certificate {
  Bytes subject_vk;
  Bytes signature;

  Bytes Serialize() const;
  static absl::StatusOr<Certificate> Parse(ByteView bytes);
  bool operator==(const Certificate&) const = default;
};

// Certification authority: one certificate per party id, ever.
class CertAuthority {
 public:
  explicit CertAuthority(SeededRng rng) : rng_(std::move(rng)) {}

  const Bytes& GetK();
  absl::StatusOr<Certificate> Sign(std::string_view party, ByteView vk);
  bool HasCertified(std::string_view party) const {
    return issued_.contains(std::string(party));
  }

 private:
  SeededRng rng_;
  std::optional<SigKeyPair> key_;
  std::map<std::string, Bytes> issued_;
};

bool VerifyCertificate(ByteView authority_vk, const Certificate& cert);

using Handle = uint64_t;

// Append-only ciphertext store. Handles count up from 1.
class Repository {
 public:
  Handle Write(CiphertextMsg payload);
  absl::StatusOr<CiphertextMsg> Read(Handle h) const;

  size_t size() const { return entries_.size(); }
  const std::map<Handle, CiphertextMsg>& entries() const { return entries_; }

 private:
  std::map<Handle, CiphertextMsg> entries_;
  Handle next_ = 1;
};

// Synchronous authenticated channels. Only message lengths are logged. Test
// hooks: a tap observes contents, an interceptor may rewrite them.
class SecureChannels {
 public:
  using Tap = std::function<void(std::string_view sender,
                                 std::string_view receiver, ByteView message)>;
  using Interceptor = std::function<Bytes(
      std::string_view sender, std::string_view receiver, Bytes message)>;

  Bytes Send(std::string_view sender, std::string_view receiver,
             Bytes message);
  std::vector<size_t> Leak(std::string_view sender,
                           std::string_view receiver) const;
  void set_tap(Tap tap) { tap_ = std::move(tap); }
  void set_interceptor(Interceptor interceptor) {
    interceptor_ = std::move(interceptor);
  }

 private:
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> log_;
  Tap tap_;
  Interceptor interceptor_;
};

// Bulletin board that only accepts items from currently infectious parties.
class BulletinBoard {
 public:
  using InfectiousPredicate = std::function<bool(std::string_view party)>;

  explicit BulletinBoard(InfectiousPredicate infectious)
      : infectious_(std::move(infectious)) {}

  bool Add(std::string_view party, Handle item);
  const std::vector<Handle>& Retrieve() const { return items_; }

 private:
  InfectiousPredicate infectious_;
  std::vector<Handle> items_;
};

}  // namespace vaultsim

#endif  // VAULTSIM_SETUPS_H_
