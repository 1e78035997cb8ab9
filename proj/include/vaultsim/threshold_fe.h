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

#ifndef VAULTSIM_THRESHOLD_FE_H_
#define VAULTSIM_THRESHOLD_FE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vaultsim/attestation.h"
#include "vaultsim/crypto.h"
#include "vaultsim/enclave_programs.h"
#include "vaultsim/fe_service.h"
#include "vaultsim/op_counter.h"
#include "vaultsim/setups.h"

namespace vaultsim {

inline constexpr std::string_view kAuthorityPid = "authority";

struct DecryptorOptions {
  // Present every received share to the DE instead of one per signer.
  bool present_raw_shares = false;
  DeOptions de;
};

// The enclave-based protocol. Owns the setup functionalities of one session
// (attestation, certification, CRS, repository, channels) and the state of
// every party: the authority C, encryptors and decryptors.
class ThresholdFeProtocol final : public FunctionalEncryptionService {
 public:
  struct Config {
    std::string sid = "run";
    uint64_t seed = 0;
    // Shared with the ideal functionality when comparing the two.
    std::optional<SeededRng> function_root;
    OpCounter* counter = nullptr;
    const ProofSystem* proofs = nullptr;
  };

  explicit ThresholdFeProtocol(Config config);

  absl::Status Setup(std::string_view party, FeRole role) override;
  absl::Status KeyShareGen(std::string_view encryptor,
                           const FunctionSpec& function,
                           std::string_view decryptor) override;
  absl::StatusOr<Handle> Encrypt(std::string_view party, ByteView x,
                                 int64_t threshold) override;
  absl::StatusOr<AggregatorOutput> Decrypt(std::string_view decryptor,
                                           const FunctionSpec& function,
                                           Handle h) override;
  std::vector<Authorization> Corrupt(std::string_view party) override;

  size_t AuthorizationCount(std::string_view decryptor,
                            const FunctionSpec& function) const override;
  size_t encryptor_count() const override { return encryptors_.size(); }
  bool IsSetUp(std::string_view party) const override;

  // Takes effect for decryptors set up afterwards (DE options) or
  // immediately (share presentation).
  void SetDecryptorOptions(std::string_view decryptor,
                           DecryptorOptions options);
  // Delivers `share` to `decryptor` as if sent by `sender`.
  void InjectShare(std::string_view decryptor, std::string_view sender,
                   KeyShare share);
  // Decrypt variant with the enclave's short-circuit argument set.
  absl::StatusOr<AggregatorOutput> DecryptShortCircuit(
      std::string_view decryptor, const FunctionSpec& function, Handle h,
      Bytes y);

  AttestationService& attestation() { return att_; }
  CertAuthority& cert_authority() { return ca_; }
  Repository& repository() { return rep_; }
  SecureChannels& channels() { return sc_; }
  const Crs& crs() { return crs_.Get(); }
  std::optional<EnclaveId> kme_eid() const { return kme_eid_; }
  std::vector<KeyShare> SharesHeld(std::string_view decryptor,
                                         const FunctionSpec& function) const;
  uint64_t kme_installs() const { return kme_installs_; }

 private:
  struct EncryptorContext {
    Bytes mpk;
    Bytes crs;
    SigKeyPair sig;
    Certificate cert;
    std::vector<std::pair<std::string, Bytes>> issued;  // (B, F)
  };

  struct FeEntry {
    EnclaveId eid = 0;
    Bytes init_output;
    Bytes signature;
  };

  struct DecryptorContext {
    Bytes mpk;
    Bytes crs;
    EnclaveId eid_de = 0;
    std::map<Bytes, std::vector<std::pair<std::string, KeyShare>>> shares;
    std::map<Bytes, FeEntry> functions;
  };

  struct SetupGrant {
    Bytes mpk;
    EnclaveId eid_kme = 0;
    Bytes kme_signature;
    Bytes crs;
  };

  absl::Status EnsureAuthority();
  absl::StatusOr<SetupGrant> RequestSetup(std::string_view party);
  absl::Status SetupEncryptor(std::string_view party, const SetupGrant& grant);
  absl::Status SetupDecryptor(std::string_view party, const SetupGrant& grant);
  absl::StatusOr<Bytes> AuthorityProvision(std::string_view from,
                                           ByteView request);
  void ReceiveShare(std::string_view decryptor, std::string_view sender,
                    ByteView message);
  std::vector<KeyShare> SharesToPresent(std::string_view decryptor,
                                        const DecryptorContext& ctx,
                                        const Bytes& descriptor) const;
  absl::StatusOr<AggregatorOutput> DecryptImpl(std::string_view decryptor,
                                               const FunctionSpec& function,
                                               Handle h,
                                               std::optional<Bytes> y);
  SeededRng& PartyRng(std::string_view party);

  Config config_;
  const ProofSystem& proofs_;
  SeededRng root_;
  SeededRng function_root_;
  AttestationService att_;
  mutable CertAuthority ca_;
  CrsFunctionality crs_;
  Repository rep_;
  SecureChannels sc_;

  std::optional<Bytes> mpk_;
  std::optional<EnclaveId> kme_eid_;
  Bytes kme_signature_;
  uint64_t kme_installs_ = 0;

  std::map<std::string, SeededRng> party_rngs_;
  std::map<std::string, EncryptorContext> encryptors_;
  std::map<std::string, DecryptorContext> decryptors_;
  std::map<std::string, DecryptorOptions> options_;
  std::set<std::string> corrupted_;
};

}  // namespace vaultsim

#endif  // VAULTSIM_THRESHOLD_FE_H_
