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

#ifndef VAULTSIM_ENCLAVE_PROGRAMS_H_
#define VAULTSIM_ENCLAVE_PROGRAMS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/attestation.h"
#include "vaultsim/bytes.h"
#include "vaultsim/crypto.h"
#include "vaultsim/function.h"
#include "vaultsim/rng.h"
#include "vaultsim/setups.h"

namespace vaultsim {

// An encryptor's authorization for decryptor B to evaluate `function`.
struct KeyShare {
  Bytes function;  // 32-byte descriptor
  Bytes sigma;     // over KeyShareMessage(function, B)
  Bytes signer_vk;
  Certificate cert;

  Bytes Serialize() const;
  static absl::StatusOr<KeyShare> Parse(ByteView bytes);
  bool operator==(const KeyShare&) const = default;
};

Bytes KeyShareMessage(ByteView function, std::string_view decryptor);

// Program descriptors. Each hashes in the certification authority key.
Bytes KmeProgramId(ByteView authority_vk);
Bytes DeProgramId(ByteView authority_vk);
Bytes FeProgramId(ByteView authority_vk, ByteView function);

// Handler messages. Every input starts with its handler name.

struct KmeInit {
  Bytes crs;
  std::string sid;
  Bytes Encode() const;
};

struct KmeProvision {
  Bytes pk_d;
  EnclaveId eid_de = 0;
  Bytes de_signature;  // attestation over the DE init-setup output
  Bytes Encode() const;
};

struct KmeProvisionOutput {
  Bytes pk_d;
  Bytes ct_key;
  Bytes Encode() const;
  static absl::StatusOr<KmeProvisionOutput> Decode(ByteView bytes);
};

struct DeInitSetup {
  EnclaveId eid_kme = 0;
  Bytes crs;
  Bytes Encode() const;
};

struct DeInitSetupOutput {
  Bytes pk_d;
  EnclaveId eid_kme = 0;
  Bytes crs;
  Bytes Encode() const;
  static absl::StatusOr<DeInitSetupOutput> Decode(ByteView bytes);
};

struct DeCompleteSetup {
  Bytes kme_output;
  Bytes kme_signature;
  Bytes Encode() const;
};

struct DeProvision {
  Bytes function;
  std::vector<KeyShare> shares;
  EnclaveId eid_fe = 0;
  Bytes fe_init_output;
  Bytes fe_signature;
  Bytes Encode() const;
};

struct DeProvisionOutput {
  Bytes function;
  EnclaveId eid_fe = 0;
  Bytes ct_key;  // msk under the FE enclave key
  uint64_t lks = 0;
  Bytes crs;
  Bytes Encode() const;
  static absl::StatusOr<DeProvisionOutput> Decode(ByteView bytes);
};

struct FeInitOutput {
  Bytes pk_fd;
  Bytes Encode() const;
  static absl::StatusOr<FeInitOutput> Decode(ByteView bytes);
};

struct FeRun {
  EnclaveId eid_de = 0;
  Bytes de_output;
  Bytes de_signature;
  Bytes ciphertext_msg;
  // Test hook: when set, the enclave returns it as the computed value and
  // does nothing else.
  std::optional<Bytes> short_circuit;
  Bytes Encode() const;
};

Bytes EncodeAggregatorOutput(const AggregatorOutput& y);
absl::StatusOr<AggregatorOutput> DecodeAggregatorOutput(ByteView bytes);

Bytes EncodeFeInit();

struct DeOptions {
  // Abort on any invalid share instead of dropping it.
  bool strict = false;
};

std::unique_ptr<EnclaveProgram> MakeKmeProgram(Bytes authority_vk,
                                               SeededRng rng);
std::unique_ptr<EnclaveProgram> MakeDeProgram(Bytes authority_vk, SeededRng rng,
                                              DeOptions options = {});
// `key_rng` generates the enclave key pair; `function_rand` feeds the
// function's randomness input across all runs.
absl::StatusOr<std::unique_ptr<EnclaveProgram>> MakeFeProgram(
    Bytes authority_vk, const FunctionSpec& function, SeededRng key_rng,
    SeededRng function_rand,
    const ProofSystem& proofs = DefaultProofSystem());

}  // namespace vaultsim

#endif  // VAULTSIM_ENCLAVE_PROGRAMS_H_
