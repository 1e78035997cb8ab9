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

#ifndef VAULTSIM_ATTESTATION_H_
#define VAULTSIM_ATTESTATION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/crypto.h"
#include "vaultsim/rng.h"

namespace vaultsim {

using EnclaveId = uint64_t;

// Private enclave memory. Only the running program sees it.
using EnclaveMemory = std::map<std::string, Bytes, std::less<>>;

struct EnclaveContext {
  std::string idx;  // session id of the installing party
  EnclaveId eid = 0;
  std::string owner;  // the resuming party
  Bytes vk_att;
};

// A program loaded into an enclave. One instance per enclave; `id` is the
// program descriptor covered by every attestation.
class EnclaveProgram {
 public:
  virtual ~EnclaveProgram() = default;

  virtual const Bytes& id() const = 0;
  virtual std::string_view name() const = 0;
  virtual absl::StatusOr<Bytes> Run(ByteView input, EnclaveMemory& memory,
                                    const EnclaveContext& context) = 0;
};

struct AttestedOutput {
  Bytes output;
  Bytes signature;
};

// idx | eid | program id | output, each length-prefixed.
Bytes AttestationMessage(std::string_view idx, EnclaveId eid,
                         ByteView program_id, ByteView output);
bool VerifyAttestation(ByteView vk_att, std::string_view idx, EnclaveId eid,
                       ByteView program_id, ByteView output,
                       ByteView signature);

// The attested-execution registry. Enclave ids come from a counter starting
// at 1. A resume runs against a copy of the enclave memory which is committed
// only when the program succeeds.
class AttestationService {
 public:
  AttestationService(std::string sid, SeededRng rng);

  const Bytes& GetPk();
  const std::string& sid() const { return sid_; }

  absl::StatusOr<EnclaveId> Install(std::string_view party,
                                    std::string_view sid,
                                    std::unique_ptr<EnclaveProgram> program);
  absl::StatusOr<AttestedOutput> Resume(std::string_view party, EnclaveId eid,
                                        ByteView input);

  size_t enclave_count() const { return enclaves_.size(); }

 private:
  struct Record {
    std::string idx;
    std::string owner;
    std::unique_ptr<EnclaveProgram> program;
    EnclaveMemory memory;
  };

  std::string sid_;
  SeededRng rng_;
  std::optional<SigKeyPair> master_;
  std::map<EnclaveId, Record> enclaves_;
  EnclaveId next_eid_ = 1;
};

}  // namespace vaultsim

#endif  // VAULTSIM_ATTESTATION_H_
