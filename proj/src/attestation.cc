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

#include "vaultsim/attestation.h"

#include <utility>

#include "fmt/format.h"
#include "vaultsim/op_counter.h"
#include "vaultsim/status.h"

namespace vaultsim {

Bytes AttestationMessage(std::string_view idx, EnclaveId eid,
                         ByteView program_id, ByteView output) {
  ByteWriter w;
  w.PutField(idx);
  w.PutU64Field(eid);
  w.PutField(program_id);
  w.PutField(output);
  return std::move(w).bytes();
}

bool VerifyAttestation(ByteView vk_att, std::string_view idx, EnclaveId eid,
                       ByteView program_id, ByteView output,
                       ByteView signature) {
  return Verify(vk_att, AttestationMessage(idx, eid, program_id, output),
                signature);
}

AttestationService::AttestationService(std::string sid, SeededRng rng)
    : sid_(std::move(sid)), rng_(std::move(rng)) {}

const Bytes& AttestationService::GetPk() {
  if (!master_.has_value()) {
    OpCounter::Scope hardware(nullptr, "");
    master_ = SigKeygen(rng_);
  }
  return master_->verification_key;
}

absl::StatusOr<EnclaveId> AttestationService::Install(
    std::string_view party, std::string_view sid,
    std::unique_ptr<EnclaveProgram> program) {
  if (sid != sid_) {
    return MakeError(ErrorKind::kInstallRejected,
                     fmt::format("{} used foreign session id {}", party, sid));
  }
  OpCounter::Record(OpKind::kEnclaveInstall);
  EnclaveId eid = next_eid_++;
  enclaves_.emplace(eid, Record{std::string(sid), std::string(party),
                                std::move(program), {}});
  return eid;
}

absl::StatusOr<AttestedOutput> AttestationService::Resume(
    std::string_view party, EnclaveId eid, ByteView input) {
  auto it = enclaves_.find(eid);
  if (it == enclaves_.end()) {
    return MakeError(ErrorKind::kNoSuchEnclave, fmt::format("eid {}", eid));
  }
  Record& record = it->second;
  if (record.owner != party) {
    return MakeError(ErrorKind::kResumeRejected,
                     fmt::format("eid {} belongs to {}", eid, record.owner));
  }
  OpCounter::Record(OpKind::kEnclaveResume);
  EnclaveContext context{record.idx, eid, record.owner, GetPk()};
  EnclaveMemory scratch = record.memory;
  VS_ASSIGN_OR_RETURN(Bytes output,
                      record.program->Run(input, scratch, context));
  record.memory = std::move(scratch);

  OpCounter::Scope hardware(nullptr, "");
  Bytes signature =
      Sign(master_->signing_key,
           AttestationMessage(record.idx, eid, record.program->id(), output));
  return AttestedOutput{std::move(output), std::move(signature)};
}

}  // namespace vaultsim
