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

#include <memory>
#include <string>

#include "gtest/gtest.h"
#include "vaultsim/attestation.h"
#include "vaultsim/crypto.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

// Counts its resumes in enclave memory and echoes the input back.
class CounterProgram final : public EnclaveProgram {
 public:
  CounterProgram() : id_(Sha256(ToBytes("counter-program"))) {}
  const Bytes& id() const override { return id_; }
  std::string_view name() const override { return "counter"; }
  absl::StatusOr<Bytes> Run(ByteView input, EnclaveMemory& memory,
                            const EnclaveContext&) override {
    uint8_t n = memory.contains("n") ? memory["n"][0] : 0;
    memory["n"] = Bytes{static_cast<uint8_t>(n + 1)};
    if (!input.empty() && input[0] == 0xff) {
      return EnclaveAbort(AbortCause::kMalformedInput, "poison");
    }
    Bytes out(input.begin(), input.end());
    out.push_back(static_cast<uint8_t>(n + 1));
    return out;
  }

 private:
  Bytes id_;
};

class AttestationTest : public ::testing::Test {
 protected:
  AttestationService att_{"sid", SeededRng(1)};
};

TEST_F(AttestationTest, PublicKeyIsStable) {
  Bytes pk = att_.GetPk();
  EXPECT_EQ(att_.GetPk(), pk);
  AttestationService other("sid", SeededRng(2));
  EXPECT_NE(other.GetPk(), pk);
}

TEST_F(AttestationTest, EnclaveIdsStartAtOneAndIncrease) {
  EXPECT_EQ(*att_.Install("C", "sid", std::make_unique<CounterProgram>()), 1u);
  EXPECT_EQ(*att_.Install("C", "sid", std::make_unique<CounterProgram>()), 2u);
}

TEST_F(AttestationTest, ForeignSessionIsRejected) {
  EXPECT_TRUE(IsError(att_.Install("C", "other", std::make_unique<CounterProgram>()).status(),
                      ErrorKind::kInstallRejected));
}

TEST_F(AttestationTest, ResumeOutputVerifies) {
  EnclaveId eid = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  AttestedOutput out = *att_.Resume("C", eid, ToBytes("hi"));
  CounterProgram p;
  EXPECT_TRUE(VerifyAttestation(att_.GetPk(), "sid", eid, p.id(), out.output, out.signature));
  EXPECT_EQ(out.output.back(), 1);
}

TEST_F(AttestationTest, ResumeByAnotherPartyIsRejected) {
  EnclaveId eid = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  EXPECT_TRUE(IsError(att_.Resume("B", eid, {}).status(), ErrorKind::kResumeRejected));
  EXPECT_TRUE(IsError(att_.Resume("C", eid + 7, {}).status(), ErrorKind::kNoSuchEnclave));
}

TEST_F(AttestationTest, AnyFieldSubstitutionBreaksVerification) {
  EnclaveId eid = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  AttestedOutput out = *att_.Resume("C", eid, ToBytes("payload"));
  const Bytes id = CounterProgram().id();
  const Bytes& vk = att_.GetPk();
  EXPECT_FALSE(VerifyAttestation(vk, "sid2", eid, id, out.output, out.signature));
  EXPECT_FALSE(VerifyAttestation(vk, "sid", eid + 1, id, out.output, out.signature));
  EXPECT_FALSE(VerifyAttestation(vk, "sid", eid, Sha256(ToBytes("x")), out.output, out.signature));
  Bytes other = out.output;
  other[0] ^= 1;
  EXPECT_FALSE(VerifyAttestation(vk, "sid", eid, id, other, out.signature));
  SeededRng rng(3);
  for (int i = 0; i < 64; ++i) {
    Bytes sig = out.signature;
    size_t bit = rng.Uniform(sig.size() * 8);
    sig[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(VerifyAttestation(vk, "sid", eid, id, out.output, sig));
  }
}

TEST_F(AttestationTest, MemoryPersistsOnlyAcrossSuccessfulRuns) {
  EnclaveId eid = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  EXPECT_EQ(att_.Resume("C", eid, {})->output.back(), 1);
  EXPECT_FALSE(att_.Resume("C", eid, Bytes{0xff}).ok());
  EXPECT_EQ(att_.Resume("C", eid, {})->output.back(), 2);
}

TEST_F(AttestationTest, EnclavesHaveSeparateMemory) {
  EnclaveId a = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  EnclaveId b = *att_.Install("C", "sid", std::make_unique<CounterProgram>());
  (void)att_.Resume("C", a, {});
  (void)att_.Resume("C", a, {});
  EXPECT_EQ(att_.Resume("C", b, {})->output.back(), 1);
}

}  // namespace
}  // namespace vaultsim
