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

#include "vaultsim/threshold_fe.h"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "support/fe_trace.h"
#include "vaultsim/function.h"
#include "vaultsim/ideal_fe.h"
#include "vaultsim/rng.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

FunctionSpec Spec(std::string_view text) { return *FunctionSpec::Parse(text); }

ThresholdFeProtocol::Config MakeConfig(uint64_t seed, OpCounter* counter = nullptr) {
  ThresholdFeProtocol::Config config;
  config.sid = "test";
  config.seed = seed;
  config.function_root = SeededRng(seed).Derive("function");
  config.counter = counter;
  return config;
}

std::string Encryptor(int i) { return fmt::format("a{}", i); }

class ThresholdFeTest : public ::testing::Test {
 protected:
  ThresholdFeTest() : fe_(MakeConfig(5)) {}

  void SetUpParties(int encryptors) {
    for (int i = 0; i < encryptors; ++i) {
      ASSERT_TRUE(fe_.Setup(Encryptor(i), FeRole::kEncryptor).ok());
    }
    ASSERT_TRUE(fe_.Setup("b", FeRole::kDecryptor).ok());
  }

  ThresholdFeProtocol fe_;
  FunctionSpec sum_ = Spec("byte-sum");
};

TEST_F(ThresholdFeTest, SetupOnce) {
  SetUpParties(1);
  EXPECT_TRUE(fe_.IsSetUp("a0"));
  EXPECT_TRUE(IsError(fe_.Setup("a0", FeRole::kEncryptor), ErrorKind::kAlreadySetup));
  EXPECT_EQ(fe_.encryptor_count(), 1u);
  EXPECT_EQ(fe_.kme_installs(), 1u);
}

TEST_F(ThresholdFeTest, ExactThresholdOpensAndOneLessDoesNot) {
  SetUpParties(6);
  SeededRng rng(11);
  for (int64_t k : {0, 1, 2, 3, 5}) {
    std::vector<int> order = {0, 1, 2, 3, 4, 5};
    std::shuffle(order.begin(), order.end(), rng);
    FunctionSpec f = Spec(k % 2 == 1 ? "byte-sum" : "integer-sum");
    ThresholdFeProtocol fe(MakeConfig(100 + k));
    for (int i = 0; i < 6; ++i) ASSERT_TRUE(fe.Setup(Encryptor(i), FeRole::kEncryptor).ok());
    ASSERT_TRUE(fe.Setup("b", FeRole::kDecryptor).ok());
    Handle h = *fe.Encrypt(Encryptor(order[0]), EncodeInt(42), k);
    for (int64_t i = 0; i + 1 < k; ++i) {
      ASSERT_TRUE(fe.KeyShareGen(Encryptor(order[i]), f, "b").ok());
    }
    if (k > 0) {
      EXPECT_TRUE(IsError(fe.Decrypt("b", f, h).status(), ErrorKind::kPolicyUnsatisfied))
          << "k=" << k;
      ASSERT_TRUE(fe.KeyShareGen(Encryptor(order[k - 1]), f, "b").ok());
    }
    absl::StatusOr<AggregatorOutput> out = fe.Decrypt("b", f, h);
    ASSERT_TRUE(out.ok()) << "k=" << k << " " << out.status();
    EXPECT_FALSE(out->pending());
  }
}

TEST_F(ThresholdFeTest, DuplicateSignerCountsOnce) {
  SetUpParties(2);
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b").ok());
  std::vector<KeyShare> held = fe_.SharesHeld("b", sum_);
  ASSERT_EQ(held.size(), 1u);
  fe_.InjectShare("b", "a1", held[0]);
  fe_.InjectShare("b", "a0", held[0]);
  EXPECT_EQ(fe_.SharesHeld("b", sum_).size(), 3u);
  EXPECT_EQ(fe_.AuthorizationCount("b", sum_), 1u);
  Handle h = *fe_.Encrypt("a0", Bytes{1}, 2);
  EXPECT_TRUE(IsError(fe_.Decrypt("b", sum_, h).status(), ErrorKind::kPolicyUnsatisfied));
  ASSERT_TRUE(fe_.KeyShareGen("a1", sum_, "b").ok());
  EXPECT_EQ(fe_.Decrypt("b", sum_, h)->value(), EncodeInt(1));
}

TEST_F(ThresholdFeTest, RawDuplicateSignersAbortTheProvision) {
  SetUpParties(2);
  fe_.SetDecryptorOptions("b", DecryptorOptions{.present_raw_shares = true});
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b").ok());
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b").ok());
  Handle h = *fe_.Encrypt("a0", Bytes{1}, 2);
  EXPECT_EQ(AbortCauseOf(fe_.Decrypt("b", sum_, h).status()), AbortCause::kDuplicateSigner);
}

TEST_F(ThresholdFeTest, LeakageNeedsNoShares) {
  SetUpParties(1);
  Handle h = *fe_.Encrypt("a0", Bytes(33, 1), 4);
  EXPECT_EQ(fe_.Decrypt("b", LeakageSpec(), h)->value(), EncodeInt(33));
}

TEST_F(ThresholdFeTest, TamperedSharesAreDropped) {
  SetUpParties(2);
  fe_.SetDecryptorOptions("b", DecryptorOptions{.present_raw_shares = true});
  ASSERT_TRUE(fe_.Setup("b2", FeRole::kDecryptor).ok());
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b2").ok());
  KeyShare good = fe_.SharesHeld("b2", sum_).front();
  Handle h1 = *fe_.Encrypt("a0", Bytes{9}, 1);
  Handle h2 = *fe_.Encrypt("a0", Bytes{9}, 2);
  SeededRng rng(12);
  for (int i = 0; i < 16; ++i) {
    KeyShare bad = good;
    Bytes* field = i % 2 == 0 ? &bad.sigma : &bad.cert.signature;
    size_t bit = rng.Uniform(field->size() * 8);
    (*field)[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    fe_.InjectShare("b", "a0", bad);
  }
  // Valid for b2, but the signed message names b2, not b.
  fe_.InjectShare("b", "a0", good);
  EXPECT_EQ(fe_.AuthorizationCount("b", sum_), 0u);
  EXPECT_TRUE(IsError(fe_.Decrypt("b", sum_, h1).status(), ErrorKind::kPolicyUnsatisfied));

  ASSERT_TRUE(fe_.KeyShareGen("a1", sum_, "b").ok());
  EXPECT_EQ(fe_.AuthorizationCount("b", sum_), 1u);
  EXPECT_EQ(fe_.Decrypt("b", sum_, h1)->value(), EncodeInt(9));
  EXPECT_TRUE(IsError(fe_.Decrypt("b", sum_, h2).status(), ErrorKind::kPolicyUnsatisfied));
}

TEST_F(ThresholdFeTest, StrictDecryptorAbortsOnTamperedShare) {
  ASSERT_TRUE(fe_.Setup("a0", FeRole::kEncryptor).ok());
  fe_.SetDecryptorOptions("b", DecryptorOptions{.de = DeOptions{.strict = true}});
  ASSERT_TRUE(fe_.Setup("b", FeRole::kDecryptor).ok());
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b").ok());
  KeyShare bad = fe_.SharesHeld("b", sum_).front();
  bad.sigma[0] ^= 1;
  fe_.InjectShare("b", "a0", bad);
  fe_.SetDecryptorOptions("b", DecryptorOptions{.present_raw_shares = true,
                                                .de = DeOptions{.strict = true}});
  Handle h = *fe_.Encrypt("a0", Bytes{9}, 0);
  EXPECT_FALSE(fe_.Decrypt("b", sum_, h).ok());
}

TEST_F(ThresholdFeTest, EncryptorsAndDecryptorsMayEncrypt) {
  SetUpParties(1);
  EXPECT_TRUE(fe_.Encrypt("a0", Bytes{1}, 0).ok());
  EXPECT_TRUE(fe_.Encrypt("b", Bytes{1}, 0).ok());
  EXPECT_TRUE(IsError(fe_.Encrypt("x", Bytes{1}, 0).status(), ErrorKind::kEncryptFailed));
  EXPECT_TRUE(IsError(fe_.Decrypt("a0", sum_, 1).status(), ErrorKind::kNotSetUp));
}

TEST_F(ThresholdFeTest, CorruptDisclosesIssuedShares) {
  SetUpParties(2);
  ASSERT_TRUE(fe_.KeyShareGen("a0", sum_, "b").ok());
  ASSERT_TRUE(fe_.KeyShareGen("a1", sum_, "b").ok());
  EXPECT_EQ(fe_.Corrupt("a0").size(), 1u);
  EXPECT_EQ(fe_.Corrupt("b").size(), 2u);
  EXPECT_TRUE(fe_.Corrupt("ghost").empty());
}

TEST_F(ThresholdFeTest, OpCountsArePerParty) {
  OpCounter counter;
  ThresholdFeProtocol fe(MakeConfig(3, &counter));
  ASSERT_TRUE(fe.Setup("a0", FeRole::kEncryptor).ok());
  ASSERT_TRUE(fe.Setup("b", FeRole::kDecryptor).ok());
  OpCounts before = counter.For("a0");
  ASSERT_TRUE(fe.Encrypt("a0", Bytes{1}, 0).ok());
  OpCounts after = counter.For("a0");
  EXPECT_EQ(after.pke_encrypt, before.pke_encrypt + 1);
  EXPECT_EQ(after.enclave_resumes, before.enclave_resumes);
}

class TraceEquivalenceTest : public ::testing::TestWithParam<uint64_t> {};

TEST_P(TraceEquivalenceTest, ProtocolMatchesIdeal) {
  const uint64_t seed = GetParam();
  std::vector<testing::FeOp> trace = testing::RandomFeTrace(seed, 4, 40);
  ThresholdFeProtocol real(MakeConfig(seed));
  IdealThresholdFe ideal(SeededRng(seed).Derive("function"));
  std::vector<testing::Observation> a = testing::Replay(real, trace);
  std::vector<testing::Observation> b = testing::Replay(ideal, trace);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]) << "step " << i << ": " << testing::Describe(trace[i])
                          << " real=" << a[i].result << " ideal=" << b[i].result;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TraceEquivalenceTest, ::testing::Range<uint64_t>(1, 41));

}  // namespace
}  // namespace vaultsim
