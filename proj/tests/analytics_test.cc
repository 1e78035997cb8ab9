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
#include <memory>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "vaultsim/heatmap.h"
#include "vaultsim/ideal_fe.h"
#include "vaultsim/status.h"
#include "vaultsim/threshold_fe.h"

namespace vaultsim {
namespace {

constexpr uint64_t kSeed = 17;

class AnalyticsTest : public ::testing::Test {
 protected:
  AnalyticsTest()
      : reality_(&clock_, {std::string(kEnPid), std::string(kAppPid)}),
        fe_(Config()),
        protocol_(&reality_, &clock_, EnConfig{}, &fe_),
        ideal_(&reality_, &clock_, EnConfig{}, SeededRng(kSeed).Derive("function")) {
    alpha_ = *FunctionSpec::Parse("byte-concat-length");
    for (int t = 0; t < 5; ++t) {
      clock_.Increment();
      for (const char* u : users_) {
        RealityRecord r{u, clock_.Now(), {}, 0.0, std::string(u) != "u4",
                        SensitiveData{0, static_cast<uint32_t>(t), static_cast<uint32_t>(t % 3)}};
        EXPECT_TRUE(reality_.Input(u, r).ok());
      }
    }
  }

  static ThresholdFeProtocol::Config Config() {
    ThresholdFeProtocol::Config c;
    c.seed = kSeed;
    c.function_root = SeededRng(kSeed).Derive("function");
    return c;
  }

  // Runs `op` against both services and expects identical observations.
  template <typename Op>
  void Both(Op op) {
    auto a = op(static_cast<AnalyticsService&>(protocol_));
    auto b = op(static_cast<AnalyticsService&>(ideal_));
    EXPECT_EQ(a, b);
  }

  static std::string Show(const absl::StatusOr<std::optional<Bytes>>& r) {
    if (!r.ok()) return ObservableStatus(r.status());
    return r->has_value() ? ToHex(**r) : "gated";
  }

  std::vector<const char*> users_ = {"u1", "u2", "u3", "u4"};
  Clock clock_;
  Reality reality_;
  ThresholdFeProtocol fe_;
  AnalyticsProtocol protocol_;
  IdealAnalytics ideal_;
  FunctionSpec alpha_;
};

TEST_F(AnalyticsTest, ProtocolMatchesIdealThroughGating) {
  for (AnalyticsService* s : {static_cast<AnalyticsService*>(&protocol_),
                              static_cast<AnalyticsService*>(&ideal_)}) {
    ASSERT_TRUE(s->Setup("identity").ok());
    for (const char* u : users_) s->Activate(u);
    ASSERT_TRUE(s->RegisterAnalyst("analyst", alpha_).ok());
  }
  for (const char* u : users_) {
    Both([&](AnalyticsService& s) { return ObservableStatus(s.ShareExposure(u)); });
  }
  Both([&](AnalyticsService& s) { return Show(s.Analyse("analyst", alpha_)); });
  for (const char* u : {"u1", "u2", "u4"}) {
    Both([&](AnalyticsService& s) { return ObservableStatus(s.Accept(u, alpha_, "analyst")); });
    Both([&](AnalyticsService& s) { return Show(s.Analyse("analyst", alpha_)); });
  }
  absl::StatusOr<std::optional<Bytes>> y = protocol_.Analyse("analyst", alpha_);
  ASSERT_TRUE(y.ok() && y->has_value());
  EXPECT_GT(*DecodeInt(**y), 0);
  Both([&](AnalyticsService& s) { return s.Corrupt("u1"); });
}

TEST_F(AnalyticsTest, UploadBufferIsWipedAndCiphertextPosted) {
  ASSERT_TRUE(protocol_.ShareExposure("u1").ok());
  const Bytes* buffer = protocol_.SecBuffer("u1");
  ASSERT_NE(buffer, nullptr);
  EXPECT_FALSE(buffer->empty());
  EXPECT_TRUE(std::all_of(buffer->begin(), buffer->end(), [](uint8_t b) { return b == 0; }));
  EXPECT_EQ(protocol_.board().Retrieve().size(), 1u);
  EXPECT_TRUE(IsError(protocol_.ShareExposure("u4"), ErrorKind::kRejected));
  EXPECT_EQ(protocol_.board().Retrieve().size(), 1u);
}

TEST_F(AnalyticsTest, SkippingPrecheckStillGatesInsideTheEnclave) {
  ASSERT_TRUE(protocol_.RegisterAnalyst("analyst", alpha_).ok());
  for (const char* u : {"u1", "u2", "u3"}) ASSERT_TRUE(protocol_.ShareExposure(u).ok());
  ASSERT_TRUE(protocol_.Accept("u1", alpha_, "analyst").ok());
  protocol_.set_skip_precheck(true);
  absl::StatusOr<std::optional<Bytes>> y = protocol_.Analyse("analyst", alpha_);
  ASSERT_TRUE(y.ok()) << y.status();
  EXPECT_FALSE(y->has_value());
}

TEST_F(AnalyticsTest, PrecheckedGatingLeavesNoOpenBatch) {
  ASSERT_TRUE(protocol_.RegisterAnalyst("analyst", alpha_).ok());
  for (const char* u : {"u1", "u2", "u3"}) ASSERT_TRUE(protocol_.ShareExposure(u).ok());
  ASSERT_TRUE(protocol_.Accept("u1", alpha_, "analyst").ok());
  EXPECT_FALSE(protocol_.Analyse("analyst", alpha_)->has_value());
  ASSERT_TRUE(protocol_.Accept("u3", alpha_, "analyst").ok());
  absl::StatusOr<std::optional<Bytes>> first = protocol_.Analyse("analyst", alpha_);
  absl::StatusOr<std::optional<Bytes>> second = protocol_.Analyse("analyst", alpha_);
  ASSERT_TRUE(first.ok() && first->has_value()) << first.status();
  ASSERT_TRUE(second.ok() && second->has_value()) << second.status();
  EXPECT_EQ(**first, **second);
}

TEST_F(AnalyticsTest, UnregisteredOrNonAnalysisFunctions) {
  FunctionSpec f0 = LeakageSpec();
  EXPECT_FALSE(IsAnalysisFunction(f0));
  EXPECT_TRUE(IsAnalysisFunction(HeatmapParams{}.ToSpec()));
  for (AnalyticsService* s : {static_cast<AnalyticsService*>(&protocol_),
                              static_cast<AnalyticsService*>(&ideal_)}) {
    ASSERT_TRUE(s->RegisterAnalyst("analyst", f0).ok());
    ASSERT_TRUE(s->ShareExposure("u1").ok());
    EXPECT_TRUE(IsError(s->Accept("u1", f0, "analyst"), ErrorKind::kRejected));
    EXPECT_TRUE(IsError(s->Analyse("analyst", alpha_).status(), ErrorKind::kRejected));
    EXPECT_TRUE(IsError(s->Accept("u2", alpha_, "analyst"), ErrorKind::kRejected));
  }
  EXPECT_FALSE(fe_.IsSetUp("analyst"));
}

TEST_F(AnalyticsTest, CorruptReportsEachGrantOnce) {
  FunctionSpec other = *FunctionSpec::Parse("integer-sum");
  ASSERT_TRUE(protocol_.RegisterAnalyst("analyst", alpha_).ok());
  ASSERT_TRUE(protocol_.RegisterAnalyst("analyst", other).ok());
  ASSERT_TRUE(protocol_.ShareExposure("u1").ok());
  ASSERT_TRUE(protocol_.Accept("u1", alpha_, "analyst").ok());
  ASSERT_TRUE(protocol_.Accept("u1", alpha_, "analyst").ok());
  ASSERT_TRUE(protocol_.Accept("u1", other, "analyst").ok());
  std::vector<AnalystGrant> grants = protocol_.Corrupt("u1");
  EXPECT_EQ(grants.size(), 2u);
  EXPECT_TRUE(protocol_.en().IsCorrupt("u1"));
}

}  // namespace
}  // namespace vaultsim
