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

#include "vaultsim/exposure.h"

#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "vaultsim/rng.h"
#include "vaultsim/status.h"
#include "vaultsim/world.h"

namespace vaultsim {
namespace {

TEST(ThresholdPolicyTest, Values) {
  ThresholdPolicy majority = ThresholdPolicy::Majority();
  EXPECT_EQ(majority(0), 0);
  EXPECT_EQ(majority(1), 1);
  EXPECT_EQ(majority(4), 2);
  EXPECT_EQ(majority(5), 3);
  EXPECT_EQ(ThresholdPolicy::All()(7), 7);
  EXPECT_EQ(ThresholdPolicy::Fixed(3)(2), 2);
  EXPECT_EQ(ThresholdPolicy::Fixed(3)(10), 3);
}

TEST(ThresholdPolicyTest, AlwaysWithinRange) {
  for (const char* text : {"majority", "all", "fixed:0", "fixed:4", "fixed:100"}) {
    ThresholdPolicy k = *ThresholdPolicy::Parse(text);
    EXPECT_EQ(k.ToString(), text);
    for (int64_t n = 0; n < 50; ++n) {
      EXPECT_GE(k(n), 0);
      EXPECT_LE(k(n), n);
    }
  }
}

TEST(ThresholdPolicyTest, ParseErrors) {
  for (const char* text : {"", "most", "fixed:", "fixed:-1", "fixed:2x"}) {
    EXPECT_TRUE(IsError(ThresholdPolicy::Parse(text).status(), ErrorKind::kParseError)) << text;
  }
}

// Walks every tick in the window and asks whether any qualifying contact
// exists at that tick.
int64_t RiskOracle(const std::string& user, const std::vector<RealityRecord>& mu,
                   const std::set<std::string>& shared, uint64_t now, const RiskParams& p) {
  int64_t risk = 0;
  for (uint64_t t = now > p.tau ? now - p.tau : 0; t <= now; ++t) {
    bool hit = false;
    for (const RealityRecord& r : mu) {
      if (r.time != t) continue;
      for (const auto& [peer, d] : r.dist) {
        if (d <= p.d_max && ((r.user == user && shared.count(peer) > 0) ||
                             (peer == user && shared.count(r.user) > 0))) {
          hit = true;
        }
      }
    }
    risk += hit ? 1 : 0;
  }
  return risk;
}

TEST(DefaultRiskTest, MatchesOracleOnRandomContacts) {
  SeededRng rng(21);
  const std::vector<std::string> users = {"u0", "u1", "u2", "u3", "u4"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RealityRecord> mu;
    for (int i = rng.Uniform(40); i > 0; --i) {
      RealityRecord r;
      r.user = users[rng.Uniform(users.size())];
      r.time = rng.Uniform(60);
      for (int j = rng.Uniform(3); j > 0; --j) {
        r.dist[users[rng.Uniform(users.size())]] = rng.UniformDouble() * 5;
      }
      mu.push_back(r);
    }
    std::set<std::string> shared;
    for (const std::string& u : users) {
      if (rng.Uniform(3) == 0) shared.insert(u);
    }
    RiskParams p{0.5 + rng.UniformDouble() * 3, 1 + rng.Uniform(30)};
    uint64_t now = rng.Uniform(70);
    const std::string& user = users[rng.Uniform(users.size())];
    EXPECT_EQ(DefaultRisk(user, mu, shared, now, p), RiskOracle(user, mu, shared, now, p));
  }
}

TEST(DefaultRiskTest, BoundaryIsInclusive) {
  RiskParams p{2.0, 5};
  std::vector<RealityRecord> mu = {{"u", 5, {{"s", 2.0}}}, {"u", 10, {{"s", 2.0}}},
                                   {"u", 4, {{"s", 0.1}}}, {"s", 7, {{"u", 2.01}}}};
  EXPECT_EQ(DefaultRisk("u", mu, {"s"}, 10, p), 2);
  EXPECT_FALSE((RiskParams{0, 1}).Validate().ok());
}

class ExposureTest : public ::testing::Test {
 protected:
  ExposureTest()
      : reality_(&clock_, {std::string(kEnPid)}),
        en_(&reality_, &clock_, EnConfig{}) {}

  void Feed(const std::string& user, std::map<std::string, double> dist, bool infected) {
    RealityRecord r{user, clock_.Now(), std::move(dist), 0.0, infected, std::nullopt};
    ASSERT_TRUE(reality_.Input(user, r).ok());
  }

  Clock clock_;
  Reality reality_;
  ExposureNotification en_;
};

TEST_F(ExposureTest, ShareThenCheck) {
  ASSERT_TRUE(en_.Setup("identity").ok());
  en_.Activate("a");
  en_.Activate("b");
  clock_.Increment();
  Feed("a", {{"b", 1.0}}, true);
  Feed("b", {{"a", 1.0}}, false);
  clock_.Increment();
  Feed("a", {{"b", 9.0}}, true);
  Feed("b", {{"a", 9.0}}, false);
  ASSERT_TRUE(en_.ShareExposure("a").ok());
  EXPECT_FALSE(en_.IsActive("a"));
  EXPECT_EQ(*en_.ExposureCheck("b"), 1);
  EXPECT_TRUE(IsError(en_.ExposureCheck("a").status(), ErrorKind::kRejected));
  EXPECT_TRUE(IsError(en_.ShareExposure("a"), ErrorKind::kRejected));
  en_.Activate("a");
  EXPECT_FALSE(en_.IsActive("a"));
}

TEST_F(ExposureTest, UninfectedShareIsRejected) {
  en_.Activate("b");
  clock_.Increment();
  Feed("b", {}, false);
  EXPECT_TRUE(IsError(en_.ShareExposure("b"), ErrorKind::kRejected));
  EXPECT_TRUE(en_.shared().empty());
}

TEST_F(ExposureTest, FakedDistanceChangesRisk) {
  en_.Activate("b");
  clock_.Increment();
  Feed("a", {{"b", 50.0}}, true);
  Feed("b", {{"a", 50.0}}, false);
  ASSERT_TRUE(en_.ShareExposure("a").ok());
  EXPECT_EQ(*en_.ExposureCheck("b"), 0);
  en_.Fake(MarkDistance("b", "a", 0.5, 1));
  EXPECT_EQ(*en_.ExposureCheck("b"), 1);
}

TEST_F(ExposureTest, DisallowedErrorFunction) {
  EXPECT_TRUE(IsError(en_.Setup("shift:3"), ErrorKind::kRejected));
}

TEST_F(ExposureTest, LeakHidesSec) {
  en_.Activate("a");
  clock_.Increment();
  RealityRecord r{"a", 1, {}, 0.0, false, SensitiveData{0, 1, 3}};
  ASSERT_TRUE(reality_.Input("a", r).ok());
  ASSERT_TRUE(en_.ExposureCheck("a").ok());
  LeakView leak = en_.Leak();
  ASSERT_EQ(leak.noisy.size(), 1u);
  EXPECT_FALSE(leak.noisy[0].sec.has_value());
  EXPECT_EQ(leak.active, (std::vector<std::string>{"a"}));
}

}  // namespace
}  // namespace vaultsim
