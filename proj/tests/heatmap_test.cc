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

#include <algorithm>
#include <numeric>
#include <vector>

#include <map>
#include <string>

#include "gtest/gtest.h"
#include "support/oracles.h"
#include "vaultsim/driver.h"
#include "vaultsim/heatmap.h"
#include "vaultsim/rng.h"
#include "vaultsim/sec.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

HeatmapParams Params(int64_t cells, int64_t q, int64_t days) {
  HeatmapParams p;
  p.cells = cells;
  p.min_users = q;
  p.days = days;
  return p;
}

UserMatrix RandomMatrix(SeededRng& rng, const HeatmapParams& p) {
  UserMatrix u;
  for (int64_t d = 0; d < p.days; ++d) {
    std::vector<int64_t> row(p.cells, 0);
    for (int h = 0; h < 24; ++h) ++row[rng.Uniform(p.cells)];
    u.rows.push_back(row);
  }
  return u;
}

int64_t Total(const DayVector& y) { return std::accumulate(y.begin(), y.end(), int64_t{0}); }

TEST(HeatmapStepTest, SingleMatrixHandExecution) {
  HeatmapParams p = Params(3, 1, 2);
  HeatmapState s;
  HeatmapStepResult r = *HeatmapStep({UserMatrix{{{24, 0, 0}, {0, 24, 0}}}}, s, p);
  EXPECT_EQ(r.y, (DayVector{24, 24, 0}));
  EXPECT_EQ(s.m.size(), 1u);
}

TEST(HeatmapStepTest, TooFewContributorsGiveZero) {
  HeatmapParams p = Params(3, 3, 1);
  HeatmapState s;
  HeatmapStepResult r = *HeatmapStep({UserMatrix{{{24, 0, 0}}}, UserMatrix{{{0, 0, 24}}}}, s, p);
  EXPECT_EQ(r.y, (DayVector{0, 0, 0}));
  EXPECT_EQ(s.m.size(), 2u);
}

TEST(HeatmapStepTest, MalformedMatrixIsSetAside) {
  HeatmapParams p = Params(2, 1, 1);
  HeatmapState s;
  HeatmapStepResult r =
      *HeatmapStep({UserMatrix{{{23, 0}}}, UserMatrix{{{10, 14}}}, UserMatrix{}}, s, p);
  EXPECT_EQ(r.y, (DayVector{10, 14}));
  EXPECT_EQ(r.rejected, (std::vector<size_t>{0, 2}));
  EXPECT_EQ(s.m.size(), 1u);
}

TEST(HeatmapStepTest, StrictModeLeavesStateUntouched) {
  HeatmapParams p = Params(2, 1, 2);
  p.strict = true;
  HeatmapState s;
  ASSERT_TRUE(HeatmapStep({UserMatrix{{{24, 0}, {0, 24}}}}, s, p).ok());
  HeatmapState before = s;
  absl::StatusOr<HeatmapStepResult> r =
      HeatmapStep({UserMatrix{{{12, 12}, {12, 12}}}, UserMatrix{{{25, 0}, {0, 24}}}}, s, p);
  EXPECT_TRUE(IsError(r.status(), ErrorKind::kRejected));
  EXPECT_EQ(s, before);
}

TEST(HeatmapStepTest, WellFormedness) {
  EXPECT_TRUE(HeatmapWellFormed(UserMatrix{{{24, 0}, {0, 24}}}));
  EXPECT_FALSE(HeatmapWellFormed(UserMatrix{{{25, 0}}}));
  EXPECT_TRUE(HeatmapWellFormed(UserMatrix{}));
}

TEST(HeatmapStepTest, ConservationWithFullBuffers) {
  SeededRng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    HeatmapParams p = Params(1 + rng.Uniform(6), 1 + rng.Uniform(3), 1 + rng.Uniform(4));
    std::vector<UserMatrix> x;
    for (uint64_t i = rng.Uniform(8); i > 0; --i) x.push_back(RandomMatrix(rng, p));
    HeatmapState s;
    DayVector y = HeatmapStep(x, s, p)->y;
    if (Total(y) != 0) {
      EXPECT_EQ(Total(y), 24 * p.days * static_cast<int64_t>(s.m.size()));
    }
  }
}

TEST(HeatmapStepTest, ConservationAfterAgeing) {
  // Each live day row carries exactly 24 hours, including rows in buffers
  // that have started to age out.
  SeededRng rng(2);
  HeatmapParams p = Params(4, 1, 3);
  HeatmapState s;
  for (int step = 0; step < 8; ++step) {
    std::vector<UserMatrix> x;
    for (uint64_t i = rng.Uniform(3); i > 0; --i) x.push_back(RandomMatrix(rng, p));
    DayVector y = HeatmapStep(x, s, p)->y;
    int64_t live_rows = 0;
    for (const auto& buffer : s.m) {
      for (const DayVector& day : buffer) live_rows += Total(day) != 0 ? 1 : 0;
    }
    EXPECT_EQ(Total(y), 24 * live_rows);
  }
}

TEST(HeatmapStepTest, EvictionAfterWindow) {
  SeededRng rng(3);
  HeatmapParams p = Params(3, 1, 3);
  HeatmapState s;
  ASSERT_TRUE(HeatmapStep({RandomMatrix(rng, p), RandomMatrix(rng, p)}, s, p).ok());
  DayVector y;
  for (int d = 0; d < p.days; ++d) {
    EXPECT_FALSE(s.m.empty());
    y = HeatmapStep({}, s, p)->y;
  }
  EXPECT_TRUE(s.m.empty());
  EXPECT_EQ(y, DayVector(3, 0));
}

TEST(HeatmapStepTest, PermutationInvariant) {
  SeededRng rng(4);
  HeatmapParams p = Params(5, 2, 2);
  std::vector<UserMatrix> x;
  for (int i = 0; i < 6; ++i) x.push_back(RandomMatrix(rng, p));
  HeatmapState s1;
  DayVector y1 = HeatmapStep(x, s1, p)->y;
  for (int i = 0; i < 10; ++i) {
    std::shuffle(x.begin(), x.end(), rng);
    HeatmapState s2;
    EXPECT_EQ(HeatmapStep(x, s2, p)->y, y1);
  }
}

TEST(EncodeSecTest, OneDayOneCell) {
  HeatmapParams p = Params(4, 1, 1);
  std::vector<SensitiveData> samples;
  for (uint32_t h = 0; h < 24; ++h) samples.push_back({2, h, 0});
  EXPECT_EQ(EncodeSecHistory(samples, 2, p)->rows, (std::vector<DayVector>{{24, 0, 0, 0}}));
}

TEST(EncodeSecTest, SplitDay) {
  HeatmapParams p = Params(4, 1, 1);
  std::vector<SensitiveData> samples;
  for (uint32_t h = 0; h < 24; ++h) samples.push_back({0, h, h < 12 ? 0u : 1u});
  EXPECT_EQ(EncodeSecHistory(samples, 0, p)->rows, (std::vector<DayVector>{{12, 12, 0, 0}}));
}

TEST(EncodeSecTest, MissingHoursGoHome) {
  HeatmapParams p = Params(3, 1, 2);
  p.home_cell = 2;
  std::vector<SensitiveData> samples;
  for (uint32_t h = 0; h < 20; ++h) samples.push_back({1, h, 1});
  UserMatrix u = *EncodeSecHistory(samples, 1, p);
  ASSERT_EQ(u.rows.size(), 2u);
  EXPECT_EQ(u.rows[0], (DayVector{0, 0, 24}));  // day 0: nothing sampled
  EXPECT_EQ(u.rows[1], (DayVector{0, 20, 4}));
  for (const DayVector& row : u.rows) EXPECT_EQ(Total(row), 24);
}

TEST(EncodeSecTest, WindowIgnoresOlderDaysAndLaterSamplesWin) {
  HeatmapParams p = Params(3, 1, 1);
  std::vector<SensitiveData> samples = {{0, 5, 2}, {1, 5, 1}, {1, 5, 2}};
  EXPECT_EQ(EncodeSecHistory(samples, 1, p)->rows, (std::vector<DayVector>{{23, 0, 1}}));
}

TEST(EncodeSecTest, OutOfRangeCellFails) {
  HeatmapParams p = Params(2, 1, 1);
  EXPECT_TRUE(IsError(EncodeSecHistory({{0, 0, 7}}, 0, p).status(), ErrorKind::kEncodeFailed));
}

TEST(HeatmapFunctionTest, WatermarkAggregatesEachUploadOnce) {
  HeatmapParams p = Params(2, 1, 2);
  std::unique_ptr<ListFunction> f = MakeHeatmapFunction(p);
  SecHistory a{24, {{1, 0, 1}}};
  SecHistory b{30, {{1, 3, 1}}};
  SeededRng rand(0);
  ListFunction::Output first = *f->Evaluate({a.Serialize()}, {}, rand);
  EXPECT_EQ(*DecodeHeatmapOutput(first.y), (DayVector{47, 1}));
  ListFunction::Output second = *f->Evaluate({a.Serialize(), b.Serialize()}, first.state, rand);
  // a has aged one day; b arrives with two full days.
  EXPECT_EQ(*DecodeHeatmapOutput(second.y), (DayVector{23 + 47, 1 + 1}));
  EXPECT_EQ(DecodeHeatmapState(second.state, p)->ingested, 2u);
}

TEST(HeatmapFunctionTest, UndecodableUploadIsRejectedNotFatal) {
  HeatmapParams p = Params(2, 1, 1);
  std::unique_ptr<ListFunction> f = MakeHeatmapFunction(p);
  SeededRng rand(0);
  ListFunction::Output out =
      *f->Evaluate({Bytes{1, 2, 3}, SecHistory{0, {{0, 0, 1}}}.Serialize()}, {}, rand);
  EXPECT_EQ(*DecodeHeatmapOutput(out.y), (DayVector{23, 1}));
  EXPECT_EQ(DecodeHeatmapState(out.state, p)->rejected_total, 1u);
}

TEST(HeatmapStateTest, EncodeDecodeRoundTrip) {
  SeededRng rng(6);
  HeatmapParams p = Params(3, 1, 2);
  HeatmapState s;
  ASSERT_TRUE(HeatmapStep({RandomMatrix(rng, p), RandomMatrix(rng, p)}, s, p).ok());
  ASSERT_TRUE(HeatmapStep({RandomMatrix(rng, p)}, s, p).ok());
  s.ingested = 3;
  EXPECT_EQ(*DecodeHeatmapState(EncodeHeatmapState(s), p), s);
}

TEST(CircularBufferTest, OverwritesOldest) {
  CircularBuffer<int> b(2);
  b.Append(1);
  b.Append(2);
  b.Append(3);
  EXPECT_EQ(std::vector<int>(b.begin(), b.end()), (std::vector<int>{2, 3}));
  EXPECT_TRUE(b.full());
}

class HeatmapOracleTest : public ::testing::TestWithParam<RunMode> {};

TEST_P(HeatmapOracleTest, DriverMatchesBruteForce) {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    Scenario s = testing::RandomHeatmapScenario(seed);
    absl::StatusOr<Transcript> t = RunScenario(s, GetParam());
    ASSERT_TRUE(t.ok()) << t.status();
    std::map<size_t, std::string> outcome;
    for (const EventRecord& e : t->events) outcome[e.line] = e.outcome;
    for (const testing::OracleRow& row : testing::HeatmapOracle(s)) {
      std::string want = row.y ? "y:" + ToHex(EncodeHeatmapOutput(*row.y)) : "gated";
      EXPECT_EQ(outcome[row.line], want) << "seed " << seed << " line " << row.line;
      if (row.y && row.contributors >= s.params.q) {
        EXPECT_EQ(Total(*row.y), 24 * row.live_days);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, HeatmapOracleTest,
                         ::testing::Values(RunMode::kProtocol, RunMode::kIdeal));

}  // namespace
}  // namespace vaultsim
