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

#include <set>
#include <string>

#include "gtest/gtest.h"
#include "vaultsim/bytes.h"
#include "vaultsim/op_counter.h"
#include "vaultsim/rng.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

TEST(BytesTest, HexOfKnownBytes) {
  EXPECT_EQ(ToHex(Bytes{0x00, 0xab, 0x10}), "00ab10");
  EXPECT_EQ(ToHex(Bytes{}), "");
}

TEST(BytesTest, WriterReaderRoundTrip) {
  ByteWriter w;
  w.PutU32(7).PutU64(1ull << 40).PutField(std::string_view("abc")).PutU64Field(9);
  ByteReader r(w.bytes());
  EXPECT_EQ(*r.ReadU32(), 7u);
  EXPECT_EQ(*r.ReadU64(), 1ull << 40);
  EXPECT_EQ(*r.ReadStringField(), "abc");
  EXPECT_EQ(*r.ReadU64Field(), 9u);
  EXPECT_TRUE(r.ExpectDone().ok());
}

TEST(BytesTest, TruncatedFieldIsAnError) {
  ByteWriter w;
  w.PutField(std::string_view("abcdef"));
  Bytes b = w.bytes();
  b.pop_back();
  ByteReader r(b);
  EXPECT_FALSE(r.ReadField().ok());
}

TEST(BytesTest, TrailingBytesAreRejected) {
  Bytes b = ByteWriter().PutU32(1).bytes();
  b.push_back(0);
  ByteReader r(b);
  ASSERT_TRUE(r.ReadU32().ok());
  EXPECT_FALSE(r.ExpectDone().ok());
}

TEST(BytesTest, ContainsBytes) {
  EXPECT_TRUE(ContainsBytes(ToBytes("hello world"), ToBytes("o w")));
  EXPECT_FALSE(ContainsBytes(ToBytes("hello"), ToBytes("world")));
  EXPECT_FALSE(ContainsBytes(ToBytes("x"), Bytes{}));
}

TEST(BytesTest, TaggedEncodingSeparatesFields) {
  EXPECT_NE(EncodeTagged("t", ToBytes("ab"), ToBytes("c")),
            EncodeTagged("t", ToBytes("a"), ToBytes("bc")));
}

TEST(StatusTest, KindAndCauseSurviveTheStatus) {
  absl::Status s = EnclaveAbort(AbortCause::kDuplicateSigner, "vk twice");
  EXPECT_EQ(ErrorKindOf(s), ErrorKind::kEnclaveAbort);
  EXPECT_EQ(AbortCauseOf(s), AbortCause::kDuplicateSigner);
  EXPECT_TRUE(IsError(s, ErrorKind::kEnclaveAbort));
  EXPECT_FALSE(IsError(absl::OkStatus(), ErrorKind::kEnclaveAbort));
}

TEST(StatusTest, EveryKindHasAName) {
  for (int k = 0; k <= static_cast<int>(ErrorKind::kInvalidScenario); ++k) {
    EXPECT_NE(ErrorKindName(static_cast<ErrorKind>(k)), "Unknown") << k;
  }
}

TEST(RngTest, SameSeedSameStream) {
  SeededRng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, DifferentSeedsDiffer) {
  EXPECT_NE(SeededRng(1).Draw(32), SeededRng(2).Draw(32));
}

TEST(RngTest, DeriveDoesNotAdvanceParent) {
  SeededRng a(5), b(5);
  SeededRng child = a.Derive("x");
  EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(child.Draw(16), a.Derive("y").Draw(16));
  EXPECT_EQ(a.Derive("x").Draw(16), b.Derive("x").Draw(16));
}

TEST(RngTest, UniformStaysInRange) {
  SeededRng r(9);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    uint64_t v = r.Uniform(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(OpCounterTest, ScopesAttributeAndNest) {
  OpCounter counter;
  {
    OpCounter::Scope outer(&counter, "a");
    OpCounter::Record(OpKind::kSign);
    {
      OpCounter::Scope inner(&counter, "b");
      OpCounter::Record(OpKind::kVerify);
    }
    OpCounter::Record(OpKind::kPkeEncrypt);
    {
      OpCounter::Scope silent(nullptr, "");
      OpCounter::Record(OpKind::kSign);
    }
  }
  OpCounter::Record(OpKind::kSign);
  EXPECT_EQ(counter.For("a").sign, 1u);
  EXPECT_EQ(counter.For("a").pke_encrypt, 1u);
  EXPECT_EQ(counter.For("b").verify, 1u);
  EXPECT_EQ(counter.all().size(), 2u);
}

}  // namespace
}  // namespace vaultsim
