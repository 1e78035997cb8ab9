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
#include <vector>

#include "gtest/gtest.h"
#include "vaultsim/crypto.h"
#include "vaultsim/setups.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

TEST(CertAuthorityTest, CertificateVerifies) {
  CertAuthority ca(SeededRng(1));
  SeededRng rng(2);
  SigKeyPair k = SigKeygen(rng);
  Certificate cert = *ca.Sign("A", k.verification_key);
  EXPECT_TRUE(VerifyCertificate(ca.GetK(), cert));
  EXPECT_TRUE(ca.HasCertified("A"));
}

TEST(CertAuthorityTest, SecondCertificateIsRefused) {
  CertAuthority ca(SeededRng(1));
  SeededRng rng(3);
  ASSERT_TRUE(ca.Sign("A", SigKeygen(rng).verification_key).ok());
  EXPECT_TRUE(IsError(ca.Sign("A", SigKeygen(rng).verification_key).status(),
                      ErrorKind::kAlreadyCertified));
  EXPECT_TRUE(ca.Sign("B", SigKeygen(rng).verification_key).ok());
}

TEST(CertAuthorityTest, InterleavedRequestsYieldOneCertificatePerParty) {
  CertAuthority ca(SeededRng(1));
  SeededRng rng(4);
  std::map<std::string, int> issued;
  for (int i = 0; i < 60; ++i) {
    std::string party = "P" + std::to_string(rng.Uniform(6));
    if (ca.Sign(party, SigKeygen(rng).verification_key).ok()) ++issued[party];
  }
  for (const auto& [party, n] : issued) EXPECT_EQ(n, 1) << party;
}

TEST(CertAuthorityTest, CertificateDoesNotTransferToAnotherKey) {
  CertAuthority ca(SeededRng(1));
  SeededRng rng(5);
  Certificate cert = *ca.Sign("A", SigKeygen(rng).verification_key);
  cert.subject_vk = SigKeygen(rng).verification_key;
  EXPECT_FALSE(VerifyCertificate(ca.GetK(), cert));
}

TEST(CertAuthorityTest, BitFlippedCertificatesAreRejected) {
  CertAuthority ca(SeededRng(1));
  SeededRng rng(6);
  Certificate cert = *ca.Sign("A", SigKeygen(rng).verification_key);
  Bytes wire = cert.Serialize();
  for (int i = 0; i < 64; ++i) {
    Bytes bad = wire;
    size_t bit = rng.Uniform(bad.size() * 8);
    bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    absl::StatusOr<Certificate> parsed = Certificate::Parse(bad);
    EXPECT_TRUE(!parsed.ok() || !VerifyCertificate(ca.GetK(), *parsed)) << "bit " << bit;
  }
}

TEST(RepositoryTest, WriteThenRead) {
  Repository rep;
  CiphertextMsg p{ToBytes("ct"), ToBytes("proof")};
  Handle h = rep.Write(p);
  EXPECT_EQ(*rep.Read(h), p);
  EXPECT_TRUE(IsError(rep.Read(h + 1).status(), ErrorKind::kNoSuchHandle));
}

TEST(RepositoryTest, HandlesAreDistinct) {
  Repository rep;
  std::set<Handle> handles;
  for (int i = 0; i < 100; ++i) {
    CiphertextMsg p{Bytes(1, static_cast<uint8_t>(i)), {}};
    Handle h = rep.Write(p);
    handles.insert(h);
    ASSERT_EQ(*rep.Read(h), p);
  }
  EXPECT_EQ(handles.size(), 100u);
}

TEST(SecureChannelsTest, LeaksLengthsInOrder) {
  SecureChannels sc;
  EXPECT_TRUE(sc.Leak("A", "B").empty());
  sc.Send("A", "B", Bytes(10));
  EXPECT_EQ(sc.Leak("A", "B"), std::vector<size_t>{10});
  sc.Send("A", "B", Bytes(3));
  sc.Send("A", "B", Bytes(7));
  EXPECT_EQ(sc.Leak("A", "B"), (std::vector<size_t>{10, 3, 7}));
  EXPECT_TRUE(sc.Leak("B", "A").empty());
}

TEST(SecureChannelsTest, TapSeesDeliveredBytes) {
  SecureChannels sc;
  Bytes seen;
  sc.set_tap([&](std::string_view, std::string_view, ByteView m) {
    seen.assign(m.begin(), m.end());
  });
  sc.set_interceptor([](std::string_view, std::string_view, Bytes m) {
    m.push_back(9);
    return m;
  });
  Bytes delivered = sc.Send("A", "B", Bytes{1});
  EXPECT_EQ(delivered, (Bytes{1, 9}));
  EXPECT_EQ(seen, delivered);
}

TEST(BulletinBoardTest, OnlyInfectiousPartiesPost) {
  std::set<std::string> infected = {"sick"};
  BulletinBoard tbb([&](std::string_view p) { return infected.contains(std::string(p)); });
  EXPECT_TRUE(tbb.Retrieve().empty());
  EXPECT_TRUE(tbb.Add("sick", 4));
  EXPECT_FALSE(tbb.Add("well", 5));
  infected.insert("well");
  EXPECT_TRUE(tbb.Add("well", 6));
  EXPECT_EQ(tbb.Retrieve(), (std::vector<Handle>{4, 6}));
}

}  // namespace
}  // namespace vaultsim
