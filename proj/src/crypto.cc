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

#include "vaultsim/crypto.h"

#include <sodium.h>

#include <algorithm>
#include <cstdlib>

#include "vaultsim/op_counter.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr size_t kX25519Bytes = crypto_scalarmult_BYTES;
constexpr size_t kNonceBytes = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
constexpr size_t kTagBytes = crypto_aead_xchacha20poly1305_ietf_ABYTES;

static_assert(kPkeCoinsBytes == kX25519Bytes + kNonceBytes);
static_assert(kPkeOverheadBytes == kX25519Bytes + kNonceBytes + kTagBytes);

void EnsureSodium() {
  static const bool ok = [] { return sodium_init() >= 0; }();
  if (!ok) std::abort();
}

std::array<uint8_t, 32> DeriveKey(const uint8_t* shared, const uint8_t* eph_pk,
                                  const uint8_t* recipient_pk) {
  static constexpr std::string_view kLabel = "vaultsim-pke-v1";
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(
      &st, reinterpret_cast<const unsigned char*>(kLabel.data()), kLabel.size());
  crypto_hash_sha256_update(&st, shared, kX25519Bytes);
  crypto_hash_sha256_update(&st, eph_pk, kX25519Bytes);
  crypto_hash_sha256_update(&st, recipient_pk, kX25519Bytes);
  std::array<uint8_t, 32> key{};
  crypto_hash_sha256_final(&st, key.data());
  return key;
}

absl::StatusOr<Bytes> Seal(ByteView public_key, ByteView message,
                           ByteView coins) {
  EnsureSodium();
  if (public_key.size() != kX25519Bytes) {
    return MakeError(ErrorKind::kEncryptFailed, "bad public key size");
  }
  if (message.size() > kMaxPlaintextBytes) {
    return MakeError(ErrorKind::kEncryptFailed, "message exceeds maximum size");
  }
  if (coins.size() != kPkeCoinsBytes) {
    return MakeError(ErrorKind::kEncryptFailed, "bad coin length");
  }
  uint8_t eph_sk[kX25519Bytes];
  uint8_t eph_pk[kX25519Bytes];
  std::copy_n(coins.begin(), kX25519Bytes, eph_sk);
  crypto_scalarmult_base(eph_pk, eph_sk);
  uint8_t shared[kX25519Bytes];
  if (crypto_scalarmult(shared, eph_sk, public_key.data()) != 0) {
    return MakeError(ErrorKind::kEncryptFailed, "degenerate public key");
  }
  auto key = DeriveKey(shared, eph_pk, public_key.data());
  sodium_memzero(eph_sk, sizeof(eph_sk));
  sodium_memzero(shared, sizeof(shared));

  Bytes out(kPkeOverheadBytes + message.size());
  std::copy_n(eph_pk, kX25519Bytes, out.begin());
  std::copy_n(coins.begin() + kX25519Bytes, kNonceBytes,
              out.begin() + kX25519Bytes);
  unsigned long long sealed_len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data() + kX25519Bytes + kNonceBytes, &sealed_len, message.data(),
      message.size(), eph_pk, kX25519Bytes, nullptr,
      out.data() + kX25519Bytes, key.data());
  sodium_memzero(key.data(), key.size());
  return out;
}

}  // namespace

PkeKeyPair PkeKeygen(SeededRng& rng) {
  EnsureSodium();
  OpCounter::Record(OpKind::kPkeKeygen);
  Bytes sk = rng.Draw(kX25519Bytes);
  Bytes pk(kX25519Bytes);
  crypto_scalarmult_base(pk.data(), sk.data());
  // The secret key carries its public half so decryption can bind the KDF to
  // the recipient.
  sk.insert(sk.end(), pk.begin(), pk.end());
  return {std::move(pk), std::move(sk)};
}

absl::StatusOr<Bytes> PkeEncrypt(ByteView public_key, ByteView message,
                                 SeededRng& rng) {
  Bytes coins = rng.Draw(kPkeCoinsBytes);
  return PkeEncryptWithCoins(public_key, message, coins);
}

absl::StatusOr<Bytes> PkeEncryptWithCoins(ByteView public_key,
                                          ByteView message, ByteView coins) {
  OpCounter::Record(OpKind::kPkeEncrypt);
  return Seal(public_key, message, coins);
}

absl::StatusOr<Bytes> PkeDecrypt(ByteView secret_key, ByteView ciphertext) {
  EnsureSodium();
  OpCounter::Record(OpKind::kPkeDecrypt);
  if (secret_key.size() != 2 * kX25519Bytes) {
    return MakeError(ErrorKind::kDecryptFailed, "bad secret key size");
  }
  if (ciphertext.size() < kPkeOverheadBytes) {
    return MakeError(ErrorKind::kDecryptFailed, "ciphertext too short");
  }
  const uint8_t* eph_pk = ciphertext.data();
  const uint8_t* nonce = ciphertext.data() + kX25519Bytes;
  const uint8_t* sealed = nonce + kNonceBytes;
  const size_t sealed_len = ciphertext.size() - kX25519Bytes - kNonceBytes;
  uint8_t shared[kX25519Bytes];
  if (crypto_scalarmult(shared, secret_key.data(), eph_pk) != 0) {
    return MakeError(ErrorKind::kDecryptFailed, "degenerate ephemeral key");
  }
  auto key = DeriveKey(shared, eph_pk, secret_key.data() + kX25519Bytes);
  sodium_memzero(shared, sizeof(shared));
  Bytes out(sealed_len - kTagBytes);
  unsigned long long out_len = 0;
  int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      out.data(), &out_len, nullptr, sealed, sealed_len, eph_pk, kX25519Bytes,
      nonce, key.data());
  sodium_memzero(key.data(), key.size());
  if (rc != 0) {
    return MakeError(ErrorKind::kDecryptFailed, "authentication failed");
  }
  out.resize(out_len);
  return out;
}

SigKeyPair SigKeygen(SeededRng& rng) {
  EnsureSodium();
  OpCounter::Record(OpKind::kSigKeygen);
  Bytes seed = rng.Draw(crypto_sign_SEEDBYTES);
  SigKeyPair kp{Bytes(crypto_sign_PUBLICKEYBYTES),
                Bytes(crypto_sign_SECRETKEYBYTES)};
  crypto_sign_seed_keypair(kp.verification_key.data(), kp.signing_key.data(),
                           seed.data());
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

Bytes Sign(ByteView signing_key, ByteView message) {
  EnsureSodium();
  OpCounter::Record(OpKind::kSign);
  Bytes sig(crypto_sign_BYTES);
  if (signing_key.size() != crypto_sign_SECRETKEYBYTES) return sig;
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       signing_key.data());
  return sig;
}

bool Verify(ByteView verification_key, ByteView message, ByteView signature) {
  EnsureSodium();
  OpCounter::Record(OpKind::kVerify);
  if (verification_key.size() != crypto_sign_PUBLICKEYBYTES ||
      signature.size() != crypto_sign_BYTES) {
    return false;
  }
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(),
                                     verification_key.data()) == 0;
}

Bytes Sha256(ByteView data) {
  Bytes out(crypto_hash_sha256_BYTES);
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Bytes PlaintextEnvelope::Serialize() const {
  ByteWriter w;
  w.PutField(message);
  w.PutU64Field(threshold);
  w.PutField(ByteView(proof_nonce));
  return std::move(w).bytes();
}

absl::StatusOr<PlaintextEnvelope> PlaintextEnvelope::Parse(ByteView bytes) {
  ByteReader r(bytes);
  PlaintextEnvelope env;
  VS_ASSIGN_OR_RETURN(env.message, r.ReadField());
  VS_ASSIGN_OR_RETURN(env.threshold, r.ReadU64Field());
  VS_ASSIGN_OR_RETURN(Bytes nonce, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  if (nonce.size() != env.proof_nonce.size()) {
    return MakeError(ErrorKind::kMalformed, "bad proof nonce length");
  }
  std::copy(nonce.begin(), nonce.end(), env.proof_nonce.begin());
  return env;
}

Bytes CiphertextMsg::Serialize() const {
  ByteWriter w;
  w.PutField(ciphertext);
  w.PutField(proof);
  return std::move(w).bytes();
}

absl::StatusOr<CiphertextMsg> CiphertextMsg::Parse(ByteView bytes) {
  ByteReader r(bytes);
  CiphertextMsg msg;
  VS_ASSIGN_OR_RETURN(msg.ciphertext, r.ReadField());
  VS_ASSIGN_OR_RETURN(msg.proof, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return msg;
}

const Crs& CrsFunctionality::Get() {
  ++calls_;
  if (!crs_.has_value()) crs_ = Crs{rng_.Draw(32), std::nullopt};
  return *crs_;
}

namespace {

Bytes ProofDigest(const Crs& crs, ByteView mpk, ByteView ciphertext,
                  ByteView nonce) {
  ByteWriter w;
  w.PutField("vaultsim-pok-v1");
  w.PutField(crs.bytes);
  w.PutField(mpk);
  w.PutField(ciphertext);
  w.PutField(nonce);
  return Sha256(w.bytes());
}

}  // namespace

absl::StatusOr<Bytes> HashBindingProofSystem::Prove(
    const Crs& crs, ByteView mpk, ByteView ciphertext,
    const PlaintextEnvelope& envelope, ByteView coins) const {
  VS_ASSIGN_OR_RETURN(Bytes expected, Seal(mpk, envelope.Serialize(), coins));
  if (!std::equal(expected.begin(), expected.end(), ciphertext.begin(),
                  ciphertext.end())) {
    return absl::InvalidArgumentError(
        "witness is inconsistent with the ciphertext");
  }
  return ProofDigest(crs, mpk, ciphertext, envelope.proof_nonce);
}

bool HashBindingProofSystem::VerifyInEnclave(
    const Crs& crs, ByteView mpk, ByteView ciphertext, ByteView proof,
    const PlaintextEnvelope& decrypted) const {
  Bytes expected = ProofDigest(crs, mpk, ciphertext, decrypted.proof_nonce);
  return proof.size() == expected.size() &&
         sodium_memcmp(proof.data(), expected.data(), expected.size()) == 0;
}

const ProofSystem& DefaultProofSystem() {
  static const HashBindingProofSystem kInstance;
  return kInstance;
}

}  // namespace vaultsim
