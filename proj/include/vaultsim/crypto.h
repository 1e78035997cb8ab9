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

#ifndef VAULTSIM_CRYPTO_H_
#define VAULTSIM_CRYPTO_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/rng.h"

namespace vaultsim {

// Symmetric-equivalent strength of every primitive below. Not carried in any
// message format.
inline constexpr int kSecurityBits = 128;

// Largest plaintext accepted by PkeEncrypt.
inline constexpr size_t kMaxPlaintextBytes = size_t{1} << 20;

// Hybrid PKE: X25519 key encapsulation to a fresh key, then
// XChaCha20-Poly1305. Ciphertext layout: ephemeral pk (32) | nonce (24) |
// sealed message (|m| + 16), so |ct| = |m| + kPkeOverheadBytes.
inline constexpr size_t kPkeCoinsBytes = 32 + 24;
inline constexpr size_t kPkeOverheadBytes = 32 + 24 + 16;

struct PkeKeyPair {
  Bytes public_key;
  Bytes secret_key;
};

PkeKeyPair PkeKeygen(SeededRng& rng);
absl::StatusOr<Bytes> PkeEncrypt(ByteView public_key, ByteView message,
                                 SeededRng& rng);
// Encryption with explicit coins; PkeEncrypt draws kPkeCoinsBytes from its rng
// and delegates here.
absl::StatusOr<Bytes> PkeEncryptWithCoins(ByteView public_key,
                                          ByteView message, ByteView coins);
absl::StatusOr<Bytes> PkeDecrypt(ByteView secret_key, ByteView ciphertext);

// Ed25519.
struct SigKeyPair {
  Bytes verification_key;
  Bytes signing_key;
};

SigKeyPair SigKeygen(SeededRng& rng);
Bytes Sign(ByteView signing_key, ByteView message);
bool Verify(ByteView verification_key, ByteView message, ByteView signature);

Bytes Sha256(ByteView data);

// (x, k) plus the nonce binding the default proof of plaintext knowledge.
struct PlaintextEnvelope {
  Bytes message;
  uint64_t threshold = 0;
  std::array<uint8_t, 16> proof_nonce{};

  Bytes Serialize() const;
  static absl::StatusOr<PlaintextEnvelope> Parse(ByteView bytes);
  bool operator==(const PlaintextEnvelope&) const = default;
};

// Serialized envelope size for a message of `message_size` bytes.
constexpr size_t EnvelopeSize(size_t message_size) {
  return 4 + message_size + 4 + 8 + 4 + 16;
}

struct CiphertextMsg {
  Bytes ciphertext;
  Bytes proof;

  Bytes Serialize() const;
  static absl::StatusOr<CiphertextMsg> Parse(ByteView bytes);
  bool operator==(const CiphertextMsg&) const = default;
};

struct Crs {
  Bytes bytes;
  std::optional<Bytes> trapdoor;
};

// Session-scoped common reference string: the first Get samples 32 uniform
// bytes from the injected stream, later calls return the same value.
class CrsFunctionality {
 public:
  explicit CrsFunctionality(SeededRng rng) : rng_(std::move(rng)) {}

  const Crs& Get();
  uint64_t calls() const { return calls_; }

 private:
  SeededRng rng_;
  std::optional<Crs> crs_;
  uint64_t calls_ = 0;
};

// Proof of plaintext knowledge for statement (mpk, ct) with witness
// (envelope, coins). Verification runs inside the function enclave, which has
// already decrypted the envelope, so the verifier receives it.
class ProofSystem {
 public:
  virtual ~ProofSystem() = default;

  virtual absl::StatusOr<Bytes> Prove(const Crs& crs, ByteView mpk,
                                      ByteView ciphertext,
                                      const PlaintextEnvelope& envelope,
                                      ByteView coins) const = 0;
  virtual bool VerifyInEnclave(const Crs& crs, ByteView mpk,
                               ByteView ciphertext, ByteView proof,
                               const PlaintextEnvelope& decrypted) const = 0;
};

// proof = H(crs | mpk | ct | proof_nonce). Prove re-encrypts with the given
// coins and refuses witnesses inconsistent with the statement.
class HashBindingProofSystem final : public ProofSystem {
 public:
  absl::StatusOr<Bytes> Prove(const Crs& crs, ByteView mpk,
                              ByteView ciphertext,
                              const PlaintextEnvelope& envelope,
                              ByteView coins) const override;
  bool VerifyInEnclave(const Crs& crs, ByteView mpk, ByteView ciphertext,
                       ByteView proof,
                       const PlaintextEnvelope& decrypted) const override;
};

const ProofSystem& DefaultProofSystem();

}  // namespace vaultsim

#endif  // VAULTSIM_CRYPTO_H_
