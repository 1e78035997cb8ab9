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

#include "vaultsim/enclave_programs.h"

#include <set>
#include <utility>

#include "fmt/format.h"
#include "spdlog/spdlog.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kKeyShareTag = "vaultsim-keyshare-v1";
constexpr std::string_view kProgramTag = "vaultsim-prog-v1";

// Memory keys.
constexpr std::string_view kMemSecretKey = "sk";
constexpr std::string_view kMemPublicKey = "pk";
constexpr std::string_view kMemCrs = "crs";
constexpr std::string_view kMemMsk = "msk";
constexpr std::string_view kMemEidKme = "eid_kme";
constexpr std::string_view kMemState = "state";

Bytes U64Bytes(uint64_t v) {
  ByteWriter w;
  w.PutU64(v);
  return std::move(w).bytes();
}

std::optional<Bytes> Lookup(const EnclaveMemory& memory, std::string_view key) {
  auto it = memory.find(key);
  if (it == memory.end()) return std::nullopt;
  return it->second;
}

absl::Status Malformed(std::string_view what) {
  return EnclaveAbort(AbortCause::kMalformedInput, what);
}

class KmeProgram final : public EnclaveProgram {
 public:
  KmeProgram(Bytes authority_vk, SeededRng rng)
      : authority_vk_(std::move(authority_vk)),
        id_(KmeProgramId(authority_vk_)),
        rng_(std::move(rng)) {}

  const Bytes& id() const override { return id_; }
  std::string_view name() const override { return "KME"; }

  absl::StatusOr<Bytes> Run(ByteView input, EnclaveMemory& memory,
                            const EnclaveContext& context) override {
    ByteReader r(input);
    absl::StatusOr<std::string> handler = r.ReadStringField();
    if (!handler.ok()) return Malformed("no handler");
    if (*handler == "init") return Init(r, memory);
    if (*handler == "provision") return Provision(r, memory, context);
    return EnclaveAbort(AbortCause::kUnknownHandler, *handler);
  }

 private:
  absl::StatusOr<Bytes> Init(ByteReader& r, EnclaveMemory& memory) {
    if (memory.contains(kMemSecretKey)) {
      return EnclaveAbort(AbortCause::kDoubleInit, "KME");
    }
    absl::StatusOr<Bytes> crs = r.ReadField();
    absl::StatusOr<std::string> sid = r.ReadStringField();
    if (!crs.ok() || !sid.ok() || !r.done()) return Malformed("KME init");
    PkeKeyPair keys = PkeKeygen(rng_);
    memory[std::string(kMemSecretKey)] = keys.secret_key;
    memory[std::string(kMemPublicKey)] = keys.public_key;
    memory[std::string(kMemCrs)] = *crs;
    return keys.public_key;
  }

  absl::StatusOr<Bytes> Provision(ByteReader& r, EnclaveMemory& memory,
                                  const EnclaveContext& context) {
    std::optional<Bytes> sk = Lookup(memory, kMemSecretKey);
    std::optional<Bytes> crs = Lookup(memory, kMemCrs);
    if (!sk.has_value() || !crs.has_value()) {
      return EnclaveAbort(AbortCause::kNotInitialized, "KME");
    }
    absl::StatusOr<Bytes> pk_d = r.ReadField();
    absl::StatusOr<uint64_t> eid_de = r.ReadU64Field();
    absl::StatusOr<Bytes> quote = r.ReadField();
    if (!pk_d.ok() || !eid_de.ok() || !quote.ok() || !r.done()) {
      return Malformed("KME provision");
    }
    DeInitSetupOutput expected{*pk_d, context.eid, *crs};
    if (!VerifyAttestation(context.vk_att, context.idx, *eid_de,
                           DeProgramId(authority_vk_), expected.Encode(),
                           *quote)) {
      return EnclaveAbort(AbortCause::kBadQuote);
    }
    absl::StatusOr<Bytes> ct_key = PkeEncrypt(*pk_d, *sk, rng_);
    if (!ct_key.ok()) return Malformed("DE public key");
    return KmeProvisionOutput{*pk_d, *ct_key}.Encode();
  }

  Bytes authority_vk_;
  Bytes id_;
  SeededRng rng_;
};

class DeProgram final : public EnclaveProgram {
 public:
  DeProgram(Bytes authority_vk, SeededRng rng, DeOptions options)
      : authority_vk_(std::move(authority_vk)),
        id_(DeProgramId(authority_vk_)),
        rng_(std::move(rng)),
        options_(options) {}

  const Bytes& id() const override { return id_; }
  std::string_view name() const override { return "DE"; }

  absl::StatusOr<Bytes> Run(ByteView input, EnclaveMemory& memory,
                            const EnclaveContext& context) override {
    ByteReader r(input);
    absl::StatusOr<std::string> handler = r.ReadStringField();
    if (!handler.ok()) return Malformed("no handler");
    if (*handler == "init-setup") return InitSetup(r, memory);
    if (*handler == "complete-setup") return CompleteSetup(r, memory, context);
    if (*handler == "provision") return Provision(r, memory, context);
    return EnclaveAbort(AbortCause::kUnknownHandler, *handler);
  }

 private:
  absl::StatusOr<Bytes> InitSetup(ByteReader& r, EnclaveMemory& memory) {
    if (memory.contains(kMemSecretKey)) {
      return EnclaveAbort(AbortCause::kDoubleInit, "DE");
    }
    absl::StatusOr<uint64_t> eid_kme = r.ReadU64Field();
    absl::StatusOr<Bytes> crs = r.ReadField();
    if (!eid_kme.ok() || !crs.ok() || !r.done()) return Malformed("DE init");
    PkeKeyPair keys = PkeKeygen(rng_);
    memory[std::string(kMemSecretKey)] = keys.secret_key;
    memory[std::string(kMemPublicKey)] = keys.public_key;
    memory[std::string(kMemCrs)] = *crs;
    memory[std::string(kMemEidKme)] = U64Bytes(*eid_kme);
    return DeInitSetupOutput{keys.public_key, *eid_kme, *crs}.Encode();
  }

  absl::StatusOr<Bytes> CompleteSetup(ByteReader& r, EnclaveMemory& memory,
                                      const EnclaveContext& context) {
    std::optional<Bytes> sk = Lookup(memory, kMemSecretKey);
    std::optional<Bytes> pk = Lookup(memory, kMemPublicKey);
    std::optional<Bytes> eid_raw = Lookup(memory, kMemEidKme);
    if (!sk.has_value() || !pk.has_value() || !eid_raw.has_value()) {
      return EnclaveAbort(AbortCause::kNotInitialized, "DE");
    }
    if (memory.contains(kMemMsk)) {
      return EnclaveAbort(AbortCause::kDoubleInit, "DE setup");
    }
    absl::StatusOr<Bytes> kme_output = r.ReadField();
    absl::StatusOr<Bytes> kme_signature = r.ReadField();
    if (!kme_output.ok() || !kme_signature.ok() || !r.done()) {
      return Malformed("DE complete-setup");
    }
    ByteReader eid_reader(*eid_raw);
    EnclaveId eid_kme = eid_reader.ReadU64().value_or(0);
    if (!VerifyAttestation(context.vk_att, context.idx, eid_kme,
                           KmeProgramId(authority_vk_), *kme_output,
                           *kme_signature)) {
      return EnclaveAbort(AbortCause::kBadAttestation, "KME provision");
    }
    absl::StatusOr<KmeProvisionOutput> out =
        KmeProvisionOutput::Decode(*kme_output);
    if (!out.ok() || out->pk_d != *pk) {
      return EnclaveAbort(AbortCause::kBadAttestation, "key mismatch");
    }
    absl::StatusOr<Bytes> msk = PkeDecrypt(*sk, out->ct_key);
    if (!msk.ok()) return EnclaveAbort(AbortCause::kKeyDecryptFailed);
    memory[std::string(kMemMsk)] = *std::move(msk);
    return EncodeTagged("de/ready");
  }

  // Validates one share; returns the abort cause on failure.
  AbortCause Check(const KeyShare& share, ByteView function,
                   std::string_view decryptor) const {
    if (share.cert.subject_vk != share.signer_vk ||
        !VerifyCertificate(authority_vk_, share.cert)) {
      return AbortCause::kUncertifiedKey;
    }
    if (share.function.size() != function.size() ||
        !std::equal(function.begin(), function.end(),
                    share.function.begin()) ||
        !Verify(share.signer_vk, KeyShareMessage(function, decryptor),
                share.sigma)) {
      return AbortCause::kBadShareSignature;
    }
    return AbortCause::kNone;
  }

  absl::StatusOr<Bytes> Provision(ByteReader& r, EnclaveMemory& memory,
                                  const EnclaveContext& context) {
    std::optional<Bytes> msk = Lookup(memory, kMemMsk);
    std::optional<Bytes> crs = Lookup(memory, kMemCrs);
    if (!msk.has_value() || !crs.has_value()) {
      return EnclaveAbort(AbortCause::kNotInitialized, "DE");
    }
    absl::StatusOr<Bytes> function = r.ReadField();
    absl::StatusOr<uint32_t> count = r.ReadU32();
    if (!function.ok() || !count.ok()) return Malformed("DE provision");
    std::vector<KeyShare> shares;
    for (uint32_t i = 0; i < *count; ++i) {
      absl::StatusOr<Bytes> raw = r.ReadField();
      if (!raw.ok()) return Malformed("share list");
      absl::StatusOr<KeyShare> share = KeyShare::Parse(*raw);
      if (!share.ok()) return Malformed("share");
      shares.push_back(*std::move(share));
    }
    absl::StatusOr<uint64_t> eid_fe = r.ReadU64Field();
    absl::StatusOr<Bytes> fe_init = r.ReadField();
    absl::StatusOr<Bytes> fe_signature = r.ReadField();
    if (!eid_fe.ok() || !fe_init.ok() || !fe_signature.ok() || !r.done()) {
      return Malformed("DE provision");
    }

    std::set<Bytes> signers;
    for (const KeyShare& share : shares) {
      AbortCause cause = Check(share, *function, context.owner);
      if (cause != AbortCause::kNone) {
        if (options_.strict) return EnclaveAbort(cause);
        spdlog::warn("DE {}: dropped key share ({})", context.owner,
                     AbortCauseName(cause));
        continue;
      }
      if (!signers.insert(share.signer_vk).second) {
        return EnclaveAbort(AbortCause::kDuplicateSigner);
      }
    }

    if (!VerifyAttestation(context.vk_att, context.idx, *eid_fe,
                           FeProgramId(authority_vk_, *function), *fe_init,
                           *fe_signature)) {
      return EnclaveAbort(AbortCause::kBadAttestation, "FE init");
    }
    absl::StatusOr<FeInitOutput> fe = FeInitOutput::Decode(*fe_init);
    if (!fe.ok()) return Malformed("FE init output");
    absl::StatusOr<Bytes> ct_key = PkeEncrypt(fe->pk_fd, *msk, rng_);
    if (!ct_key.ok()) return Malformed("FE public key");
    return DeProvisionOutput{*function, *eid_fe, *ct_key, signers.size(), *crs}
        .Encode();
  }

  Bytes authority_vk_;
  Bytes id_;
  SeededRng rng_;
  DeOptions options_;
};

class FeProgram final : public EnclaveProgram {
 public:
  FeProgram(Bytes authority_vk, Bytes function,
            std::unique_ptr<StatefulFunction> f, SeededRng key_rng,
            SeededRng function_rand, const ProofSystem& proofs)
      : authority_vk_(std::move(authority_vk)),
        function_(std::move(function)),
        id_(FeProgramId(authority_vk_, function_)),
        f_(std::move(f)),
        key_rng_(std::move(key_rng)),
        function_rand_(std::move(function_rand)),
        proofs_(proofs) {}

  const Bytes& id() const override { return id_; }
  std::string_view name() const override { return "FE"; }

  absl::StatusOr<Bytes> Run(ByteView input, EnclaveMemory& memory,
                            const EnclaveContext& context) override {
    ByteReader r(input);
    absl::StatusOr<std::string> handler = r.ReadStringField();
    if (!handler.ok()) return Malformed("no handler");
    if (*handler == "init") return Init(r, memory);
    if (*handler == "run") return RunFunction(r, memory, context);
    return EnclaveAbort(AbortCause::kUnknownHandler, *handler);
  }

 private:
  absl::StatusOr<Bytes> Init(ByteReader& r, EnclaveMemory& memory) {
    if (memory.contains(kMemSecretKey)) {
      return EnclaveAbort(AbortCause::kDoubleInit, "FE");
    }
    if (!r.done()) return Malformed("FE init");
    PkeKeyPair keys = PkeKeygen(key_rng_);
    memory[std::string(kMemSecretKey)] = keys.secret_key;
    memory[std::string(kMemState)] = FunctionState().Serialize();
    return FeInitOutput{keys.public_key}.Encode();
  }

  absl::StatusOr<Bytes> RunFunction(ByteReader& r, EnclaveMemory& memory,
                                    const EnclaveContext& context) {
    std::optional<Bytes> sk = Lookup(memory, kMemSecretKey);
    if (!sk.has_value()) return EnclaveAbort(AbortCause::kNotInitialized, "FE");
    absl::StatusOr<uint64_t> eid_de = r.ReadU64Field();
    absl::StatusOr<Bytes> de_output = r.ReadField();
    absl::StatusOr<Bytes> de_signature = r.ReadField();
    absl::StatusOr<Bytes> ct_msg_raw = r.ReadField();
    absl::StatusOr<uint32_t> has_short_circuit = r.ReadU32();
    if (!eid_de.ok() || !de_output.ok() || !de_signature.ok() ||
        !ct_msg_raw.ok() || !has_short_circuit.ok()) {
      return Malformed("FE run");
    }
    if (*has_short_circuit != 0) {
      absl::StatusOr<Bytes> y = r.ReadField();
      if (!y.ok() || !r.done()) return Malformed("FE run");
      return EncodeAggregatorOutput(AggregatorOutput::Result(*y));
    }
    if (!r.done()) return Malformed("FE run");

    if (!VerifyAttestation(context.vk_att, context.idx, *eid_de,
                           DeProgramId(authority_vk_), *de_output,
                           *de_signature)) {
      return EnclaveAbort(AbortCause::kBadAttestation, "DE provision");
    }
    absl::StatusOr<DeProvisionOutput> grant =
        DeProvisionOutput::Decode(*de_output);
    if (!grant.ok() || grant->function != function_ ||
        grant->eid_fe != context.eid) {
      return EnclaveAbort(AbortCause::kBadAttestation, "grant mismatch");
    }
    absl::StatusOr<Bytes> msk = PkeDecrypt(*sk, grant->ct_key);
    if (!msk.ok() || msk->size() != 64) {
      return EnclaveAbort(AbortCause::kKeyDecryptFailed);
    }
    Bytes mpk(msk->begin() + 32, msk->end());

    absl::StatusOr<CiphertextMsg> ct_msg = CiphertextMsg::Parse(*ct_msg_raw);
    if (!ct_msg.ok()) return Malformed("ciphertext message");
    VS_ASSIGN_OR_RETURN(Bytes envelope_raw,
                        PkeDecrypt(*msk, ct_msg->ciphertext));
    VS_ASSIGN_OR_RETURN(PlaintextEnvelope envelope,
                        PlaintextEnvelope::Parse(envelope_raw));
    Crs crs{grant->crs, std::nullopt};
    if (!proofs_.VerifyInEnclave(crs, mpk, ct_msg->ciphertext, ct_msg->proof,
                                 envelope)) {
      return EnclaveAbort(AbortCause::kBadProof);
    }
    if (!IsLeakageDescriptor(function_) && grant->lks < envelope.threshold) {
      return MakeError(ErrorKind::kPolicyUnsatisfied,
                       fmt::format("{} key shares, policy needs {}",
                                   grant->lks, envelope.threshold));
    }

    absl::StatusOr<FunctionState> state =
        FunctionState::Parse(Lookup(memory, kMemState).value_or(Bytes{}));
    if (!state.ok()) return EnclaveAbort(AbortCause::kFunctionFailed, "state");
    SeededRng rand = function_rand_;
    VS_ASSIGN_OR_RETURN(StepResult step,
                        f_->Evaluate(envelope.message, *state, rand));
    function_rand_ = rand;
    memory[std::string(kMemState)] = step.state.Serialize();
    return EncodeAggregatorOutput(step.y);
  }

  Bytes authority_vk_;
  Bytes function_;
  Bytes id_;
  std::unique_ptr<StatefulFunction> f_;
  SeededRng key_rng_;
  SeededRng function_rand_;
  const ProofSystem& proofs_;
};

}  // namespace

Bytes KeyShare::Serialize() const {
  return EncodeTagged("keyshare", function, sigma, signer_vk,
                      cert.Serialize());
}

absl::StatusOr<KeyShare> KeyShare::Parse(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "keyshare") return MakeError(ErrorKind::kMalformed, "not a share");
  KeyShare share;
  VS_ASSIGN_OR_RETURN(share.function, r.ReadField());
  VS_ASSIGN_OR_RETURN(share.sigma, r.ReadField());
  VS_ASSIGN_OR_RETURN(share.signer_vk, r.ReadField());
  VS_ASSIGN_OR_RETURN(Bytes cert, r.ReadField());
  VS_ASSIGN_OR_RETURN(share.cert, Certificate::Parse(cert));
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return share;
}

Bytes KeyShareMessage(ByteView function, std::string_view decryptor) {
  ByteWriter w;
  w.PutField(kKeyShareTag);
  w.PutField(function);
  w.PutField(decryptor);
  return std::move(w).bytes();
}

Bytes KmeProgramId(ByteView authority_vk) {
  ByteWriter w;
  w.PutField(kProgramTag).PutField("KME").PutField(authority_vk);
  return Sha256(w.bytes());
}

Bytes DeProgramId(ByteView authority_vk) {
  ByteWriter w;
  w.PutField(kProgramTag).PutField("DE").PutField(authority_vk);
  return Sha256(w.bytes());
}

Bytes FeProgramId(ByteView authority_vk, ByteView function) {
  ByteWriter w;
  w.PutField(kProgramTag).PutField("FE").PutField(authority_vk).PutField(
      function);
  return Sha256(w.bytes());
}

Bytes KmeInit::Encode() const {
  ByteWriter w;
  w.PutField("init").PutField(crs).PutField(std::string_view(sid));
  return std::move(w).bytes();
}

Bytes KmeProvision::Encode() const {
  ByteWriter w;
  w.PutField("provision").PutField(pk_d).PutU64Field(eid_de).PutField(
      de_signature);
  return std::move(w).bytes();
}

Bytes KmeProvisionOutput::Encode() const {
  return EncodeTagged("kme/provision", pk_d, ct_key);
}

absl::StatusOr<KmeProvisionOutput> KmeProvisionOutput::Decode(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "kme/provision") return MakeError(ErrorKind::kMalformed, tag);
  KmeProvisionOutput out;
  VS_ASSIGN_OR_RETURN(out.pk_d, r.ReadField());
  VS_ASSIGN_OR_RETURN(out.ct_key, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return out;
}

Bytes DeInitSetup::Encode() const {
  ByteWriter w;
  w.PutField("init-setup").PutU64Field(eid_kme).PutField(crs);
  return std::move(w).bytes();
}

Bytes DeInitSetupOutput::Encode() const {
  ByteWriter w;
  w.PutField("de/init").PutField(pk_d).PutU64Field(eid_kme).PutField(crs);
  return std::move(w).bytes();
}

absl::StatusOr<DeInitSetupOutput> DeInitSetupOutput::Decode(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "de/init") return MakeError(ErrorKind::kMalformed, tag);
  DeInitSetupOutput out;
  VS_ASSIGN_OR_RETURN(out.pk_d, r.ReadField());
  VS_ASSIGN_OR_RETURN(out.eid_kme, r.ReadU64Field());
  VS_ASSIGN_OR_RETURN(out.crs, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return out;
}

Bytes DeCompleteSetup::Encode() const {
  return EncodeTagged("complete-setup", kme_output, kme_signature);
}

Bytes DeProvision::Encode() const {
  ByteWriter w;
  w.PutField("provision").PutField(function);
  w.PutU32(static_cast<uint32_t>(shares.size()));
  for (const KeyShare& share : shares) w.PutField(share.Serialize());
  w.PutU64Field(eid_fe).PutField(fe_init_output).PutField(fe_signature);
  return std::move(w).bytes();
}

Bytes DeProvisionOutput::Encode() const {
  ByteWriter w;
  w.PutField("de/provision").PutField(function).PutU64Field(eid_fe);
  w.PutField(ct_key).PutU64Field(lks).PutField(crs);
  return std::move(w).bytes();
}

absl::StatusOr<DeProvisionOutput> DeProvisionOutput::Decode(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "de/provision") return MakeError(ErrorKind::kMalformed, tag);
  DeProvisionOutput out;
  VS_ASSIGN_OR_RETURN(out.function, r.ReadField());
  VS_ASSIGN_OR_RETURN(out.eid_fe, r.ReadU64Field());
  VS_ASSIGN_OR_RETURN(out.ct_key, r.ReadField());
  VS_ASSIGN_OR_RETURN(out.lks, r.ReadU64Field());
  VS_ASSIGN_OR_RETURN(out.crs, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return out;
}

Bytes FeInitOutput::Encode() const { return EncodeTagged("fe/init", pk_fd); }

absl::StatusOr<FeInitOutput> FeInitOutput::Decode(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "fe/init") return MakeError(ErrorKind::kMalformed, tag);
  FeInitOutput out;
  VS_ASSIGN_OR_RETURN(out.pk_fd, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return out;
}

Bytes EncodeFeInit() { return EncodeTagged("init"); }

Bytes FeRun::Encode() const {
  ByteWriter w;
  w.PutField("run").PutU64Field(eid_de).PutField(de_output).PutField(
      de_signature);
  w.PutField(ciphertext_msg);
  w.PutU32(short_circuit.has_value() ? 1 : 0);
  if (short_circuit.has_value()) w.PutField(*short_circuit);
  return std::move(w).bytes();
}

Bytes EncodeAggregatorOutput(const AggregatorOutput& y) {
  ByteWriter w;
  w.PutField("fe/run").PutU32(y.pending() ? 0 : 1);
  if (!y.pending()) w.PutField(y.value());
  return std::move(w).bytes();
}

absl::StatusOr<AggregatorOutput> DecodeAggregatorOutput(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(std::string tag, r.ReadStringField());
  if (tag != "fe/run") return MakeError(ErrorKind::kMalformed, tag);
  VS_ASSIGN_OR_RETURN(uint32_t computed, r.ReadU32());
  if (computed == 0) {
    VS_RETURN_IF_ERROR(r.ExpectDone());
    return AggregatorOutput::Pending();
  }
  VS_ASSIGN_OR_RETURN(Bytes y, r.ReadField());
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return AggregatorOutput::Result(std::move(y));
}

std::unique_ptr<EnclaveProgram> MakeKmeProgram(Bytes authority_vk,
                                               SeededRng rng) {
  return std::make_unique<KmeProgram>(std::move(authority_vk), std::move(rng));
}

std::unique_ptr<EnclaveProgram> MakeDeProgram(Bytes authority_vk, SeededRng rng,
                                              DeOptions options) {
  return std::make_unique<DeProgram>(std::move(authority_vk), std::move(rng),
                                     options);
}

absl::StatusOr<std::unique_ptr<EnclaveProgram>> MakeFeProgram(
    Bytes authority_vk, const FunctionSpec& function, SeededRng key_rng,
    SeededRng function_rand, const ProofSystem& proofs) {
  VS_ASSIGN_OR_RETURN(Bytes descriptor, Descriptor(function));
  VS_ASSIGN_OR_RETURN(std::unique_ptr<StatefulFunction> f,
                      MakeStatefulFunction(function));
  return std::make_unique<FeProgram>(std::move(authority_vk),
                                     std::move(descriptor), std::move(f),
                                     std::move(key_rng),
                                     std::move(function_rand), proofs);
}

}  // namespace vaultsim
