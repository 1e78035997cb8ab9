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

#include <set>

#include "fmt/format.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

absl::Status Aborted(std::string_view party, const absl::Status& cause) {
  return MakeError(ErrorKind::kSetupAborted,
                   fmt::format("{}: {}", party, std::string(cause.message())));
}

}  // namespace

ThresholdFeProtocol::ThresholdFeProtocol(Config config)
    : config_(std::move(config)),
      proofs_(config_.proofs != nullptr ? *config_.proofs
                                        : DefaultProofSystem()),
      root_(config_.seed),
      function_root_(config_.function_root.has_value()
                         ? *config_.function_root
                         : root_.Derive("fn-root")),
      att_(config_.sid, root_.Derive("g-att")),
      ca_(root_.Derive("f-cert")),
      crs_(root_.Derive("crs")) {}

SeededRng& ThresholdFeProtocol::PartyRng(std::string_view party) {
  auto it = party_rngs_.find(std::string(party));
  if (it == party_rngs_.end()) {
    it = party_rngs_
             .emplace(std::string(party),
                      root_.Derive(fmt::format("party/{}", party)))
             .first;
  }
  return it->second;
}

bool ThresholdFeProtocol::IsSetUp(std::string_view party) const {
  std::string p(party);
  return encryptors_.contains(p) || decryptors_.contains(p);
}

absl::Status ThresholdFeProtocol::EnsureAuthority() {
  if (mpk_.has_value()) return absl::OkStatus();
  OpCounter::Scope scope(config_.counter, std::string(kAuthorityPid));
  const Crs& crs = crs_.Get();
  VS_ASSIGN_OR_RETURN(
      EnclaveId eid,
      att_.Install(kAuthorityPid, config_.sid,
                   MakeKmeProgram(ca_.GetK(), root_.Derive("enclave/kme"))));
  ++kme_installs_;
  VS_ASSIGN_OR_RETURN(
      AttestedOutput out,
      att_.Resume(kAuthorityPid, eid, KmeInit{crs.bytes, config_.sid}.Encode()));
  kme_eid_ = eid;
  mpk_ = out.output;
  kme_signature_ = out.signature;
  return absl::OkStatus();
}

absl::StatusOr<ThresholdFeProtocol::SetupGrant> ThresholdFeProtocol::RequestSetup(
    std::string_view party) {
  Bytes request = sc_.Send(party, kAuthorityPid, EncodeTagged("setup-request"));
  (void)request;
  VS_RETURN_IF_ERROR(EnsureAuthority());
  ByteWriter w;
  w.PutField("setup").PutField(*mpk_).PutU64Field(*kme_eid_);
  w.PutField(kme_signature_).PutField(crs_.Get().bytes);
  Bytes reply = sc_.Send(kAuthorityPid, party, std::move(w).bytes());

  ByteReader r(reply);
  SetupGrant grant;
  absl::StatusOr<std::string> tag = r.ReadStringField();
  absl::StatusOr<Bytes> mpk = r.ReadField();
  absl::StatusOr<uint64_t> eid = r.ReadU64Field();
  absl::StatusOr<Bytes> signature = r.ReadField();
  absl::StatusOr<Bytes> crs = r.ReadField();
  if (!tag.ok() || *tag != "setup" || !mpk.ok() || !eid.ok() ||
      !signature.ok() || !crs.ok() || !r.done()) {
    return MakeError(ErrorKind::kSetupAborted, "malformed setup reply");
  }
  grant = SetupGrant{*mpk, *eid, *signature, *crs};
  if (!VerifyAttestation(att_.GetPk(), config_.sid, grant.eid_kme,
                         KmeProgramId(ca_.GetK()), grant.mpk,
                         grant.kme_signature)) {
    return MakeError(ErrorKind::kSetupAborted,
                     fmt::format("{}: KME attestation does not verify", party));
  }
  return grant;
}

absl::Status ThresholdFeProtocol::SetupEncryptor(std::string_view party,
                                                 const SetupGrant& grant) {
  SigKeyPair sig = SigKeygen(PartyRng(party));
  VS_ASSIGN_OR_RETURN(Certificate cert, ca_.Sign(party, sig.verification_key));
  encryptors_[std::string(party)] =
      EncryptorContext{grant.mpk, grant.crs, std::move(sig), std::move(cert), {}};
  return absl::OkStatus();
}

absl::StatusOr<Bytes> ThresholdFeProtocol::AuthorityProvision(
    std::string_view from, ByteView request) {
  OpCounter::Scope scope(config_.counter, std::string(kAuthorityPid));
  Bytes delivered = sc_.Send(from, kAuthorityPid, Bytes(request.begin(), request.end()));
  VS_ASSIGN_OR_RETURN(AttestedOutput out,
                      att_.Resume(kAuthorityPid, *kme_eid_, delivered));
  return sc_.Send(kAuthorityPid, from,
                  EncodeTagged("provisioned", out.output, out.signature));
}

absl::Status ThresholdFeProtocol::SetupDecryptor(std::string_view party,
                                                 const SetupGrant& grant) {
  const DecryptorOptions& options = options_[std::string(party)];
  VS_ASSIGN_OR_RETURN(
      EnclaveId eid_de,
      att_.Install(party, config_.sid,
                   MakeDeProgram(ca_.GetK(),
                                 root_.Derive(fmt::format("enclave/de/{}", party)),
                                 options.de)));
  absl::StatusOr<AttestedOutput> init = att_.Resume(
      party, eid_de, DeInitSetup{grant.eid_kme, grant.crs}.Encode());
  if (!init.ok()) return Aborted(party, init.status());
  absl::StatusOr<DeInitSetupOutput> init_out =
      DeInitSetupOutput::Decode(init->output);
  if (!init_out.ok()) return Aborted(party, init_out.status());

  absl::StatusOr<Bytes> reply = AuthorityProvision(
      party, KmeProvision{init_out->pk_d, eid_de, init->signature}.Encode());
  if (!reply.ok()) return Aborted(party, reply.status());
  ByteReader r(*reply);
  absl::StatusOr<std::string> tag = r.ReadStringField();
  absl::StatusOr<Bytes> kme_output = r.ReadField();
  absl::StatusOr<Bytes> kme_signature = r.ReadField();
  if (!tag.ok() || !kme_output.ok() || !kme_signature.ok()) {
    return MakeError(ErrorKind::kSetupAborted, "malformed provision reply");
  }
  absl::StatusOr<AttestedOutput> done = att_.Resume(
      party, eid_de, DeCompleteSetup{*kme_output, *kme_signature}.Encode());
  if (!done.ok()) return Aborted(party, done.status());
  DecryptorContext ctx;
  ctx.mpk = grant.mpk;
  ctx.crs = grant.crs;
  ctx.eid_de = eid_de;
  decryptors_[std::string(party)] = std::move(ctx);
  return absl::OkStatus();
}

absl::Status ThresholdFeProtocol::Setup(std::string_view party, FeRole role) {
  if (role == FeRole::kAuthority) return absl::OkStatus();
  if (IsSetUp(party)) {
    return MakeError(ErrorKind::kAlreadySetup, std::string(party));
  }
  OpCounter::Scope scope(config_.counter, std::string(party));
  VS_ASSIGN_OR_RETURN(SetupGrant grant, RequestSetup(party));
  return role == FeRole::kEncryptor ? SetupEncryptor(party, grant)
                                    : SetupDecryptor(party, grant);
}

void ThresholdFeProtocol::ReceiveShare(std::string_view decryptor,
                                       std::string_view sender,
                                       ByteView message) {
  auto ctx = decryptors_.find(std::string(decryptor));
  if (ctx == decryptors_.end()) return;
  absl::StatusOr<KeyShare> share = KeyShare::Parse(message);
  if (!share.ok()) return;
  ctx->second.shares[share->function].emplace_back(std::string(sender),
                                                   *std::move(share));
}

absl::Status ThresholdFeProtocol::KeyShareGen(std::string_view encryptor,
                                              const FunctionSpec& function,
                                              std::string_view decryptor) {
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  if (!descriptor.ok()) return absl::OkStatus();
  auto ctx = encryptors_.find(std::string(encryptor));
  if (ctx == encryptors_.end()) return absl::OkStatus();
  OpCounter::Scope scope(config_.counter, std::string(encryptor));
  KeyShare share{*descriptor,
                 Sign(ctx->second.sig.signing_key,
                      KeyShareMessage(*descriptor, decryptor)),
                 ctx->second.sig.verification_key, ctx->second.cert};
  Bytes delivered = sc_.Send(encryptor, decryptor, share.Serialize());
  if (decryptors_.contains(std::string(decryptor))) {
    ctx->second.issued.emplace_back(std::string(decryptor), *descriptor);
  }
  ReceiveShare(decryptor, encryptor, delivered);
  return absl::OkStatus();
}

void ThresholdFeProtocol::InjectShare(std::string_view decryptor,
                                      std::string_view sender, KeyShare share) {
  ReceiveShare(decryptor, sender, share.Serialize());
}

void ThresholdFeProtocol::SetDecryptorOptions(std::string_view decryptor,
                                              DecryptorOptions options) {
  options_[std::string(decryptor)] = options;
}

absl::StatusOr<Handle> ThresholdFeProtocol::Encrypt(std::string_view party,
                                                    ByteView x,
                                                    int64_t threshold) {
  const Bytes* mpk = nullptr;
  const Bytes* crs = nullptr;
  if (auto a = encryptors_.find(std::string(party)); a != encryptors_.end()) {
    mpk = &a->second.mpk;
    crs = &a->second.crs;
  } else if (auto b = decryptors_.find(std::string(party));
             b != decryptors_.end()) {
    mpk = &b->second.mpk;
    crs = &b->second.crs;
  } else {
    return MakeError(ErrorKind::kEncryptFailed,
                     fmt::format("{} is not set up", party));
  }
  if (threshold < 0) {
    return MakeError(ErrorKind::kEncryptFailed, "negative threshold");
  }
  if (x.size() > kMaxPlaintextBytes) {
    return MakeError(ErrorKind::kEncryptFailed, "message too large");
  }
  OpCounter::Scope scope(config_.counter, std::string(party));
  SeededRng& rng = PartyRng(party);
  PlaintextEnvelope envelope;
  envelope.message.assign(x.begin(), x.end());
  envelope.threshold = static_cast<uint64_t>(threshold);
  rng.Fill(envelope.proof_nonce);
  Bytes coins = rng.Draw(kPkeCoinsBytes);
  VS_ASSIGN_OR_RETURN(Bytes ct,
                      PkeEncryptWithCoins(*mpk, envelope.Serialize(), coins));
  VS_ASSIGN_OR_RETURN(
      Bytes proof, proofs_.Prove(Crs{*crs, std::nullopt}, *mpk, ct, envelope, coins));
  return rep_.Write(CiphertextMsg{std::move(ct), std::move(proof)});
}

std::vector<KeyShare> ThresholdFeProtocol::SharesToPresent(
    std::string_view decryptor, const DecryptorContext& ctx,
    const Bytes& descriptor) const {
  std::vector<KeyShare> out;
  auto it = ctx.shares.find(descriptor);
  if (it == ctx.shares.end()) return out;
  auto opts = options_.find(std::string(decryptor));
  const bool raw = opts != options_.end() && opts->second.present_raw_shares;
  std::set<Bytes> signers;
  for (const auto& [sender, share] : it->second) {
    if (raw || signers.insert(share.signer_vk).second) out.push_back(share);
  }
  return out;
}

absl::StatusOr<AggregatorOutput> ThresholdFeProtocol::DecryptImpl(
    std::string_view decryptor, const FunctionSpec& function, Handle h,
    std::optional<Bytes> y) {
  auto found = decryptors_.find(std::string(decryptor));
  if (found == decryptors_.end()) {
    return MakeError(ErrorKind::kNotSetUp, std::string(decryptor));
  }
  DecryptorContext& ctx = found->second;
  VS_ASSIGN_OR_RETURN(Bytes descriptor, Descriptor(function));
  VS_ASSIGN_OR_RETURN(CiphertextMsg ct_msg, rep_.Read(h));
  OpCounter::Scope scope(config_.counter, std::string(decryptor));

  auto fe = ctx.functions.find(descriptor);
  if (fe == ctx.functions.end()) {
    VS_ASSIGN_OR_RETURN(
        std::unique_ptr<EnclaveProgram> program,
        MakeFeProgram(ca_.GetK(), function,
                      root_.Derive(fmt::format("enclave/fe/{}/{}", decryptor,
                                               ToHex(descriptor))),
                      FunctionRandomness(function_root_, decryptor, descriptor),
                      proofs_));
    VS_ASSIGN_OR_RETURN(EnclaveId eid,
                        att_.Install(decryptor, config_.sid, std::move(program)));
    VS_ASSIGN_OR_RETURN(AttestedOutput init,
                        att_.Resume(decryptor, eid, EncodeFeInit()));
    fe = ctx.functions
             .emplace(descriptor, FeEntry{eid, init.output, init.signature})
             .first;
  }

  DeProvision provision{descriptor, SharesToPresent(decryptor, ctx, descriptor),
                        fe->second.eid, fe->second.init_output,
                        fe->second.signature};
  VS_ASSIGN_OR_RETURN(AttestedOutput grant,
                      att_.Resume(decryptor, ctx.eid_de, provision.Encode()));
  FeRun run{ctx.eid_de, grant.output, grant.signature, ct_msg.Serialize(),
            std::move(y)};
  VS_ASSIGN_OR_RETURN(AttestedOutput out,
                      att_.Resume(decryptor, fe->second.eid, run.Encode()));
  return DecodeAggregatorOutput(out.output);
}

absl::StatusOr<AggregatorOutput> ThresholdFeProtocol::Decrypt(
    std::string_view decryptor, const FunctionSpec& function, Handle h) {
  return DecryptImpl(decryptor, function, h, std::nullopt);
}

absl::StatusOr<AggregatorOutput> ThresholdFeProtocol::DecryptShortCircuit(
    std::string_view decryptor, const FunctionSpec& function, Handle h,
    Bytes y) {
  return DecryptImpl(decryptor, function, h, std::move(y));
}

std::vector<Authorization> ThresholdFeProtocol::Corrupt(std::string_view party) {
  std::string p(party);
  std::vector<Authorization> out;
  if (auto a = encryptors_.find(p); a != encryptors_.end()) {
    corrupted_.insert(p);
    for (const auto& [b, f] : a->second.issued) out.push_back({p, b, f});
  } else if (auto b = decryptors_.find(p); b != decryptors_.end()) {
    corrupted_.insert(p);
    for (const auto& [f, shares] : b->second.shares) {
      for (const auto& [sender, share] : shares) out.push_back({sender, p, f});
    }
  }
  return out;
}

std::vector<KeyShare> ThresholdFeProtocol::SharesHeld(
    std::string_view decryptor, const FunctionSpec& function) const {
  std::vector<KeyShare> out;
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  auto ctx = decryptors_.find(std::string(decryptor));
  if (!descriptor.ok() || ctx == decryptors_.end()) return out;
  auto it = ctx->second.shares.find(*descriptor);
  if (it == ctx->second.shares.end()) return out;
  for (const auto& [sender, share] : it->second) out.push_back(share);
  return out;
}

size_t ThresholdFeProtocol::AuthorizationCount(
    std::string_view decryptor, const FunctionSpec& function) const {
  absl::StatusOr<Bytes> descriptor = Descriptor(function);
  if (!descriptor.ok()) return 0;
  const Bytes& vk = ca_.GetK();
  std::set<Bytes> signers;
  for (const KeyShare& share : SharesHeld(decryptor, function)) {
    if (signers.contains(share.signer_vk)) continue;
    if (share.cert.subject_vk == share.signer_vk &&
        VerifyCertificate(vk, share.cert) &&
        Verify(share.signer_vk, KeyShareMessage(*descriptor, decryptor),
               share.sigma)) {
      signers.insert(share.signer_vk);
    }
  }
  return signers.size();
}

}  // namespace vaultsim
