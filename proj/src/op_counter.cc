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

#include "vaultsim/op_counter.h"

#include <utility>

namespace vaultsim {
namespace {

thread_local OpCounter* current_counter = nullptr;
thread_local std::string current_actor;

}  // namespace

OpCounts OpCounts::operator-(const OpCounts& o) const {
  OpCounts d;
  d.enclave_installs = enclave_installs - o.enclave_installs;
  d.enclave_resumes = enclave_resumes - o.enclave_resumes;
  d.pke_keygen = pke_keygen - o.pke_keygen;
  d.pke_encrypt = pke_encrypt - o.pke_encrypt;
  d.pke_decrypt = pke_decrypt - o.pke_decrypt;
  d.sig_keygen = sig_keygen - o.sig_keygen;
  d.sign = sign - o.sign;
  d.verify = verify - o.verify;
  return d;
}

OpCounter::Scope::Scope(OpCounter* counter, std::string actor)
    : prev_counter_(current_counter), prev_actor_(std::move(current_actor)) {
  current_counter = counter;
  current_actor = std::move(actor);
}

OpCounter::Scope::~Scope() {
  current_counter = prev_counter_;
  current_actor = std::move(prev_actor_);
}

void OpCounter::Record(OpKind kind) {
  if (current_counter == nullptr) return;
  OpCounts& c = current_counter->counts_[current_actor];
  switch (kind) {
    case OpKind::kEnclaveInstall: ++c.enclave_installs; break;
    case OpKind::kEnclaveResume: ++c.enclave_resumes; break;
    case OpKind::kPkeKeygen: ++c.pke_keygen; break;
    case OpKind::kPkeEncrypt: ++c.pke_encrypt; break;
    case OpKind::kPkeDecrypt: ++c.pke_decrypt; break;
    case OpKind::kSigKeygen: ++c.sig_keygen; break;
    case OpKind::kSign: ++c.sign; break;
    case OpKind::kVerify: ++c.verify; break;
  }
}

OpCounts OpCounter::For(const std::string& actor) const {
  auto it = counts_.find(actor);
  return it == counts_.end() ? OpCounts{} : it->second;
}

}  // namespace vaultsim
