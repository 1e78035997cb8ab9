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

#ifndef VAULTSIM_OP_COUNTER_H_
#define VAULTSIM_OP_COUNTER_H_

#include <cstdint>
#include <map>
#include <string>

namespace vaultsim {

enum class OpKind {
  kEnclaveInstall,
  kEnclaveResume,
  kPkeKeygen,
  kPkeEncrypt,
  kPkeDecrypt,
  kSigKeygen,
  kSign,
  kVerify,
};

struct OpCounts {
  uint64_t enclave_installs = 0;
  uint64_t enclave_resumes = 0;
  uint64_t pke_keygen = 0;
  uint64_t pke_encrypt = 0;
  uint64_t pke_decrypt = 0;
  uint64_t sig_keygen = 0;
  uint64_t sign = 0;
  uint64_t verify = 0;

  uint64_t pke_ops() const { return pke_keygen + pke_encrypt + pke_decrypt; }
  uint64_t signature_ops() const { return sig_keygen + sign + verify; }

  OpCounts operator-(const OpCounts& other) const;
  bool operator==(const OpCounts&) const = default;
};

// Per-actor tally of cryptographic and enclave operations. Operations are
// attributed to whichever actor is named by the innermost live Scope on the
// current thread; operations outside any scope are not counted.
class OpCounter {
 public:
  class Scope {
   public:
    Scope(OpCounter* counter, std::string actor);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    OpCounter* prev_counter_;
    std::string prev_actor_;
  };

  static void Record(OpKind kind);

  OpCounts For(const std::string& actor) const;
  const std::map<std::string, OpCounts>& all() const { return counts_; }

 private:
  std::map<std::string, OpCounts> counts_;
};

}  // namespace vaultsim

#endif  // VAULTSIM_OP_COUNTER_H_
