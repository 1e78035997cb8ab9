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

#ifndef VAULTSIM_FE_SERVICE_H_
#define VAULTSIM_FE_SERVICE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/function.h"
#include "vaultsim/rng.h"
#include "vaultsim/setups.h"

namespace vaultsim {

enum class FeRole { kEncryptor, kDecryptor, kAuthority };

struct Authorization {
  std::string encryptor;
  std::string decryptor;
  Bytes function;  // descriptor

  bool operator==(const Authorization&) const = default;
};

// Threshold, dynamic, decentralised functional encryption with stateful
// functions. Implemented both by the ideal functionality and by the
// enclave-based protocol so callers can run over either.
class FunctionalEncryptionService {
 public:
  virtual ~FunctionalEncryptionService() = default;

  virtual absl::Status Setup(std::string_view party, FeRole role) = 0;
  virtual absl::Status KeyShareGen(std::string_view encryptor,
                                   const FunctionSpec& function,
                                   std::string_view decryptor) = 0;
  virtual absl::StatusOr<Handle> Encrypt(std::string_view party, ByteView x,
                                         int64_t threshold) = 0;
  virtual absl::StatusOr<AggregatorOutput> Decrypt(
      std::string_view decryptor, const FunctionSpec& function, Handle h) = 0;
  // An encryptor discloses the (decryptor, function) pairs it authorised; a
  // decryptor discloses the shares it holds.
  virtual std::vector<Authorization> Corrupt(std::string_view party) = 0;

  // Distinct valid authorisations the decryptor holds for `function`.
  virtual size_t AuthorizationCount(std::string_view decryptor,
                                    const FunctionSpec& function) const = 0;
  virtual size_t encryptor_count() const = 0;
  virtual bool IsSetUp(std::string_view party) const = 0;
};

// Randomness stream fed to `function` when evaluated for `decryptor`.
SeededRng FunctionRandomness(const SeededRng& root, std::string_view decryptor,
                             ByteView descriptor);

// Observable forms used when comparing two implementations. Pending,
// PolicyUnsatisfied, unknown handles, function errors and encryption
// failures all read as "⊥".
std::string ObservableStatus(const absl::Status& status);
std::string ObservableHandle(const absl::StatusOr<Handle>& handle);
std::string ObservableOutput(const absl::StatusOr<AggregatorOutput>& output);

}  // namespace vaultsim

#endif  // VAULTSIM_FE_SERVICE_H_
