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

#ifndef VAULTSIM_IDEAL_FE_H_
#define VAULTSIM_IDEAL_FE_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vaultsim/fe_service.h"
#include "vaultsim/function.h"
#include "vaultsim/rng.h"

namespace vaultsim {

// Trusted-party reference for threshold functional encryption with stateful
// functions. Plaintexts are stored in the clear and every check is explicit.
class IdealThresholdFe final : public FunctionalEncryptionService {
 public:
  // `function_root` seeds the per-(decryptor, function) randomness streams.
  explicit IdealThresholdFe(SeededRng function_root)
      : function_root_(std::move(function_root)) {}

  absl::Status Setup(std::string_view party, FeRole role) override;
  absl::Status KeyShareGen(std::string_view encryptor,
                           const FunctionSpec& function,
                           std::string_view decryptor) override;
  absl::StatusOr<Handle> Encrypt(std::string_view party, ByteView x,
                                 int64_t threshold) override;
  absl::StatusOr<AggregatorOutput> Decrypt(std::string_view decryptor,
                                           const FunctionSpec& function,
                                           Handle h) override;
  std::vector<Authorization> Corrupt(std::string_view party) override;

  size_t AuthorizationCount(std::string_view decryptor,
                            const FunctionSpec& function) const override;
  size_t encryptor_count() const override { return encryptors_.size(); }
  bool IsSetUp(std::string_view party) const override {
    return setup_.contains(std::string(party));
  }

  // Introspection for tests.
  const FunctionState* StateOf(std::string_view decryptor,
                               const FunctionSpec& function) const;
  std::vector<std::string> SharesOf(std::string_view decryptor,
                                    const FunctionSpec& function) const;
  uint64_t evaluations() const { return evaluations_; }

 private:
  using Key = std::pair<std::string, Bytes>;  // (decryptor, descriptor)

  struct Entry {
    Bytes x;
    int64_t threshold = 0;
  };

  SeededRng function_root_;
  std::map<std::string, FeRole> setup_;
  std::vector<std::string> encryptors_;
  std::vector<std::string> decryptors_;
  std::map<Handle, Entry> messages_;
  std::map<Key, std::vector<std::string>> shares_;
  std::map<Key, FunctionState> states_;
  std::map<Key, SeededRng> streams_;
  std::set<std::string> corrupted_encryptors_;
  std::set<std::string> corrupted_decryptors_;
  Handle next_handle_ = 1;
  uint64_t evaluations_ = 0;
};

}  // namespace vaultsim

#endif  // VAULTSIM_IDEAL_FE_H_
