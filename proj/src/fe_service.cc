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

#include "vaultsim/fe_service.h"

#include "fmt/format.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kBottom = "⊥";

bool IsBottom(const absl::Status& status) {
  std::optional<ErrorKind> kind = ErrorKindOf(status);
  if (!kind.has_value()) return false;
  switch (*kind) {
    case ErrorKind::kPolicyUnsatisfied:
    case ErrorKind::kNoSuchHandle:
    case ErrorKind::kEncryptFailed:
    case ErrorKind::kRejectInit:
    case ErrorKind::kRejected:
    case ErrorKind::kMalformed:
      return true;
    default:
      return false;
  }
}

std::string Describe(const absl::Status& status) {
  if (IsBottom(status)) return std::string(kBottom);
  std::optional<ErrorKind> kind = ErrorKindOf(status);
  if (!kind.has_value()) return "error:Unknown";
  if (*kind == ErrorKind::kEnclaveAbort) {
    return fmt::format("error:EnclaveAbort({})",
                       AbortCauseName(AbortCauseOf(status)));
  }
  return fmt::format("error:{}", ErrorKindName(*kind));
}

}  // namespace

SeededRng FunctionRandomness(const SeededRng& root, std::string_view decryptor,
                             ByteView descriptor) {
  return root.Derive(fmt::format("fn-rand/{}/{}", decryptor, ToHex(descriptor)));
}

std::string ObservableStatus(const absl::Status& status) {
  return status.ok() ? "ok" : Describe(status);
}

std::string ObservableHandle(const absl::StatusOr<Handle>& handle) {
  return handle.ok() ? fmt::format("h:{}", *handle) : Describe(handle.status());
}

std::string ObservableOutput(const absl::StatusOr<AggregatorOutput>& output) {
  if (!output.ok()) return Describe(output.status());
  if (output->pending()) return std::string(kBottom);
  return fmt::format("y:{}", ToHex(output->value()));
}

}  // namespace vaultsim
