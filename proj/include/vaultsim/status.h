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

#ifndef VAULTSIM_STATUS_H_
#define VAULTSIM_STATUS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace vaultsim {

// Named failure modes surfaced by the library. Each one is attached to an
// absl::Status as a payload so callers can branch on it without parsing
// messages.
enum class ErrorKind {
  kDecryptFailed,
  kEncryptFailed,
  kInstallRejected,
  kNoSuchEnclave,
  kResumeRejected,
  kEnclaveAbort,
  kPolicyUnsatisfied,
  kAlreadyCertified,
  kNoSuchHandle,
  kValidationHalt,
  kStaleRecord,
  kFieldDenied,
  kNoMeasurement,
  kDenied,
  kAlreadySetup,
  kNotSetUp,
  kRejectInit,
  kUnknownFunction,
  kEncodeFailed,
  kSetupAborted,
  kMalformed,
  kRejected,
  kParseError,
  kIoError,
  kInvalidScenario,
};

// Machine-readable cause carried by ErrorKind::kEnclaveAbort.
enum class AbortCause {
  kNone,
  kBadQuote,
  kDoubleInit,
  kNotInitialized,
  kDuplicateSigner,
  kUncertifiedKey,
  kBadShareSignature,
  kBadProof,
  kBadAttestation,
  kMalformedInput,
  kUnknownHandler,
  kKeyDecryptFailed,
  kFunctionFailed,
};

std::string_view ErrorKindName(ErrorKind kind);
std::string_view AbortCauseName(AbortCause cause);

absl::Status MakeError(ErrorKind kind, std::string_view message);
absl::Status EnclaveAbort(AbortCause cause, std::string_view detail = {});

// Returns the ErrorKind attached to `status`, or nullopt for OK statuses and
// statuses that did not originate here.
std::optional<ErrorKind> ErrorKindOf(const absl::Status& status);
AbortCause AbortCauseOf(const absl::Status& status);

inline bool IsError(const absl::Status& status, ErrorKind kind) {
  return ErrorKindOf(status) == kind;
}

}  // namespace vaultsim

#define VS_STATUS_CONCAT_INNER_(a, b) a##b
#define VS_STATUS_CONCAT_(a, b) VS_STATUS_CONCAT_INNER_(a, b)

#define VS_RETURN_IF_ERROR(expr)                  \
  do {                                            \
    ::absl::Status vs_status_ = (expr);           \
    if (!vs_status_.ok()) return vs_status_;      \
  } while (false)

#define VS_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(tmp).value()

#define VS_ASSIGN_OR_RETURN(lhs, expr) \
  VS_ASSIGN_OR_RETURN_IMPL_(           \
      VS_STATUS_CONCAT_(vs_statusor_, __LINE__), lhs, expr)

#endif  // VAULTSIM_STATUS_H_
