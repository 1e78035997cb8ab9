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

#include "vaultsim/status.h"

#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "fmt/format.h"

namespace vaultsim {
namespace {

constexpr char kKindUrl[] = "vaultsim/error-kind";
constexpr char kCauseUrl[] = "vaultsim/abort-cause";

absl::StatusCode CanonicalCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoSuchEnclave:
    case ErrorKind::kNoSuchHandle:
    case ErrorKind::kNoMeasurement:
    case ErrorKind::kUnknownFunction:
      return absl::StatusCode::kNotFound;
    case ErrorKind::kAlreadyCertified:
    case ErrorKind::kAlreadySetup:
      return absl::StatusCode::kAlreadyExists;
    case ErrorKind::kPolicyUnsatisfied:
    case ErrorKind::kFieldDenied:
    case ErrorKind::kDenied:
    case ErrorKind::kResumeRejected:
    case ErrorKind::kInstallRejected:
      return absl::StatusCode::kPermissionDenied;
    case ErrorKind::kEnclaveAbort:
    case ErrorKind::kSetupAborted:
    case ErrorKind::kValidationHalt:
      return absl::StatusCode::kAborted;
    case ErrorKind::kNotSetUp:
    case ErrorKind::kStaleRecord:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorKind::kIoError:
      return absl::StatusCode::kUnavailable;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDecryptFailed: return "DecryptFailed";
    case ErrorKind::kEncryptFailed: return "EncryptFailed";
    case ErrorKind::kInstallRejected: return "InstallRejected";
    case ErrorKind::kNoSuchEnclave: return "NoSuchEnclave";
    case ErrorKind::kResumeRejected: return "ResumeRejected";
    case ErrorKind::kEnclaveAbort: return "EnclaveAbort";
    case ErrorKind::kPolicyUnsatisfied: return "PolicyUnsatisfied";
    case ErrorKind::kAlreadyCertified: return "AlreadyCertified";
    case ErrorKind::kNoSuchHandle: return "NoSuchHandle";
    case ErrorKind::kValidationHalt: return "ValidationHalt";
    case ErrorKind::kStaleRecord: return "StaleRecord";
    case ErrorKind::kFieldDenied: return "FieldDenied";
    case ErrorKind::kNoMeasurement: return "NoMeasurement";
    case ErrorKind::kDenied: return "Denied";
    case ErrorKind::kAlreadySetup: return "AlreadySetup";
    case ErrorKind::kNotSetUp: return "NotSetUp";
    case ErrorKind::kRejectInit: return "RejectInit";
    case ErrorKind::kUnknownFunction: return "UnknownFunction";
    case ErrorKind::kEncodeFailed: return "EncodeFailed";
    case ErrorKind::kSetupAborted: return "SetupAborted";
    case ErrorKind::kMalformed: return "Malformed";
    case ErrorKind::kRejected: return "Rejected";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kInvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

std::string_view AbortCauseName(AbortCause cause) {
  switch (cause) {
    case AbortCause::kNone: return "none";
    case AbortCause::kBadQuote: return "bad DE quote";
    case AbortCause::kDoubleInit: return "double init";
    case AbortCause::kNotInitialized: return "not initialized";
    case AbortCause::kDuplicateSigner: return "duplicate signer";
    case AbortCause::kUncertifiedKey: return "uncertified key";
    case AbortCause::kBadShareSignature: return "bad share signature";
    case AbortCause::kBadProof: return "bad proof";
    case AbortCause::kBadAttestation: return "bad attestation";
    case AbortCause::kMalformedInput: return "malformed input";
    case AbortCause::kUnknownHandler: return "unknown handler";
    case AbortCause::kKeyDecryptFailed: return "key decrypt failed";
    case AbortCause::kFunctionFailed: return "function failed";
  }
  return "unknown";
}

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  absl::Status status(CanonicalCode(kind),
                      fmt::format("{}: {}", ErrorKindName(kind), message));
  status.SetPayload(kKindUrl,
                    absl::Cord(std::to_string(static_cast<int>(kind))));
  return status;
}

absl::Status EnclaveAbort(AbortCause cause, std::string_view detail) {
  std::string message(AbortCauseName(cause));
  if (!detail.empty()) message += fmt::format(" ({})", detail);
  absl::Status status = MakeError(ErrorKind::kEnclaveAbort, message);
  status.SetPayload(kCauseUrl,
                    absl::Cord(std::to_string(static_cast<int>(cause))));
  return status;
}

std::optional<ErrorKind> ErrorKindOf(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(kKindUrl);
  if (!payload.has_value()) return std::nullopt;
  int value = 0;
  if (!absl::SimpleAtoi(std::string(*payload), &value)) return std::nullopt;
  return static_cast<ErrorKind>(value);
}

AbortCause AbortCauseOf(const absl::Status& status) {
  auto payload = status.GetPayload(kCauseUrl);
  if (!payload.has_value()) return AbortCause::kNone;
  int value = 0;
  if (!absl::SimpleAtoi(std::string(*payload), &value)) return AbortCause::kNone;
  return static_cast<AbortCause>(value);
}

}  // namespace vaultsim
