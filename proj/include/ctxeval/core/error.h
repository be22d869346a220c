// Copyright 2026 The ctxeval Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTXEVAL_CORE_ERROR_H_
#define CTXEVAL_CORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctxeval {

enum class ErrorCode {
  kPrecondition,
  kInvalidContextSpec,
  kParseFailure,
  kCredentialMissing,
  kRateLimitedExhausted,
  kProviderError,
  kMockMiss,
  kEmptyResponse,
  kMissingContext,
  kGenerationFailed,
  kEmptyContext,
  kOutOfRange,
  kPartialRatings,
  kEmptyVotes,
  kUndefined,
  kHeterogeneousRaters,
  kPairingError,
  kEmptyAfterExclusion,
  kValidationError,
  kIoError,
  kMissingArtifact,
  kSelfPreference,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every recoverable failure in the library is reported as an Error carrying
// a machine-readable code. Callers branch on code(), never on the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the provider layer. `status` is the HTTP status when one exists,
// 0 for transport failures.
class ProviderFailure : public Error {
 public:
  ProviderFailure(ErrorCode code, int status, const std::string& body_excerpt);

  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_ERROR_H_
