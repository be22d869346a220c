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

#include "ctxeval/core/error.h"

namespace ctxeval {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kInvalidContextSpec: return "InvalidContextSpec";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kCredentialMissing: return "CredentialMissing";
    case ErrorCode::kRateLimitedExhausted: return "RateLimitedExhausted";
    case ErrorCode::kProviderError: return "ProviderError";
    case ErrorCode::kMockMiss: return "MockMiss";
    case ErrorCode::kEmptyResponse: return "EmptyResponse";
    case ErrorCode::kMissingContext: return "MissingContext";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kEmptyContext: return "EmptyContext";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kPartialRatings: return "PartialRatings";
    case ErrorCode::kEmptyVotes: return "EmptyVotes";
    case ErrorCode::kUndefined: return "Undefined";
    case ErrorCode::kHeterogeneousRaters: return "HeterogeneousRaters";
    case ErrorCode::kPairingError: return "PairingError";
    case ErrorCode::kEmptyAfterExclusion: return "EmptyAfterExclusion";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMissingArtifact: return "MissingArtifact";
    case ErrorCode::kSelfPreference: return "SelfPreference";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

ProviderFailure::ProviderFailure(ErrorCode code, int status,
                                 const std::string& body_excerpt)
    : Error(code, "status " + std::to_string(status) + ": " + body_excerpt),
      status_(status),
      body_excerpt_(body_excerpt) {}

}  // namespace ctxeval
