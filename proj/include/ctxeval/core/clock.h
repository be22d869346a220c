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

#ifndef CTXEVAL_CORE_CLOCK_H_
#define CTXEVAL_CORE_CLOCK_H_

#include <functional>
#include <string>

namespace ctxeval {

// Source of record timestamps (ISO-8601 UTC).
using TimestampFn = std::function<std::string()>;

std::string UtcNowIso8601();

inline constexpr const char* kEpochTimestamp = "1970-01-01T00:00:00Z";

// Wall clock normally; the epoch when deterministic output is requested.
TimestampFn MakeTimestampFn(bool deterministic);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_CLOCK_H_
