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

#ifndef CTXEVAL_CORE_LOG_H_
#define CTXEVAL_CORE_LOG_H_

#include <string_view>

namespace ctxeval {

enum class LogLevel { kDebug, kInfo, kWarning, kError };

// Thread-safe line logging to stderr.
void Log(LogLevel level, std::string_view message);
void SetMinLogLevel(LogLevel level);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_LOG_H_
