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

#include "ctxeval/core/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

namespace ctxeval {
namespace {

std::atomic<LogLevel> g_min_level{LogLevel::kInfo};

std::string_view Tag(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarning: return "warning";
    case LogLevel::kError: return "error";
  }
  return "?";
}

}  // namespace

void SetMinLogLevel(LogLevel level) { g_min_level = level; }

void Log(LogLevel level, std::string_view message) {
  if (level < g_min_level.load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[ctxeval " << Tag(level) << "] " << message << '\n';
}

}  // namespace ctxeval
