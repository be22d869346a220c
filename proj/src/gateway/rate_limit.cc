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

#include "ctxeval/gateway/rate_limit.h"

#include <algorithm>
#include <thread>

namespace ctxeval {

TokenBucket::TokenBucket(double rate_per_second, double capacity)
    : rate_(rate_per_second), capacity_(capacity), tokens_(capacity), last_(Clock::now()) {}

void TokenBucket::RefillLocked(Clock::time_point now) {
  const std::chrono::duration<double> elapsed = now - last_;
  tokens_ = std::min(capacity_, tokens_ + elapsed.count() * rate_);
  last_ = now;
}

bool TokenBucket::TryAcquire() {
  std::lock_guard lock(mu_);
  RefillLocked(Clock::now());
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void TokenBucket::Acquire() {
  while (true) {
    std::chrono::duration<double> wait{};
    {
      std::lock_guard lock(mu_);
      RefillLocked(Clock::now());
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
    }
    std::this_thread::sleep_for(wait);
  }
}

}  // namespace ctxeval
