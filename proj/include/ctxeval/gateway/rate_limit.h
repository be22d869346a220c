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

#ifndef CTXEVAL_GATEWAY_RATE_LIMIT_H_
#define CTXEVAL_GATEWAY_RATE_LIMIT_H_

#include <chrono>
#include <mutex>

namespace ctxeval {

// Blocking token bucket: `rate` tokens per second, at most `capacity` banked.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  TokenBucket(double rate_per_second, double capacity);

  // Takes one token, sleeping until one is available.
  void Acquire();

  // Non-blocking variant; false when the bucket is empty.
  bool TryAcquire();

 private:
  void RefillLocked(Clock::time_point now);

  std::mutex mu_;
  double rate_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_RATE_LIMIT_H_
