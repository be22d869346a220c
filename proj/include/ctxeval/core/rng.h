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

#ifndef CTXEVAL_CORE_RNG_H_
#define CTXEVAL_CORE_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace ctxeval {

// SplitMix64. Small, seedable, and identical on every platform, unlike the
// standard distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t Next();

  // Unbiased draw from [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);

  bool Coin() { return (Next() >> 63) != 0; }

  // Independent child generator for a labelled sub-stream.
  SplitMix64 Split(std::string_view label) const;

 private:
  std::uint64_t state_;
};

// Derives the generator for a named stream: the same (seed, labels) always
// yields the same sequence, and distinct labels yield unrelated sequences.
SplitMix64 StreamFor(std::uint64_t seed, std::initializer_list<std::string_view> labels);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_RNG_H_
