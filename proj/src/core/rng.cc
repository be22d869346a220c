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

#include "ctxeval/core/rng.h"

#include <string>

#include "ctxeval/core/digest.h"

namespace ctxeval {
namespace {

std::uint64_t FirstWord(const Sha256Bytes& bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[i];
  return v;
}

std::string LengthPrefixed(std::uint64_t seed,
                           std::initializer_list<std::string_view> labels) {
  std::string buf = "ctxeval-stream/" + std::to_string(seed);
  for (auto l : labels) {
    buf.push_back('|');
    buf.append(std::to_string(l.size()));
    buf.push_back(':');
    buf.append(l);
  }
  return buf;
}

}  // namespace

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::Below(std::uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = Next();
  } while (v >= limit);
  return v % bound;
}

SplitMix64 SplitMix64::Split(std::string_view label) const {
  return SplitMix64(FirstWord(Sha256(LengthPrefixed(state_, {label}))));
}

SplitMix64 StreamFor(std::uint64_t seed, std::initializer_list<std::string_view> labels) {
  return SplitMix64(FirstWord(Sha256(LengthPrefixed(seed, labels))));
}

}  // namespace ctxeval
