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

#include "ctxeval/core/verdict.h"

namespace ctxeval {

Verdict CanonicalizeVerdict(RawVerdict raw, Position presented_first) {
  const Verdict first = presented_first == Position::kA ? Verdict::kA : Verdict::kB;
  const Verdict second = presented_first == Position::kA ? Verdict::kB : Verdict::kA;
  switch (raw) {
    case RawVerdict::kResponse1: return first;
    case RawVerdict::kResponse2: return second;
    case RawVerdict::kTie: return Verdict::kTie;
    case RawVerdict::kUnparsed: return Verdict::kInvalid;
  }
  return Verdict::kInvalid;
}

RawVerdict PresentVerdict(Verdict verdict, Position presented_first) {
  switch (verdict) {
    case Verdict::kA:
      return presented_first == Position::kA ? RawVerdict::kResponse1 : RawVerdict::kResponse2;
    case Verdict::kB:
      return presented_first == Position::kB ? RawVerdict::kResponse1 : RawVerdict::kResponse2;
    case Verdict::kTie: return RawVerdict::kTie;
    case Verdict::kInvalid: return RawVerdict::kUnparsed;
  }
  return RawVerdict::kUnparsed;
}

Verdict SwapCandidates(Verdict verdict) {
  if (verdict == Verdict::kA) return Verdict::kB;
  if (verdict == Verdict::kB) return Verdict::kA;
  return verdict;
}

}  // namespace ctxeval
