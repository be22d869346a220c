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

#ifndef CTXEVAL_CORE_VERDICT_H_
#define CTXEVAL_CORE_VERDICT_H_

#include "ctxeval/core/types.h"

namespace ctxeval {

// Maps a position-relative verdict back onto the candidates. Total.
Verdict CanonicalizeVerdict(RawVerdict raw, Position presented_first);

// Inverse direction: which raw verdict names `verdict` when `presented_first`
// is shown first. Tie and Invalid map to Tie and Unparsed.
RawVerdict PresentVerdict(Verdict verdict, Position presented_first);

Verdict SwapCandidates(Verdict verdict);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_VERDICT_H_
