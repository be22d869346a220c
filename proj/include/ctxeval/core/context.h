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

#ifndef CTXEVAL_CORE_CONTEXT_H_
#define CTXEVAL_CORE_CONTEXT_H_

#include <cstdint>
#include <string>

#include "ctxeval/core/types.h"

namespace ctxeval {

// Draws one answer per followup, uniformly over its choices. The draw for
// followup i comes from the stream (seed, query_id, i), so editing one
// followup leaves every other draw untouched.
SampledContext SampleContext(const ContextSpec& spec, std::uint64_t seed);

// SHA-256 over the query id and the ordered (question, answer) pairs.
std::string ContextDigest(const SampledContext& context);

// "Q: <question>\nA: <answer>" lines, the rendering shown to generators and
// judges.
std::string RenderContext(const SampledContext& context);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_CONTEXT_H_
