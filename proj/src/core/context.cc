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

#include "ctxeval/core/context.h"

#include "ctxeval/core/digest.h"
#include "ctxeval/core/rng.h"

namespace ctxeval {

SampledContext SampleContext(const ContextSpec& spec, std::uint64_t seed) {
  if (spec.followups.empty()) {
    throw Error(ErrorCode::kInvalidContextSpec,
                "context spec for " + spec.query_id + " has no followups");
  }
  SampledContext out;
  out.query_id = spec.query_id;
  out.seed = seed;
  out.pairs.reserve(spec.followups.size());
  for (std::size_t i = 0; i < spec.followups.size(); ++i) {
    const auto& f = spec.followups[i];
    if (f.answer_choices.empty()) {
      throw Error(ErrorCode::kInvalidContextSpec, "followup has no choices: " + f.question);
    }
    const std::string index = std::to_string(i);
    auto rng = StreamFor(seed, {"sample_context", spec.query_id, index});
    const auto pick = rng.Below(f.answer_choices.size());
    out.pairs.push_back({f.question, f.answer_choices[pick]});
  }
  return out;
}

std::string ContextDigest(const SampledContext& context) {
  std::string buf;
  auto put = [&buf](const std::string& s) {
    buf.append(std::to_string(s.size()));
    buf.push_back(':');
    buf.append(s);
  };
  put(context.query_id);
  for (const auto& p : context.pairs) {
    put(p.question);
    put(p.answer);
  }
  return Sha256Hex(buf);
}

std::string RenderContext(const SampledContext& context) {
  std::string out;
  for (const auto& p : context.pairs) {
    if (!out.empty()) out.push_back('\n');
    out += "Q: " + p.question + "\nA: " + p.answer;
  }
  return out;
}

}  // namespace ctxeval
