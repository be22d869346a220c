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

#ifndef CTXEVAL_JUDGING_PARSE_H_
#define CTXEVAL_JUDGING_PARSE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctxeval/core/types.h"

namespace ctxeval {

// Reads a pairwise verdict. The starred "**output: {...}**" marker is tried
// first; failing that, the text must contain exactly one JSON object with a
// judgement key (or several that agree). The value is matched
// case-insensitively against "Response 1", "Response 2" and "Tie". Anything
// else is Unparsed; text outside the object never influences the result.
RawVerdict ParseVerdict(std::string_view raw_text);

// The free text after the output object, with a leading "Justification:"
// label removed. The whole reply when no object is found.
std::string ExtractJustification(std::string_view raw_text);

// Leading integer of a constraint-count reply ("3\n..." or "Output: 3 ...").
// Throws ParseFailure when there is none and OutOfRange when it exceeds
// `followup_count`.
int ParseConstraintCount(std::string_view raw_text, std::size_t followup_count);

// One 1-5 rating per choice from the output dictionary. Throws ParseFailure
// for a missing dictionary, a non-integer or an out-of-range value, and
// PartialRatings (message lists the keys) when choices are absent.
std::map<std::string, int> ParseRatings(std::string_view raw_text,
                                        const std::vector<std::string>& choices);

// Surface or Content from the classifier reply; Unknown otherwise.
JustificationClass ParseJustificationClass(std::string_view raw_text);

}  // namespace ctxeval

#endif  // CTXEVAL_JUDGING_PARSE_H_
