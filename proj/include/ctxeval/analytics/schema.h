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

#ifndef CTXEVAL_ANALYTICS_SCHEMA_H_
#define CTXEVAL_ANALYTICS_SCHEMA_H_

#include <string>
#include <vector>

#include "ctxeval/core/json.h"

namespace ctxeval {

// Validates `doc` against a JSON Schema restricted to the keywords the
// shipped schemas use: type, properties, required, additionalProperties,
// items, enum, const, minimum, maximum, minItems, maxItems, anyOf and local
// "$ref" pointers. Returns one message per violation, empty when valid.
std::vector<std::string> SchemaErrors(const Json& doc, const Json& schema);

}  // namespace ctxeval

#endif  // CTXEVAL_ANALYTICS_SCHEMA_H_
