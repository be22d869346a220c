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

#ifndef CTXEVAL_CORE_DIGEST_H_
#define CTXEVAL_CORE_DIGEST_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace ctxeval {

using Sha256Bytes = std::array<std::uint8_t, 32>;

Sha256Bytes Sha256(std::string_view data);
std::string Sha256Hex(std::string_view data);

// Hash of several fields, each length-prefixed so that ("ab","c") and
// ("a","bc") never collide.
std::string FieldDigest(std::initializer_list<std::string_view> fields);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_DIGEST_H_
