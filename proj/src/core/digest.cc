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

#include "ctxeval/core/digest.h"

#include <openssl/evp.h>

#include <memory>

#include "ctxeval/core/error.h"

namespace ctxeval {

Sha256Bytes Sha256(std::string_view data) {
  Sha256Bytes out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error(ErrorCode::kIoError, "sha256 failed");
  }
  return out;
}

std::string Sha256Hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  const auto bytes = Sha256(data);
  std::string out;
  out.reserve(64);
  for (auto b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

std::string FieldDigest(std::initializer_list<std::string_view> fields) {
  std::string buf;
  for (auto f : fields) {
    buf.append(std::to_string(f.size()));
    buf.push_back(':');
    buf.append(f);
  }
  return Sha256Hex(buf);
}

}  // namespace ctxeval
