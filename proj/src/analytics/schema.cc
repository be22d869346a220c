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

#include "ctxeval/analytics/schema.h"

#include <algorithm>
#include <cmath>

namespace ctxeval {
namespace {

bool HasType(const Json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void Check(const Json& v, const Json& schema, const std::string& path) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) Fail(path, "no value allowed");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      const auto pointer = ref->get<std::string>();
      if (pointer.rfind("#", 0) != 0) {
        Fail(path, "unsupported $ref " + pointer);
        return;
      }
      Check(v, root_.at(Json::json_pointer(pointer.substr(1))), path);
      return;
    }
    if (auto type = schema.find("type"); type != schema.end()) {
      bool ok = false;
      if (type->is_string()) {
        ok = HasType(v, type->get<std::string>());
      } else {
        for (const auto& t : *type) ok = ok || HasType(v, t.get<std::string>());
      }
      if (!ok) {
        Fail(path, "expected type " + type->dump() + ", got " + v.type_name());
        return;
      }
    }
    if (auto options = schema.find("enum"); options != schema.end()) {
      if (std::find(options->begin(), options->end(), v) == options->end()) {
        Fail(path, v.dump() + " not in enum");
      }
    }
    if (auto c = schema.find("const"); c != schema.end() && *c != v) {
      Fail(path, v.dump() + " != const " + c->dump());
    }
    if (auto any = schema.find("anyOf"); any != schema.end()) {
      bool matched = false;
      for (const auto& option : *any) {
        Validator probe(root_);
        probe.Check(v, option, path);
        if (probe.errors_.empty()) {
          matched = true;
          break;
        }
      }
      if (!matched) Fail(path, "matches no anyOf branch");
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (auto lo = schema.find("minimum"); lo != schema.end() && x < lo->get<double>()) {
        Fail(path, std::to_string(x) + " below minimum " + lo->dump());
      }
      if (auto hi = schema.find("maximum"); hi != schema.end() && x > hi->get<double>()) {
        Fail(path, std::to_string(x) + " above maximum " + hi->dump());
      }
    }
    if (v.is_array()) {
      if (auto lo = schema.find("minItems"); lo != schema.end() && v.size() < lo->get<std::size_t>()) {
        Fail(path, "fewer than " + lo->dump() + " items");
      }
      if (auto hi = schema.find("maxItems"); hi != schema.end() && v.size() > hi->get<std::size_t>()) {
        Fail(path, "more than " + hi->dump() + " items");
      }
      if (auto items = schema.find("items"); items != schema.end()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          Check(v[i], *items, path + "/" + std::to_string(i));
        }
      }
    }
    if (v.is_object()) {
      if (auto required = schema.find("required"); required != schema.end()) {
        for (const auto& key : *required) {
          if (!v.contains(key.get<std::string>())) {
            Fail(path, "missing required property " + key.get<std::string>());
          }
        }
      }
      const auto props = schema.find("properties");
      const auto additional = schema.find("additionalProperties");
      for (auto it = v.begin(); it != v.end(); ++it) {
        const auto child = path + "/" + it.key();
        if (props != schema.end() && props->contains(it.key())) {
          Check(it.value(), props->at(it.key()), child);
        } else if (additional != schema.end()) {
          Check(it.value(), *additional, child);
        }
      }
    }
  }

  std::vector<std::string> errors_;

 private:
  void Fail(const std::string& path, const std::string& message) {
    errors_.push_back((path.empty() ? "/" : path) + ": " + message);
  }

  const Json& root_;
};

}  // namespace

std::vector<std::string> SchemaErrors(const Json& doc, const Json& schema) {
  Validator validator(schema);
  validator.Check(doc, schema, "");
  return validator.errors_;
}

}  // namespace ctxeval
