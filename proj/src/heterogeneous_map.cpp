// Copyright 2026 The qcor-rt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcor/heterogeneous_map.hpp"

#include <algorithm>

namespace qcor {

using nlohmann::json;

const HeterogeneousMap::Value& HeterogeneousMap::lookup(
    std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::kMissingKey, "no key '" + std::string(key) + "'");
  }
  return it->second;
}

bool HeterogeneousMap::erase(std::string_view key) {
  auto it = values_.find(key);
  if (it == values_.end()) return false;
  values_.erase(it);
  return true;
}

std::vector<std::string> HeterogeneousMap::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

const char* HeterogeneousMap::kind_name(Kind kind) {
  switch (kind) {
    case Kind::kInteger: return "integer";
    case Kind::kReal: return "real";
    case Kind::kComplex: return "complex";
    case Kind::kBoolean: return "boolean";
    case Kind::kString: return "string";
    case Kind::kRealList: return "list-of-real";
    case Kind::kStringList: return "list-of-string";
    case Kind::kMap: return "map";
    case Kind::kIntegerList: return "list-of-integer";
    case Kind::kRealMatrix: return "list-of-real-list";
  }
  return "unknown";
}

bool operator==(const HeterogeneousMap& a, const HeterogeneousMap& b) {
  if (a.values_.size() != b.values_.size()) return false;
  auto ib = b.values_.begin();
  for (const auto& [key, va] : a.values_) {
    const auto& [kb, vb] = *ib++;
    if (key != kb || va.index() != vb.index()) return false;
    if (const auto* na = std::get_if<HeterogeneousMap::Nested>(&va)) {
      if (!(**na == *std::get<HeterogeneousMap::Nested>(vb))) return false;
    } else if (va != vb) {
      return false;
    }
  }
  return true;
}

json HeterogeneousMap::to_json() const {
  json out = json::object();
  for (const auto& [key, value] : values_) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Nested>) {
            out[key] = v->to_json();
          } else if constexpr (std::is_same_v<T, std::complex<double>>) {
            out[key] = json::array({v.real(), v.imag()});
          } else {
            out[key] = v;
          }
        },
        value);
  }
  return out;
}

HeterogeneousMap HeterogeneousMap::from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "metadata must be a JSON object");
  }
  HeterogeneousMap out;
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out.put(key, from_json(v));
    } else if (v.is_boolean()) {
      out.put(key, v.get<bool>());
    } else if (v.is_number_integer()) {
      out.put(key, v.get<std::int64_t>());
    } else if (v.is_number()) {
      out.put(key, v.get<double>());
    } else if (v.is_string()) {
      out.put(key, v.get<std::string>());
    } else if (v.is_array()) {
      auto all = [&](auto pred) { return std::all_of(v.begin(), v.end(), pred); };
      if (!v.empty() && all([](const json& e) { return e.is_string(); })) {
        out.put(key, v.get<StringList>());
      } else if (!v.empty() &&
                 all([](const json& e) { return e.is_number_integer(); })) {
        out.put(key, v.get<IntegerList>());
      } else if (all([](const json& e) { return e.is_number(); })) {
        out.put(key, v.get<RealList>());
      } else if (all([](const json& e) {
                   return e.is_array() &&
                          std::all_of(e.begin(), e.end(), [](const json& x) {
                            return x.is_number();
                          });
                 })) {
        out.put(key, v.get<RealMatrix>());
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unsupported array value for key '" + key + "'");
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unsupported value for key '" + key + "'");
    }
  }
  return out;
}

}  // namespace qcor
