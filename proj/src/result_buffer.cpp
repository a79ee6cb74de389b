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

#include "qcor/result_buffer.hpp"

#include "qcor/error.hpp"

namespace qcor {

using nlohmann::json;

json ResultBuffer::to_json() const {
  json children_json = json::array();
  for (const auto& child : children) children_json.push_back(child.to_json());
  json counts_json = json::object();
  for (const auto& [bits, n] : counts) counts_json[bits] = n;
  return json{{"metadata", metadata.to_json()},
              {"counts", std::move(counts_json)},
              {"children", std::move(children_json)}};
}

ResultBuffer ResultBuffer::from_json(const json& j) {
  if (!j.is_object() || !j.contains("metadata") || !j.contains("counts") ||
      !j.contains("children")) {
    throw Error(ErrorCode::kInvalidArgument,
                "result buffer needs 'metadata', 'counts' and 'children'");
  }
  ResultBuffer out;
  out.metadata = HeterogeneousMap::from_json(j.at("metadata"));
  const auto& counts = j.at("counts");
  if (!counts.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "'counts' must be an object");
  }
  for (const auto& [bits, n] : counts.items()) {
    if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "count for '" + bits + "' must be a non-negative integer");
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "invalid bitstring '" + bits + "'");
    }
    out.counts[bits] = n.get<std::uint64_t>();
  }
  const auto& children = j.at("children");
  if (!children.is_array()) {
    throw Error(ErrorCode::kInvalidArgument, "'children' must be an array");
  }
  for (const auto& child : children) out.children.push_back(from_json(child));
  return out;
}

std::size_t ResultBuffer::tree_size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.tree_size();
  return n;
}

ResultBuffer without_key(const ResultBuffer& buffer, std::string_view key) {
  ResultBuffer out = buffer;
  out.metadata.erase(key);
  for (auto& child : out.children) child = without_key(child, key);
  return out;
}

}  // namespace qcor
