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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qcor/heterogeneous_map.hpp"
#include "qcor/pauli.hpp"

namespace qcor {

/// Node of the result tree: execution metadata, measurement counts (empty for
/// nodes that did not execute a kernel) and child results in the order they
/// were produced.
///
/// Serialized form:
///   {"metadata": {...}, "counts": {"<bitstring>": n}, "children": [...]}
/// with bitstrings written qubit 0 first.
struct ResultBuffer {
  HeterogeneousMap metadata;
  ShotCounts counts;
  std::vector<ResultBuffer> children;

  ResultBuffer& add_child(ResultBuffer child) {
    children.push_back(std::move(child));
    return children.back();
  }

  nlohmann::json to_json() const;
  static ResultBuffer from_json(const nlohmann::json& j);

  /// Number of nodes in the tree, this one included.
  std::size_t tree_size() const;

  friend bool operator==(const ResultBuffer&, const ResultBuffer&) = default;
};

/// Copy of the tree with `key` removed from every node's metadata.
ResultBuffer without_key(const ResultBuffer& buffer, std::string_view key);

}  // namespace qcor
