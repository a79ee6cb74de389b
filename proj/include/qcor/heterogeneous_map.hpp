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

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qcor/error.hpp"

namespace qcor {

class HeterogeneousMap;

/// String-keyed map whose values keep their stored kind: reading a value at
/// any other kind is an error, never a conversion.
class HeterogeneousMap {
 public:
  enum class Kind {
    kInteger,
    kReal,
    kComplex,
    kBoolean,
    kString,
    kRealList,
    kStringList,
    kMap,
    kIntegerList,
    kRealMatrix,
  };

  using RealList = std::vector<double>;
  using StringList = std::vector<std::string>;
  using IntegerList = std::vector<std::int64_t>;
  using RealMatrix = std::vector<std::vector<double>>;

  HeterogeneousMap() = default;

  template <typename T>
  HeterogeneousMap& put(std::string key, T&& value) {
    values_[std::move(key)] = make_value(std::forward<T>(value));
    return *this;
  }

  /// Typed read. Throws kMissingKey when absent and kKindMismatch when the
  /// stored kind differs from T.
  template <typename T>
  const T& get(std::string_view key) const {
    const Value& v = lookup(key);
    if constexpr (std::is_same_v<T, HeterogeneousMap>) {
      if (const auto* p = std::get_if<Nested>(&v)) return **p;
    } else {
      if (const auto* p = std::get_if<T>(&v)) return *p;
    }
    throw Error(ErrorCode::kKindMismatch,
                "key '" + std::string(key) + "' holds " +
                    kind_name(kind_of(v)));
  }

  template <typename T>
  T get_or(std::string_view key, T fallback) const {
    return contains(key) ? get<T>(key) : fallback;
  }

  bool contains(std::string_view key) const {
    return values_.find(key) != values_.end();
  }
  Kind kind(std::string_view key) const { return kind_of(lookup(key)); }
  bool erase(std::string_view key);
  /// Copies `key` from `other`, keeping its kind.
  HeterogeneousMap& copy_from(const HeterogeneousMap& other,
                              std::string_view key) {
    values_.insert_or_assign(std::string(key), other.lookup(key));
    return *this;
  }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::vector<std::string> keys() const;

  static const char* kind_name(Kind kind);

  /// JSON object; complex values become [re, im], nested maps nested objects.
  nlohmann::json to_json() const;

  /// Inverse of to_json up to one ambiguity: a [re, im] pair reads back as a
  /// real list.
  static HeterogeneousMap from_json(const nlohmann::json& j);

  friend bool operator==(const HeterogeneousMap& a, const HeterogeneousMap& b);

 private:
  using Nested = std::shared_ptr<const HeterogeneousMap>;
  using Value =
      std::variant<std::int64_t, double, std::complex<double>, bool,
                   std::string, RealList, StringList, Nested, IntegerList,
                   RealMatrix>;

  template <typename T>
  static Value make_value(T&& value) {
    using D = std::remove_cvref_t<T>;
    if constexpr (std::is_same_v<D, HeterogeneousMap>) {
      return Nested(std::make_shared<const HeterogeneousMap>(
          std::forward<T>(value)));
    } else if constexpr (std::is_same_v<D, bool>) {
      return value;
    } else if constexpr (std::is_integral_v<D>) {
      return static_cast<std::int64_t>(value);
    } else if constexpr (std::is_floating_point_v<D>) {
      return static_cast<double>(value);
    } else if constexpr (std::is_convertible_v<T, std::string_view>) {
      return std::string(std::string_view(value));
    } else {
      return Value(std::forward<T>(value));
    }
  }

  const Value& lookup(std::string_view key) const;
  static Kind kind_of(const Value& v) { return static_cast<Kind>(v.index()); }

  std::map<std::string, Value, std::less<>> values_;
};

}  // namespace qcor
