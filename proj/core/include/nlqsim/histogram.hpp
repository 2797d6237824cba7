// Copyright 2026 The nlqsim Authors
//
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

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nlqsim/types.hpp"

namespace nlq {

/// Measurement outcome counts. Keys are bitstrings in the register ordering
/// (reported cbit 0 leftmost); the ordered map keeps serialization
/// deterministic.
struct Histogram {
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  /// Checks that counts sum to shots and keys are equal-length bitstrings.
  void validate() const;

  /// counts / shots for every outcome.
  std::map<std::string, double> frequencies() const;

  bool operator==(const Histogram&) const = default;
};

/// JSON form: {"shots": N, "counts": {"00": n0, ...}}.
nlohmann::json histogram_to_json(const Histogram& h);
Histogram histogram_from_json(const nlohmann::json& j);

/// CSV form: header "outcome,count" then one row per outcome.
std::string histogram_to_csv(const Histogram& h);
Histogram histogram_from_csv(std::string_view text);

}  // namespace nlq
