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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace nlq {

/// Per-outcome statistics across the repeats of one experiment.
struct OutcomeStat {
  std::string outcome;
  double theory = 0.0;
  double mean = 0.0;
  double sigma = 0.0;

  bool operator==(const OutcomeStat&) const = default;
};

/// Summary record one `run` invocation emits: per-outcome theory/mean/sigma
/// plus the statistical fidelity of every repeat.
struct RunSummary {
  std::string gate;
  int shots = 0;
  int repeats = 0;
  std::uint64_t seed = 0;
  std::string noise;   // "off", a preset name, or a file path
  std::string layout;
  std::vector<OutcomeStat> outcomes;
  std::vector<double> fs_per_repeat;
  double fs_mean = 0.0;
  double fs_sigma = 0.0;
  /// 1 - prod(1 - p_gate) over the circuit, reported in noisy mode.
  std::optional<double> accumulated_gate_error;

  bool operator==(const RunSummary&) const = default;
};

nlohmann::json run_summary_to_json(const RunSummary& s);
RunSummary run_summary_from_json(const nlohmann::json& j);

/// Plot-ready table: "outcome,theory,mean,sigma" rows.
std::string run_summary_to_csv(const RunSummary& s);

}  // namespace nlq
