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

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlqsim/types.hpp"

namespace nlq {

struct QubitCalibration {
  double gate_error = 0.0;     // single-qubit depolarizing probability
  double readout_error = 0.0;  // classical bit-flip probability at readout
  double t1_us = std::numeric_limits<double>::infinity();
  double t2_us = std::numeric_limits<double>::infinity();
  double frequency_ghz = 0.0;  // informational

  bool operator==(const QubitCalibration&) const = default;
};

/// Device calibration snapshot: per-qubit errors and decay times plus
/// per-ordered-pair two-qubit gate errors.
struct CalibrationTable {
  std::map<int, QubitCalibration> qubits;
  std::map<std::pair<int, int>, double> pair_gate_error;  // (control, target)
  std::optional<double> default_pair_gate_error;          // [pair.default] fallback
  double fridge_temperature_k = 0.0;                      // informational

  /// Hard violations (probabilities outside [0,1], non-positive T1/T2)
  /// throw validation_error listing the offending keys. Returns soft
  /// warnings, currently only T2 > 2*T1 physicality.
  std::vector<std::string> validate() const;

  const QubitCalibration& qubit(int q) const;  // throws if missing

  /// Two-qubit gate error for (control, target); falls back to the reversed
  /// pair (same junction) and then to [pair.default].
  std::optional<double> cx_error(int control, int target) const;

  /// All error probabilities scaled by s; T1/T2 divided by s (s = 0 turns
  /// decay off entirely). Used by the noise-strength knob.
  CalibrationTable scaled(double s) const;

  bool operator==(const CalibrationTable&) const = default;
};

/// Nominal operation lengths used to weight relaxation. No calibration data
/// for these exists in the ibmqx2 snapshot, so they are plain configuration
/// with plausible defaults.
struct GateDurations {
  double single_qubit_ns = 80.0;
  double two_qubit_ns = 300.0;
  double readout_ns = 1000.0;

  void validate() const;
};

/// Key-value text format with [qubit.N] and [pair.N.M] sections:
///
///   fridge_temperature_k = 0.0159
///   [qubit.0]
///   gate_error = 1.37e-3
///   readout_error = 2.40e-2
///   t1_us = 62.4
///   t2_us = 77.5
///   frequency_ghz = 5.276
///   [pair.0.1]
///   gate_error = 0.0272
///
/// `inf` is accepted for t1_us/t2_us. A [pair.default] section supplies the
/// two-qubit error for pairs not listed explicitly.
CalibrationTable parse_calibration(std::string_view text);
std::string format_calibration(const CalibrationTable& table);

/// Loads a file path or a named preset ("ibmqx2-paper", "noiseless").
CalibrationTable load_calibration(const std::string& path_or_preset);

const CalibrationTable& calibration_preset(std::string_view name);
std::vector<std::string> calibration_preset_names();
bool is_calibration_preset(std::string_view name);

}  // namespace nlq
