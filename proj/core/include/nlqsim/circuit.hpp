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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nlqsim/gates.hpp"
#include "nlqsim/types.hpp"

namespace nlq {

/// A unitary instruction. `name` is set when the gate came from the named
/// library (kept for text serialization, noise lookup and topology lint).
struct GateOp {
  std::optional<Gate> name;
  GateMatrix gate;
  std::vector<int> targets;
};

/// Computational-basis measurement of one qubit into one classical bit.
struct MeasureOp {
  int qubit;
  int cbit;
};

/// Gate applied only when the classical bit equals `trigger` (feed-forward).
struct ConditionalOp {
  GateOp op;
  int cbit;
  int trigger;
};

using Instruction = std::variant<GateOp, MeasureOp, ConditionalOp>;

/// Ordered instruction list over an n-qubit register and an m-bit classical
/// register. Index ranges are checked as instructions are added; ordering
/// rules (a conditional reads a previously written cbit) by validate().
class Circuit {
 public:
  explicit Circuit(int n_qubits, int n_cbits = 0);

  int num_qubits() const { return n_qubits_; }
  int num_cbits() const { return n_cbits_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }

  void add_gate(Gate g, std::vector<int> targets);
  void add_gate(GateMatrix m, std::vector<int> targets);
  void add_measure(int qubit, int cbit);
  void add_conditional(Gate g, std::vector<int> targets, int cbit, int trigger);
  void add_conditional(GateMatrix m, std::vector<int> targets, int cbit, int trigger);

  /// Appends all of `other`'s instructions; register sizes must be contained.
  void append(const Circuit& other);

  /// Appends `other` with its qubits (and cbits) renumbered through maps.
  void append_remapped(const Circuit& other, const std::vector<int>& qubit_map,
                       const std::vector<int>& cbit_map = {});

  bool has_measurements() const;
  std::vector<int> measured_qubits() const;

  /// Full invariant check; throws validation_error with the first violation.
  void validate() const;

 private:
  void check_targets(const GateMatrix& m, const std::vector<int>& targets) const;
  void check_cbit(int cbit) const;

  int n_qubits_;
  int n_cbits_;
  std::vector<Instruction> instructions_;
};

/// Total unitary of a measurement-free circuit (dimension 2^n). Gates are
/// embedded per the register convention and multiplied in program order.
cmatrix_t circuit_unitary(const Circuit& circuit);

/// Line-based text format:
///
///   qubits 4
///   cbits 2
///   h 0            # named gate, targets follow
///   cx 0 1
///   measure 1 0    # qubit then cbit
///   cond 0 1 x 2   # cbit, trigger, gate, targets
///
/// Gate names are case-insensitive: I X Y Z H S SDG T TDG CX.
Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit& circuit);

}  // namespace nlq
