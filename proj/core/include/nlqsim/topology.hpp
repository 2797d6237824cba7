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

#include <string>
#include <utility>
#include <vector>

#include "nlqsim/circuit.hpp"

namespace nlq {

/// Directed CNOT connectivity of a device: an edge (c, t) means a physical
/// CX with control c and target t.
class Topology {
 public:
  Topology(int n_qubits, std::vector<std::pair<int, int>> edges);

  /// The ibmqx2 5-qubit preset: edges 0->1, 0->2, 1->2, 3->2, 3->4, 4->2
  /// (targets 1, 2, 4; controls 0, 1, 3, 4).
  static const Topology& ibmqx2();

  int num_qubits() const { return n_qubits_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool allows_cnot(int control, int target) const;

 private:
  int n_qubits_;
  std::vector<std::pair<int, int>> edges_;
};

struct TopologyViolation {
  std::size_t instruction_index;
  int control;
  int target;
  /// True when the reversed edge exists (wrong CX direction), false when the
  /// qubits are not connected at all.
  bool direction_only;
  std::string message;
};

/// Advisory check: reports every CX (plain or conditional) whose
/// (control, target) pair is not a directed edge. Never throws; the
/// simulator itself accepts arbitrary CNOTs.
std::vector<TopologyViolation> topology_lint(const Circuit& circuit, const Topology& topology);

}  // namespace nlq
