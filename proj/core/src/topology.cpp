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

#include "nlqsim/topology.hpp"

namespace nlq {

Topology::Topology(int n_qubits, std::vector<std::pair<int, int>> edges)
    : n_qubits_(n_qubits), edges_(std::move(edges)) {
  if (n_qubits_ < 1) throw validation_error("Topology: need at least one qubit");
  for (const auto& [c, t] : edges_) {
    if (c < 0 || c >= n_qubits_ || t < 0 || t >= n_qubits_ || c == t) {
      throw validation_error("Topology: bad edge (" + std::to_string(c) + ", " +
                             std::to_string(t) + ")");
    }
  }
}

const Topology& Topology::ibmqx2() {
  static const Topology preset{5, {{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}}};
  return preset;
}

bool Topology::allows_cnot(int control, int target) const {
  for (const auto& [c, t] : edges_) {
    if (c == control && t == target) return true;
  }
  return false;
}

std::vector<TopologyViolation> topology_lint(const Circuit& circuit, const Topology& topology) {
  std::vector<TopologyViolation> out;
  auto check = [&](std::size_t index, const GateOp& g) {
    if (g.name != Gate::CX) return;
    const int c = g.targets[0];
    const int t = g.targets[1];
    if (topology.allows_cnot(c, t)) return;
    const bool reversed = topology.allows_cnot(t, c);
    TopologyViolation v;
    v.instruction_index = index;
    v.control = c;
    v.target = t;
    v.direction_only = reversed;
    v.message = "CX " + std::to_string(c) + "->" + std::to_string(t) +
                (reversed ? ": wrong direction (edge runs " + std::to_string(t) + "->" +
                                std::to_string(c) + ")"
                          : ": qubits are not connected");
    out.push_back(std::move(v));
  };
  const auto& instructions = circuit.instructions();
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    if (const auto* g = std::get_if<GateOp>(&instructions[i])) {
      check(i, *g);
    } else if (const auto* cond = std::get_if<ConditionalOp>(&instructions[i])) {
      check(i, cond->op);
    }
  }
  return out;
}

}  // namespace nlq
