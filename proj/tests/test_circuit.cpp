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

#include "doctest.h"
#include "nlqsim/circuit.hpp"
#include "nlqsim/topology.hpp"
#include "test_helpers.hpp"

using namespace nlq;
using namespace nlqtest;

TEST_CASE("circuit construction checks index ranges") {
  Circuit c(2, 1);
  CHECK_THROWS_AS(c.add_gate(Gate::H, {2}), dimension_error);
  CHECK_THROWS_AS(c.add_gate(Gate::CX, {0}), dimension_error);
  CHECK_THROWS_AS(c.add_gate(Gate::CX, {0, 0}), validation_error);
  CHECK_THROWS_AS(c.add_measure(0, 1), dimension_error);
  CHECK_THROWS_AS(c.add_conditional(Gate::X, {1}, 0, 2), validation_error);
}

TEST_CASE("validate rejects conditionals on never-written cbits") {
  Circuit c(2, 2);
  c.add_conditional(Gate::X, {1}, 0, 1);
  CHECK_THROWS_AS(c.validate(), validation_error);

  Circuit ok(2, 2);
  ok.add_measure(0, 0);
  ok.add_conditional(Gate::X, {1}, 0, 1);
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("circuit_unitary embeds gates in program order") {
  Circuit c(2);
  c.add_gate(Gate::H, {0});
  c.add_gate(Gate::CX, {0, 1});
  const cmatrix_t by_hand =
      named_gate(Gate::CX).matrix() * kron(named_gate(Gate::H).matrix(), pauli(0));
  CHECK(max_diff(circuit_unitary(c), by_hand) < 1e-14);

  Circuit measured(1, 1);
  measured.add_measure(0, 0);
  CHECK_THROWS_AS(circuit_unitary(measured), validation_error);
}

TEST_CASE("circuit text format round-trips") {
  Circuit c(3, 2);
  c.add_gate(Gate::H, {0});
  c.add_gate(Gate::Tdg, {2});
  c.add_gate(Gate::CX, {0, 1});
  c.add_measure(1, 0);
  c.add_conditional(Gate::X, {2}, 0, 1);
  c.add_measure(2, 1);

  const std::string text = format_circuit(c);
  const Circuit parsed = parse_circuit(text);
  CHECK(parsed.num_qubits() == 3);
  CHECK(parsed.num_cbits() == 2);
  CHECK(format_circuit(parsed) == text);
}

TEST_CASE("parser accepts case-insensitive names and comments") {
  const Circuit c = parse_circuit(
      "qubits 2\n"
      "cbits 1\n"
      "# prepare and entangle\n"
      "H 0\n"
      "Cx 0 1   # entangler\n"
      "SDG 1\n"
      "measure 1 0\n"
      "cond 0 1 x 0\n");
  CHECK(c.instructions().size() == 5);
}

TEST_CASE("parser reports offending lines") {
  CHECK_THROWS_AS(parse_circuit("h 0\n"), parse_error);          // no qubits line
  CHECK_THROWS_AS(parse_circuit("qubits 2\nfoo 0\n"), parse_error);
  CHECK_THROWS_AS(parse_circuit("qubits 2\nh zero\n"), parse_error);
  CHECK_THROWS_WITH_AS(parse_circuit("qubits 1\ncbits 1\ncond 0 1 x 0\n"),
                       doctest::Contains("before any measurement"), validation_error);
}

TEST_CASE("ibmqx2 topology matches the published arrow set") {
  const Topology& t = Topology::ibmqx2();
  CHECK(t.num_qubits() == 5);
  // Targets 1, 2, 4; controls 0, 1, 3, 4.
  CHECK(t.allows_cnot(0, 1));
  CHECK(t.allows_cnot(0, 2));
  CHECK(t.allows_cnot(1, 2));
  CHECK(t.allows_cnot(3, 2));
  CHECK(t.allows_cnot(3, 4));
  CHECK(t.allows_cnot(4, 2));
  CHECK_FALSE(t.allows_cnot(1, 0));
  CHECK_FALSE(t.allows_cnot(3, 0));
  CHECK(t.edges().size() == 6);
}

TEST_CASE("topology lint flags direction and connectivity violations") {
  Circuit empty(5);
  CHECK(topology_lint(empty, Topology::ibmqx2()).empty());

  Circuit ok(5);
  ok.add_gate(Gate::CX, {0, 1});
  CHECK(topology_lint(ok, Topology::ibmqx2()).empty());

  Circuit reversed(5);
  reversed.add_gate(Gate::CX, {1, 0});
  const auto violations = topology_lint(reversed, Topology::ibmqx2());
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].direction_only);
  CHECK(violations[0].control == 1);
  CHECK(violations[0].target == 0);

  // A CZ routed 3 -> 0 has no junction at all in this topology.
  Circuit disconnected(5, 1);
  disconnected.add_gate(Gate::CX, {3, 0});
  disconnected.add_measure(0, 0);
  disconnected.add_conditional(Gate::CX, {3, 0}, 0, 1);
  const auto far = topology_lint(disconnected, Topology::ibmqx2());
  REQUIRE(far.size() == 2);
  CHECK_FALSE(far[0].direction_only);
  CHECK(far[1].instruction_index == 2);

  // Single-qubit gates and raw matrices are never flagged.
  Circuit single(5);
  single.add_gate(Gate::H, {0});
  single.add_gate(controlled(named_gate(Gate::H)), {1, 0});
  CHECK(topology_lint(single, Topology::ibmqx2()).empty());
}

TEST_CASE("append_remapped renumbers qubits and cbits") {
  Circuit inner(2, 1);
  inner.add_gate(Gate::CX, {0, 1});
  inner.add_measure(1, 0);

  Circuit outer(4, 3);
  outer.append_remapped(inner, {3, 1}, {2});
  const auto& gate = std::get<GateOp>(outer.instructions()[0]);
  CHECK(gate.targets == std::vector<int>{3, 1});
  const auto& meas = std::get<MeasureOp>(outer.instructions()[1]);
  CHECK(meas.qubit == 1);
  CHECK(meas.cbit == 2);
}
