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

#include "nlqsim/experiments.hpp"

#include <cctype>

#include "nlqsim/process_tomo.hpp"
#include "nlqsim/simulator.hpp"

namespace nlq {

std::optional<NonLocalGate> parse_non_local_gate(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "cnot" || lower == "cx") return NonLocalGate::Cnot;
  if (lower == "ch") return NonLocalGate::Ch;
  if (lower == "cz") return NonLocalGate::Cz;
  if (lower == "custom") return NonLocalGate::Custom;
  return std::nullopt;
}

std::string_view non_local_gate_name(NonLocalGate g) {
  switch (g) {
    case NonLocalGate::Cnot: return "cnot";
    case NonLocalGate::Ch: return "ch";
    case NonLocalGate::Cz: return "cz";
    case NonLocalGate::Custom: return "custom";
  }
  return "?";
}

GateMatrix experiment_u(const ExperimentSpec& spec) {
  switch (spec.gate) {
    case NonLocalGate::Cnot: return named_gate(Gate::X);
    case NonLocalGate::Ch: return named_gate(Gate::H);
    case NonLocalGate::Cz: return named_gate(Gate::Z);
    case NonLocalGate::Custom: break;
  }
  if (!spec.custom_u) {
    throw validation_error("experiment: custom gate requested without a matrix");
  }
  if (spec.custom_u->arity() != 1) {
    throw validation_error("experiment: custom U must be a single-qubit unitary");
  }
  return *spec.custom_u;
}

GateMatrix controlled_gate_matrix(const ExperimentSpec& spec) {
  return controlled(experiment_u(spec));
}

namespace {

StateVector run_preparation(const Circuit& prep) {
  StateVector psi = StateVector::zero_state(1);
  for (const auto& inst : prep.instructions()) {
    const auto& g = std::get<GateOp>(inst);
    psi = apply_unitary(psi, g.gate, g.targets);
  }
  return psi;
}

}  // namespace

StateVector alice_input() {
  return run_preparation(prepare_alice());
}

StateVector bob_input() {
  return run_preparation(prepare_bob());
}

StateVector theory_output(const ExperimentSpec& spec) {
  return direct_controlled(alice_input(), bob_input(), experiment_u(spec));
}

std::vector<double> theory_probabilities(const ExperimentSpec& spec) {
  const StateVector out = theory_output(spec);
  std::vector<double> p(4);
  for (std::size_t i = 0; i < 4; ++i) p[i] = out.probability(i);
  return p;
}

namespace {

// Protocol body over the layout, inputs already prepared: EPR allocation,
// Alice's CX and announced measurement, Bob's correction, controlled part,
// Bob's H and announced measurement, Alice's correction.
void append_protocol_body(Circuit& c, const ExperimentSpec& spec) {
  const auto& lay = spec.layout;
  c.add_gate(Gate::H, {lay.alice_ancilla});
  c.add_gate(Gate::CX, {lay.alice_ancilla, lay.bob_ancilla});
  c.add_gate(Gate::CX, {lay.alice_data, lay.alice_ancilla});
  c.add_measure(lay.alice_ancilla, 0);
  c.add_conditional(Gate::X, {lay.bob_ancilla}, 0, 1);
  switch (spec.gate) {
    case NonLocalGate::Cnot:
      c.add_gate(Gate::CX, {lay.bob_ancilla, lay.bob_data});
      break;
    case NonLocalGate::Ch:
      c.append_remapped(ch_circuit(), {lay.bob_ancilla, lay.bob_data});
      break;
    case NonLocalGate::Cz:
      c.append_remapped(cz_circuit(), {lay.bob_ancilla, lay.bob_data});
      break;
    case NonLocalGate::Custom:
      c.add_gate(controlled_gate_matrix(spec), {lay.bob_ancilla, lay.bob_data});
      break;
  }
  c.add_gate(Gate::H, {lay.bob_ancilla});
  c.add_measure(lay.bob_ancilla, 1);
  c.add_conditional(Gate::Z, {lay.alice_data}, 1, 1);
}

Circuit protocol_shell(const ExperimentSpec& spec) {
  spec.layout.validate();
  Circuit c(spec.layout.num_qubits(), 4);
  c.append_remapped(prepare_alice(), {spec.layout.alice_data});
  c.append_remapped(prepare_bob(), {spec.layout.bob_data});
  append_protocol_body(c, spec);
  return c;
}

}  // namespace

Circuit build_protocol_circuit(const ExperimentSpec& spec) {
  return protocol_shell(spec);
}

Circuit build_run_circuit(const ExperimentSpec& spec) {
  Circuit c = protocol_shell(spec);
  c.add_measure(spec.layout.alice_data, 2);
  c.add_measure(spec.layout.bob_data, 3);
  c.validate();
  return c;
}

Circuit build_tomo_circuit(const ExperimentSpec& spec, const BasisSetting& setting) {
  if (setting.bases.size() != 2) {
    throw validation_error("tomography setting must cover the two data qubits");
  }
  Circuit c = protocol_shell(spec);
  c.append_remapped(rotation_for(setting), {spec.layout.alice_data, spec.layout.bob_data});
  c.add_measure(spec.layout.alice_data, 2);
  c.add_measure(spec.layout.bob_data, 3);
  c.validate();
  return c;
}

Circuit build_ptomo_circuit(const ExperimentSpec& spec, int input_index,
                            const BasisSetting& setting) {
  if (setting.bases.size() != 2) {
    throw validation_error("tomography setting must cover the two data qubits");
  }
  spec.layout.validate();
  const auto labels = input_pair(input_index);
  Circuit c(spec.layout.num_qubits(), 4);
  c.append_remapped(input_prep_circuit(labels[0]), {spec.layout.alice_data});
  c.append_remapped(input_prep_circuit(labels[1]), {spec.layout.bob_data});
  append_protocol_body(c, spec);
  c.append_remapped(rotation_for(setting), {spec.layout.alice_data, spec.layout.bob_data});
  c.add_measure(spec.layout.alice_data, 2);
  c.add_measure(spec.layout.bob_data, 3);
  c.validate();
  return c;
}

std::vector<int> run_report_cbits() {
  return {2, 3};
}

std::vector<double> frequencies_vector(const Histogram& h, int n_bits) {
  h.validate();
  std::vector<double> out(dim_of(n_bits), 0.0);
  if (h.shots == 0) return out;
  for (const auto& [outcome, count] : h.counts) {
    if (outcome.size() != static_cast<std::size_t>(n_bits)) {
      throw validation_error("histogram outcome \"" + outcome + "\" does not have " +
                             std::to_string(n_bits) + " bits");
    }
    out[index_of_bitstring(outcome)] =
        static_cast<double>(count) / static_cast<double>(h.shots);
  }
  return out;
}

}  // namespace nlq
