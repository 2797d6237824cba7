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

#include "nlqsim/circuit.hpp"
#include "nlqsim/decompositions.hpp"
#include "nlqsim/protocol.hpp"
#include "nlqsim/state_tomo.hpp"

namespace nlq {

// Canned non-local gate experiments: the four-qubit feed-forward circuits
// the CLI runs, with the fixed input preparations H·T·H|0> (control side)
// and H·S·T·H|0> (target side). Classical bits are laid out as
//   0: Alice's ancilla measurement, 1: Bob's ancilla measurement,
//   2: final readout of A, 3: final readout of B;
// histograms report cbits {2, 3} as the two-character outcome "AB".

enum class NonLocalGate { Cnot, Ch, Cz, Custom };

std::optional<NonLocalGate> parse_non_local_gate(std::string_view name);
std::string_view non_local_gate_name(NonLocalGate g);

struct ExperimentSpec {
  NonLocalGate gate = NonLocalGate::Cnot;
  /// The single-qubit U of a Custom experiment; ignored otherwise.
  std::optional<GateMatrix> custom_u;
  RegisterLayout layout{};
};

/// The single-qubit U the protocol implements controlled-U of.
GateMatrix experiment_u(const ExperimentSpec& spec);

/// controlled(U) as a 4x4 matrix (the process-tomography target).
GateMatrix controlled_gate_matrix(const ExperimentSpec& spec);

/// The fixed experiment inputs.
StateVector alice_input();
StateVector bob_input();

/// Expected (A, B) state after the protocol on the fixed inputs.
StateVector theory_output(const ExperimentSpec& spec);

/// Born probabilities of theory_output in outcome order 00, 01, 10, 11.
std::vector<double> theory_probabilities(const ExperimentSpec& spec);

/// Protocol circuit without the final data-qubit readout.
Circuit build_protocol_circuit(const ExperimentSpec& spec);

/// Protocol plus computational readout of A and B (the histogram circuit).
Circuit build_run_circuit(const ExperimentSpec& spec);

/// Protocol plus basis rotations on (A, B) and their readout; `setting` has
/// one label per data qubit.
Circuit build_tomo_circuit(const ExperimentSpec& spec, const BasisSetting& setting);

/// Like build_tomo_circuit but with the data qubits prepared in a
/// process-tomography input state (index 0..15) instead of the fixed inputs.
Circuit build_ptomo_circuit(const ExperimentSpec& spec, int input_index,
                            const BasisSetting& setting);

/// The cbits a histogram of these circuits reports, in key order.
std::vector<int> run_report_cbits();

/// Histogram frequencies as a dense vector ordered by outcome index.
std::vector<double> frequencies_vector(const Histogram& h, int n_bits);

}  // namespace nlq
