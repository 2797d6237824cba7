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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlqsim/circuit.hpp"
#include "nlqsim/gates.hpp"
#include "nlqsim/state.hpp"

namespace nlq {

// Two-party protocol for executing a controlled-U between remote qubits with
// one shared Bell pair and one classical bit in each direction:
//
//   1. the source allocates the Bell pair on ancillas (a, b);
//   2. Alice applies CX from her data qubit A to her ancilla a;
//   3. Alice measures a and sends the bit; Bob applies X on b iff it is 1;
//   4. Bob applies controlled-U from b to his data qubit B, then H on b;
//   5. Bob measures b and sends the bit; Alice applies Z on A iff it is 1.
//
// Afterwards (A, B) carry alpha|0>|psi_B> + beta|1>U|psi_B> and both
// ancillas are disentangled.

enum class NodeId { Alice, Bob };
enum class StepTag { AliceMeasurement, BobMeasurement };

std::string_view node_name(NodeId id);
std::string_view step_name(StepTag tag);

struct ClassicalMessage {
  NodeId sender;
  int bit;
  StepTag step;
};

/// Mapping of the protocol roles A (Alice data), a (Alice ancilla),
/// b (Bob ancilla), B (Bob data) onto simulator qubit indices.
struct RegisterLayout {
  int alice_data = 0;
  int alice_ancilla = 1;
  int bob_ancilla = 2;
  int bob_data = 3;

  void validate() const;
  int num_qubits() const;
  std::array<int, 2> alice_qubits() const { return {alice_data, alice_ancilla}; }
  std::array<int, 2> bob_qubits() const { return {bob_ancilla, bob_data}; }

  /// "A=0,a=1,b=2,B=3" (any role order, whitespace ignored).
  static RegisterLayout parse(std::string_view text);
  std::string to_string() const;
};

//===========================================================================
// Transcript
//===========================================================================

struct EprAllocated {
  int qubit_a;
  int qubit_b;
};
struct LocalGate {
  NodeId node;
  std::string gate;
  std::vector<int> qubits;
};
struct Measured {
  NodeId node;
  int qubit;
  int outcome;
};
struct MessageSent {
  ClassicalMessage message;
};
struct CorrectionApplied {
  NodeId node;
  std::string gate;
  int qubit;
};

using ProtocolEvent = std::variant<EprAllocated, LocalGate, Measured, MessageSent, CorrectionApplied>;

/// Ordered record of one protocol run. Events are appended in causal order;
/// the index in `events` is the sequence number used in serialization.
struct ProtocolTranscript {
  std::vector<ProtocolEvent> events;

  int count_epr_allocations() const;
  std::vector<ClassicalMessage> messages() const;

  bool operator==(const ProtocolTranscript&) const;
};

/// JSON form: array of {"seq": k, "type": ..., ...} objects.
nlohmann::json transcript_to_json(const ProtocolTranscript& t);
ProtocolTranscript transcript_from_json(const nlohmann::json& j);

//===========================================================================
// Protocol operations
//===========================================================================

/// Register backend one protocol run executes against. Gates arrive with
/// absolute register indices; measure() returns the bit the node announces
/// (for a noisy backend that is the readout value, not necessarily the true
/// outcome). Implemented by the ideal state-vector register here and by the
/// density-matrix register in the noise module.
class ProtocolRegister {
 public:
  virtual ~ProtocolRegister() = default;

  virtual void apply_gate(const std::string& label, const GateMatrix& gate,
                          const std::vector<int>& targets) = 0;

  /// Measures a qubit. A set `forced_outcome` selects the true measurement
  /// branch instead of sampling (the backend records the branch weight).
  virtual int measure(int qubit, std::optional<int> forced_outcome) = 0;

  /// Born weight of reading 0 on the qubit, used for freshness checks.
  virtual double probability_of_zero(int qubit) = 0;
};

/// Executes the full step sequence above against any register backend:
/// Bell-pair allocation, node-local gates and measurements with ownership
/// enforced, classical messages, and feed-forward corrections. Events are
/// appended to `transcript`; returns (alice_bit, bob_bit) as announced.
std::pair<int, int> run_protocol_steps(ProtocolRegister& reg, const RegisterLayout& layout,
                                       const GateMatrix& u, ProtocolTranscript& transcript,
                                       std::optional<int> force_alice = std::nullopt,
                                       std::optional<int> force_bob = std::nullopt);

/// Correction prescribed by the received bit: Alice's measurement triggers
/// Bob's X, Bob's measurement triggers Alice's Z; a 0 bit means identity.
Gate correction_table(int measurement_bit, StepTag step);

/// Allocates the Bell pair (|00>+|11>)/sqrt(2) on the layout's ancillas.
/// Both ancillas must currently be |0> (protocol_error otherwise).
StateVector distribute_epr(const StateVector& state, const RegisterLayout& layout);

/// Direct single-register controlled-U on |psi_A> ⊗ |psi_B>; the oracle the
/// protocol is checked against.
StateVector direct_controlled(const StateVector& psi_a, const StateVector& psi_b,
                              const GateMatrix& u);

/// Register state before the protocol starts: psi_a on A, psi_b on B, every
/// other qubit |0>.
StateVector initial_protocol_state(const StateVector& psi_a, const StateVector& psi_b,
                                   const RegisterLayout& layout);

struct EisertResult {
  StateVector final_ab;  // 2-qubit (A, B) marginal after corrections
  ProtocolTranscript transcript;
  int alice_bit;  // bit announced by Alice (measurement of a)
  int bob_bit;    // bit announced by Bob (measurement of b)
};

/// One trajectory-style run: both measurements are sampled. Inputs are
/// single-qubit states; U is the 2x2 unitary Bob applies controlled on b.
EisertResult run_eisert(const StateVector& psi_a, const StateVector& psi_b, const GateMatrix& u,
                        std::uint64_t seed, const RegisterLayout& layout = {});

struct EisertBranch {
  int alice_bit;
  int bob_bit;
  double probability;
  StateVector final_ab;
  ProtocolTranscript transcript;
};

/// Exhaustive mode: all four (alice_bit, bob_bit) measurement branches with
/// their exact weights, each corrected per the table.
std::vector<EisertBranch> run_eisert_branches(const StateVector& psi_a, const StateVector& psi_b,
                                              const GateMatrix& u,
                                              const RegisterLayout& layout = {});

}  // namespace nlq
