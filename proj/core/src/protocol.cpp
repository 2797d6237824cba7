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

#include "nlqsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlqsim/random.hpp"
#include "nlqsim/simulator.hpp"

namespace nlq {

std::string_view node_name(NodeId id) {
  return id == NodeId::Alice ? "Alice" : "Bob";
}

std::string_view step_name(StepTag tag) {
  return tag == StepTag::AliceMeasurement ? "alice_measurement" : "bob_measurement";
}

void RegisterLayout::validate() const {
  const std::array<int, 4> qubits{alice_data, alice_ancilla, bob_ancilla, bob_data};
  std::set<int> seen;
  for (int q : qubits) {
    if (q < 0) throw validation_error("RegisterLayout: negative qubit index");
    if (!seen.insert(q).second) throw validation_error("RegisterLayout: duplicate qubit index");
  }
  if (num_qubits() > kMaxStateVectorQubits) {
    throw capability_error("RegisterLayout: register exceeds the dense cap");
  }
}

int RegisterLayout::num_qubits() const {
  return std::max({alice_data, alice_ancilla, bob_ancilla, bob_data}) + 1;
}

RegisterLayout RegisterLayout::parse(std::string_view text) {
  RegisterLayout layout;
  bool have_A = false, have_a = false, have_b = false, have_B = false;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw parse_error("layout: expected role=index, got \"" + item + "\"");
    }
    const std::string role = item.substr(0, eq);
    int index = 0;
    try {
      index = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw parse_error("layout: bad index in \"" + item + "\"");
    }
    // Roles are case sensitive: A/B are data qubits, a/b ancillas.
    if (role == "A") {
      layout.alice_data = index;
      have_A = true;
    } else if (role == "a") {
      layout.alice_ancilla = index;
      have_a = true;
    } else if (role == "b") {
      layout.bob_ancilla = index;
      have_b = true;
    } else if (role == "B") {
      layout.bob_data = index;
      have_B = true;
    } else {
      throw parse_error("layout: unknown role \"" + role + "\" (expected A, a, b, B)");
    }
  }
  if (!(have_A && have_a && have_b && have_B)) {
    throw parse_error("layout: all four roles A, a, b, B must be assigned");
  }
  layout.validate();
  return layout;
}

std::string RegisterLayout::to_string() const {
  std::ostringstream out;
  out << "A=" << alice_data << ",a=" << alice_ancilla << ",b=" << bob_ancilla
      << ",B=" << bob_data;
  return out.str();
}

//===========================================================================
// Transcript
//===========================================================================

namespace {

bool event_equal(const ProtocolEvent& x, const ProtocolEvent& y) {
  if (x.index() != y.index()) return false;
  if (const auto* e = std::get_if<EprAllocated>(&x)) {
    const auto& o = std::get<EprAllocated>(y);
    return e->qubit_a == o.qubit_a && e->qubit_b == o.qubit_b;
  }
  if (const auto* e = std::get_if<LocalGate>(&x)) {
    const auto& o = std::get<LocalGate>(y);
    return e->node == o.node && e->gate == o.gate && e->qubits == o.qubits;
  }
  if (const auto* e = std::get_if<Measured>(&x)) {
    const auto& o = std::get<Measured>(y);
    return e->node == o.node && e->qubit == o.qubit && e->outcome == o.outcome;
  }
  if (const auto* e = std::get_if<MessageSent>(&x)) {
    const auto& o = std::get<MessageSent>(y);
    return e->message.sender == o.message.sender && e->message.bit == o.message.bit &&
           e->message.step == o.message.step;
  }
  const auto& e = std::get<CorrectionApplied>(x);
  const auto& o = std::get<CorrectionApplied>(y);
  return e.node == o.node && e.gate == o.gate && e.qubit == o.qubit;
}

NodeId node_from_name(const std::string& s) {
  if (s == "Alice") return NodeId::Alice;
  if (s == "Bob") return NodeId::Bob;
  throw parse_error("transcript: unknown node \"" + s + "\"");
}

StepTag step_from_name(const std::string& s) {
  if (s == "alice_measurement") return StepTag::AliceMeasurement;
  if (s == "bob_measurement") return StepTag::BobMeasurement;
  throw parse_error("transcript: unknown step \"" + s + "\"");
}

}  // namespace

int ProtocolTranscript::count_epr_allocations() const {
  int n = 0;
  for (const auto& e : events) n += std::holds_alternative<EprAllocated>(e) ? 1 : 0;
  return n;
}

std::vector<ClassicalMessage> ProtocolTranscript::messages() const {
  std::vector<ClassicalMessage> out;
  for (const auto& e : events) {
    if (const auto* m = std::get_if<MessageSent>(&e)) out.push_back(m->message);
  }
  return out;
}

bool ProtocolTranscript::operator==(const ProtocolTranscript& other) const {
  if (events.size() != other.events.size()) return false;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!event_equal(events[i], other.events[i])) return false;
  }
  return true;
}

nlohmann::json transcript_to_json(const ProtocolTranscript& t) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t seq = 0; seq < t.events.size(); ++seq) {
    nlohmann::json e{{"seq", seq}};
    const auto& event = t.events[seq];
    if (const auto* epr = std::get_if<EprAllocated>(&event)) {
      e["type"] = "epr_allocated";
      e["qubit_a"] = epr->qubit_a;
      e["qubit_b"] = epr->qubit_b;
    } else if (const auto* g = std::get_if<LocalGate>(&event)) {
      e["type"] = "local_gate";
      e["node"] = node_name(g->node);
      e["gate"] = g->gate;
      e["qubits"] = g->qubits;
    } else if (const auto* m = std::get_if<Measured>(&event)) {
      e["type"] = "measured";
      e["node"] = node_name(m->node);
      e["qubit"] = m->qubit;
      e["outcome"] = m->outcome;
    } else if (const auto* s = std::get_if<MessageSent>(&event)) {
      e["type"] = "message";
      e["sender"] = node_name(s->message.sender);
      e["bit"] = s->message.bit;
      e["step"] = step_name(s->message.step);
    } else {
      const auto& c = std::get<CorrectionApplied>(event);
      e["type"] = "correction";
      e["node"] = node_name(c.node);
      e["gate"] = c.gate;
      e["qubit"] = c.qubit;
    }
    out.push_back(std::move(e));
  }
  return out;
}

ProtocolTranscript transcript_from_json(const nlohmann::json& j) {
  ProtocolTranscript t;
  try {
    std::size_t expected_seq = 0;
    for (const auto& e : j) {
      if (e.at("seq").get<std::size_t>() != expected_seq++) {
        throw parse_error("transcript: sequence numbers are not contiguous");
      }
      const std::string type = e.at("type").get<std::string>();
      if (type == "epr_allocated") {
        t.events.push_back(EprAllocated{e.at("qubit_a").get<int>(), e.at("qubit_b").get<int>()});
      } else if (type == "local_gate") {
        t.events.push_back(LocalGate{node_from_name(e.at("node").get<std::string>()),
                                     e.at("gate").get<std::string>(),
                                     e.at("qubits").get<std::vector<int>>()});
      } else if (type == "measured") {
        t.events.push_back(Measured{node_from_name(e.at("node").get<std::string>()),
                                    e.at("qubit").get<int>(), e.at("outcome").get<int>()});
      } else if (type == "message") {
        t.events.push_back(MessageSent{ClassicalMessage{
            node_from_name(e.at("sender").get<std::string>()), e.at("bit").get<int>(),
            step_from_name(e.at("step").get<std::string>())}});
      } else if (type == "correction") {
        t.events.push_back(CorrectionApplied{node_from_name(e.at("node").get<std::string>()),
                                             e.at("gate").get<std::string>(),
                                             e.at("qubit").get<int>()});
      } else {
        throw parse_error("transcript: unknown event type \"" + type + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("transcript JSON: ") + e.what());
  }
  return t;
}

//===========================================================================
// Engine
//===========================================================================

Gate correction_table(int measurement_bit, StepTag step) {
  if (measurement_bit != 0 && measurement_bit != 1) {
    throw validation_error("correction_table: bit must be 0 or 1");
  }
  if (measurement_bit == 0) return Gate::I;
  return step == StepTag::AliceMeasurement ? Gate::X : Gate::Z;
}

StateVector distribute_epr(const StateVector& state, const RegisterLayout& layout) {
  layout.validate();
  if (layout.num_qubits() > state.num_qubits()) {
    throw dimension_error("distribute_epr: layout does not fit the register");
  }
  for (int ancilla : {layout.alice_ancilla, layout.bob_ancilla}) {
    if (outcome_probability(state, ancilla, 1) > 1e-9) {
      throw protocol_error("distribute_epr: ancilla qubit " + std::to_string(ancilla) +
                           " is not in |0>");
    }
  }
  StateVector out = apply_unitary(state, named_gate(Gate::H), {layout.alice_ancilla});
  return apply_unitary(out, named_gate(Gate::CX), {layout.alice_ancilla, layout.bob_ancilla});
}

StateVector direct_controlled(const StateVector& psi_a, const StateVector& psi_b,
                              const GateMatrix& u) {
  if (psi_a.num_qubits() != 1 || psi_b.num_qubits() != 1) {
    throw validation_error("direct_controlled: inputs must be single-qubit states");
  }
  return apply_unitary(psi_a.tensor(psi_b), controlled(u), {0, 1});
}

namespace {

// In-process classical channel; the only communication path between nodes.
class BitChannel {
 public:
  explicit BitChannel(ProtocolTranscript& transcript) : transcript_(transcript) {}

  void send(ClassicalMessage msg) {
    transcript_.events.push_back(MessageSent{msg});
    queue_.push_back(msg);
  }

  ClassicalMessage receive(StepTag expected) {
    if (queue_.empty()) throw protocol_error("channel: receive on empty channel");
    ClassicalMessage msg = queue_.front();
    queue_.pop_front();
    if (msg.step != expected) throw protocol_error("channel: unexpected message step");
    return msg;
  }

 private:
  ProtocolTranscript& transcript_;
  std::deque<ClassicalMessage> queue_;
};

// Scopes a register to one node's partition: every gate and measurement a
// node issues is checked against the qubits it owns.
class NodeHandle {
 public:
  NodeHandle(ProtocolRegister& reg, NodeId id, std::array<int, 2> owned,
             ProtocolTranscript& transcript)
      : reg_(reg), id_(id), owned_(owned), transcript_(transcript) {}

  void apply(const std::string& label, const GateMatrix& gate, const std::vector<int>& targets) {
    check_owned(targets);
    reg_.apply_gate(label, gate, targets);
    transcript_.events.push_back(LocalGate{id_, label, targets});
  }

  /// Applies the correction for a received bit (identity is only recorded).
  void correct(const ClassicalMessage& msg, int qubit) {
    const Gate g = correction_table(msg.bit, msg.step);
    if (g != Gate::I) {
      check_owned({qubit});
      reg_.apply_gate(std::string(gate_name(g)), named_gate(g), {qubit});
    }
    transcript_.events.push_back(CorrectionApplied{id_, std::string(gate_name(g)), qubit});
  }

  int measure(int qubit, std::optional<int> forced) {
    check_owned({qubit});
    const int bit = reg_.measure(qubit, forced);
    transcript_.events.push_back(Measured{id_, qubit, bit});
    return bit;
  }

 private:
  void check_owned(const std::vector<int>& targets) const {
    for (int q : targets) {
      if (q != owned_[0] && q != owned_[1]) {
        throw protocol_error(std::string(node_name(id_)) + " touched qubit " + std::to_string(q) +
                             " outside its partition");
      }
    }
  }

  ProtocolRegister& reg_;
  NodeId id_;
  std::array<int, 2> owned_;
  ProtocolTranscript& transcript_;
};

}  // namespace

std::pair<int, int> run_protocol_steps(ProtocolRegister& reg, const RegisterLayout& layout,
                                       const GateMatrix& u, ProtocolTranscript& transcript,
                                       std::optional<int> force_alice,
                                       std::optional<int> force_bob) {
  layout.validate();
  if (u.arity() != 1) {
    throw validation_error("protocol: U must be a single-qubit unitary");
  }

  // Bell-pair source. Not a node operation: it bypasses ownership and shows
  // up as a single allocation event.
  for (int ancilla : {layout.alice_ancilla, layout.bob_ancilla}) {
    if (reg.probability_of_zero(ancilla) < 1.0 - 1e-9) {
      throw protocol_error("protocol: ancilla qubit " + std::to_string(ancilla) +
                           " is not fresh (|0> weight below 1)");
    }
  }
  reg.apply_gate("H", named_gate(Gate::H), {layout.alice_ancilla});
  reg.apply_gate("CX", named_gate(Gate::CX), {layout.alice_ancilla, layout.bob_ancilla});
  transcript.events.push_back(EprAllocated{layout.alice_ancilla, layout.bob_ancilla});

  BitChannel channel(transcript);
  NodeHandle alice(reg, NodeId::Alice, layout.alice_qubits(), transcript);
  NodeHandle bob(reg, NodeId::Bob, layout.bob_qubits(), transcript);

  // Alice entangles her data qubit with the shared pair and announces.
  alice.apply("CX", named_gate(Gate::CX), {layout.alice_data, layout.alice_ancilla});
  const int alice_bit = alice.measure(layout.alice_ancilla, force_alice);
  channel.send({NodeId::Alice, alice_bit, StepTag::AliceMeasurement});

  // Bob corrects, applies the controlled-U locally, disentangles with H and
  // announces his measurement.
  bob.correct(channel.receive(StepTag::AliceMeasurement), layout.bob_ancilla);
  bob.apply("CU", controlled(u), {layout.bob_ancilla, layout.bob_data});
  bob.apply("H", named_gate(Gate::H), {layout.bob_ancilla});
  const int bob_bit = bob.measure(layout.bob_ancilla, force_bob);
  channel.send({NodeId::Bob, bob_bit, StepTag::BobMeasurement});

  // Alice's final phase correction.
  alice.correct(channel.receive(StepTag::BobMeasurement), layout.alice_data);

  return {alice_bit, bob_bit};
}

namespace {

// State-vector implementation of the register contract.
class IdealRegister final : public ProtocolRegister {
 public:
  IdealRegister(StateVector state, Rng* rng) : state_(std::move(state)), rng_(rng) {}

  const StateVector& state() const { return state_; }
  double cumulative_probability() const { return cumulative_probability_; }

  void apply_gate(const std::string&, const GateMatrix& gate,
                  const std::vector<int>& targets) override {
    state_ = apply_unitary(state_, gate, targets);
  }

  int measure(int qubit, std::optional<int> forced) override {
    if (forced) {
      auto [p, projected] = project_qubit(state_, qubit, *forced);
      cumulative_probability_ *= p;
      state_ = std::move(projected);
      return *forced;
    }
    if (rng_ == nullptr) throw protocol_error("protocol: sampling run without an RNG");
    auto [outcome, projected] = measure_qubit(state_, qubit, *rng_);
    state_ = std::move(projected);
    return outcome;
  }

  double probability_of_zero(int qubit) override {
    return outcome_probability(state_, qubit, 0);
  }

 private:
  StateVector state_;
  Rng* rng_;
  double cumulative_probability_ = 1.0;
};

}  // namespace

StateVector initial_protocol_state(const StateVector& psi_a, const StateVector& psi_b,
                                   const RegisterLayout& layout) {
  if (psi_a.num_qubits() != 1 || psi_b.num_qubits() != 1) {
    throw validation_error("initial_protocol_state: inputs must be single-qubit states");
  }
  layout.validate();
  const int n = layout.num_qubits();
  cvector_t amps = cvector_t::Zero(static_cast<Eigen::Index>(dim_of(n)));
  for (std::size_t i = 0; i < dim_of(n); ++i) {
    bool others_zero = true;
    for (int q = 0; q < n; ++q) {
      if (q == layout.alice_data || q == layout.bob_data) continue;
      if (bit_of(i, q, n) != 0) others_zero = false;
    }
    if (!others_zero) continue;
    amps(static_cast<Eigen::Index>(i)) =
        psi_a.amplitude(static_cast<std::size_t>(bit_of(i, layout.alice_data, n))) *
        psi_b.amplitude(static_cast<std::size_t>(bit_of(i, layout.bob_data, n)));
  }
  return StateVector(n, std::move(amps));
}

namespace {

// Pulls the (A, B) marginal out of the final register. The ancillas were
// measured, so the rest of the register must sit in one computational basis
// state; anything else indicates the ancillas failed to disentangle.
StateVector extract_ab(const StateVector& state, const RegisterLayout& layout, int m_a, int m_b) {
  const int n = state.num_qubits();
  cvector_t out(4);
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      std::size_t idx = 0;
      idx = with_bit(idx, layout.alice_data, n, ia);
      idx = with_bit(idx, layout.bob_data, n, ib);
      idx = with_bit(idx, layout.alice_ancilla, n, m_a);
      idx = with_bit(idx, layout.bob_ancilla, n, m_b);
      out(ia * 2 + ib) = state.amplitude(idx);
    }
  }
  const double residual = 1.0 - out.squaredNorm();
  if (residual > 1e-9) {
    throw protocol_error("protocol: ancillas failed to disentangle (residual weight " +
                         std::to_string(residual) + ")");
  }
  out.normalize();
  return StateVector(2, std::move(out));
}

struct RunOutcome {
  StateVector final_ab;
  ProtocolTranscript transcript;
  int alice_bit;
  int bob_bit;
  double probability;
};

RunOutcome run_once(const StateVector& psi_a, const StateVector& psi_b, const GateMatrix& u,
                    const RegisterLayout& layout, std::optional<int> force_alice,
                    std::optional<int> force_bob, Rng* rng) {
  if (psi_a.num_qubits() != 1 || psi_b.num_qubits() != 1) {
    throw validation_error("run_eisert: inputs must be single-qubit states");
  }
  layout.validate();

  ProtocolTranscript transcript;
  IdealRegister reg(initial_protocol_state(psi_a, psi_b, layout), rng);
  const auto [alice_bit, bob_bit] =
      run_protocol_steps(reg, layout, u, transcript, force_alice, force_bob);

  StateVector final_ab = extract_ab(reg.state(), layout, alice_bit, bob_bit);
  return {std::move(final_ab), std::move(transcript), alice_bit, bob_bit,
          reg.cumulative_probability()};
}

}  // namespace

EisertResult run_eisert(const StateVector& psi_a, const StateVector& psi_b, const GateMatrix& u,
                        std::uint64_t seed, const RegisterLayout& layout) {
  Rng rng(seed);
  RunOutcome out = run_once(psi_a, psi_b, u, layout, std::nullopt, std::nullopt, &rng);
  return {std::move(out.final_ab), std::move(out.transcript), out.alice_bit, out.bob_bit};
}

std::vector<EisertBranch> run_eisert_branches(const StateVector& psi_a, const StateVector& psi_b,
                                              const GateMatrix& u, const RegisterLayout& layout) {
  std::vector<EisertBranch> branches;
  branches.reserve(4);
  for (int m_a = 0; m_a < 2; ++m_a) {
    for (int m_b = 0; m_b < 2; ++m_b) {
      RunOutcome out = run_once(psi_a, psi_b, u, layout, m_a, m_b, nullptr);
      branches.push_back(EisertBranch{m_a, m_b, out.probability, std::move(out.final_ab),
                                      std::move(out.transcript)});
    }
  }
  return branches;
}

}  // namespace nlq
