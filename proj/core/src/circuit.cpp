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

#include "nlqsim/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nlq {

Circuit::Circuit(int n_qubits, int n_cbits) : n_qubits_(n_qubits), n_cbits_(n_cbits) {
  if (n_qubits_ < 1) throw validation_error("Circuit: need at least one qubit");
  if (n_qubits_ > kMaxStateVectorQubits) {
    throw capability_error("Circuit: register exceeds the dense cap");
  }
  if (n_cbits_ < 0) throw validation_error("Circuit: negative cbit count");
}

void Circuit::check_targets(const GateMatrix& m, const std::vector<int>& targets) const {
  if (static_cast<int>(targets.size()) != m.arity()) {
    throw dimension_error("Circuit: gate arity does not match target count");
  }
  std::set<int> seen;
  for (int q : targets) {
    if (q < 0 || q >= n_qubits_) {
      throw dimension_error("Circuit: qubit index " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) {
      throw validation_error("Circuit: duplicate target qubit " + std::to_string(q));
    }
  }
}

void Circuit::check_cbit(int cbit) const {
  if (cbit < 0 || cbit >= n_cbits_) {
    throw dimension_error("Circuit: cbit index " + std::to_string(cbit) + " out of range");
  }
}

void Circuit::add_gate(Gate g, std::vector<int> targets) {
  const GateMatrix& m = named_gate(g);
  check_targets(m, targets);
  instructions_.push_back(GateOp{g, m, std::move(targets)});
}

void Circuit::add_gate(GateMatrix m, std::vector<int> targets) {
  check_targets(m, targets);
  instructions_.push_back(GateOp{std::nullopt, std::move(m), std::move(targets)});
}

void Circuit::add_measure(int qubit, int cbit) {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw dimension_error("Circuit: measured qubit out of range");
  }
  check_cbit(cbit);
  instructions_.push_back(MeasureOp{qubit, cbit});
}

void Circuit::add_conditional(Gate g, std::vector<int> targets, int cbit, int trigger) {
  const GateMatrix& m = named_gate(g);
  check_targets(m, targets);
  check_cbit(cbit);
  if (trigger != 0 && trigger != 1) throw validation_error("Circuit: trigger must be 0 or 1");
  instructions_.push_back(ConditionalOp{GateOp{g, m, std::move(targets)}, cbit, trigger});
}

void Circuit::add_conditional(GateMatrix m, std::vector<int> targets, int cbit, int trigger) {
  check_targets(m, targets);
  check_cbit(cbit);
  if (trigger != 0 && trigger != 1) throw validation_error("Circuit: trigger must be 0 or 1");
  instructions_.push_back(ConditionalOp{GateOp{std::nullopt, std::move(m), std::move(targets)}, cbit, trigger});
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_ || other.n_cbits_ > n_cbits_) {
    throw dimension_error("Circuit::append: register too small for appended circuit");
  }
  for (const auto& inst : other.instructions_) instructions_.push_back(inst);
}

void Circuit::append_remapped(const Circuit& other, const std::vector<int>& qubit_map,
                              const std::vector<int>& cbit_map) {
  if (static_cast<int>(qubit_map.size()) != other.n_qubits_) {
    throw dimension_error("append_remapped: qubit map size mismatch");
  }
  if (!cbit_map.empty() && static_cast<int>(cbit_map.size()) != other.n_cbits_) {
    throw dimension_error("append_remapped: cbit map size mismatch");
  }
  auto map_qubits = [&](const std::vector<int>& ts) {
    std::vector<int> out;
    out.reserve(ts.size());
    for (int q : ts) out.push_back(qubit_map.at(static_cast<std::size_t>(q)));
    return out;
  };
  auto map_cbit = [&](int c) {
    if (cbit_map.empty()) throw dimension_error("append_remapped: circuit uses cbits but no cbit map given");
    return cbit_map.at(static_cast<std::size_t>(c));
  };
  for (const auto& inst : other.instructions_) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      GateOp copy = *g;
      copy.targets = map_qubits(g->targets);
      check_targets(copy.gate, copy.targets);
      instructions_.push_back(std::move(copy));
    } else if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      add_measure(qubit_map.at(static_cast<std::size_t>(m->qubit)), map_cbit(m->cbit));
    } else {
      const auto& c = std::get<ConditionalOp>(inst);
      ConditionalOp copy = c;
      copy.op.targets = map_qubits(c.op.targets);
      copy.cbit = map_cbit(c.cbit);
      check_targets(copy.op.gate, copy.op.targets);
      check_cbit(copy.cbit);
      instructions_.push_back(std::move(copy));
    }
  }
}

bool Circuit::has_measurements() const {
  for (const auto& inst : instructions_) {
    if (std::holds_alternative<MeasureOp>(inst)) return true;
  }
  return false;
}

std::vector<int> Circuit::measured_qubits() const {
  std::vector<int> out;
  for (const auto& inst : instructions_) {
    if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      if (std::find(out.begin(), out.end(), m->qubit) == out.end()) out.push_back(m->qubit);
    }
  }
  return out;
}

void Circuit::validate() const {
  std::set<int> written;
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    const auto& inst = instructions_[i];
    if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      written.insert(m->cbit);
    } else if (const auto* c = std::get_if<ConditionalOp>(&inst)) {
      if (!written.count(c->cbit)) {
        throw validation_error("Circuit: instruction " + std::to_string(i) +
                               " conditions on cbit " + std::to_string(c->cbit) +
                               " before any measurement writes it");
      }
    }
  }
}

cmatrix_t circuit_unitary(const Circuit& circuit) {
  if (circuit.has_measurements()) {
    throw validation_error("circuit_unitary: circuit contains measurements");
  }
  for (const auto& inst : circuit.instructions()) {
    if (std::holds_alternative<ConditionalOp>(inst)) {
      throw validation_error("circuit_unitary: circuit contains conditional gates");
    }
  }
  const int n = circuit.num_qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  cmatrix_t total = cmatrix_t::Identity(d, d);
  for (const auto& inst : circuit.instructions()) {
    const auto& g = std::get<GateOp>(inst);
    // Embed the gate on its targets: element (r, c) of the embedded matrix is
    // u(target bits of r, target bits of c) when non-target bits agree.
    cmatrix_t embedded = cmatrix_t::Zero(d, d);
    const int k = g.gate.arity();
    const auto dk = dim_of(k);
    for (std::size_t base = 0; base < dim_of(n); ++base) {
      bool clear = true;
      for (int t = 0; t < k; ++t) clear = clear && bit_of(base, g.targets[static_cast<std::size_t>(t)], n) == 0;
      if (!clear) continue;
      for (std::size_t rr = 0; rr < dk; ++rr) {
        std::size_t row = base;
        for (int t = 0; t < k; ++t) row = with_bit(row, g.targets[static_cast<std::size_t>(t)], n, bit_of(rr, t, k));
        for (std::size_t cc = 0; cc < dk; ++cc) {
          std::size_t col = base;
          for (int t = 0; t < k; ++t) col = with_bit(col, g.targets[static_cast<std::size_t>(t)], n, bit_of(cc, t, k));
          embedded(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
              g.gate.matrix()(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(cc));
        }
      }
    }
    total = embedded * total;
  }
  return total;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw parse_error("line " + std::to_string(line_no) + ": bad " + what + " \"" + tok + "\"");
  }
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int n_qubits = -1, n_cbits = 0;
  std::vector<std::pair<int, std::vector<std::string>>> body;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    std::string head = toks[0];
    for (auto& ch : head) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (head == "qubits") {
      if (toks.size() != 2) throw parse_error("line " + std::to_string(line_no) + ": qubits takes one count");
      n_qubits = parse_int(toks[1], line_no, "qubit count");
    } else if (head == "cbits") {
      if (toks.size() != 2) throw parse_error("line " + std::to_string(line_no) + ": cbits takes one count");
      n_cbits = parse_int(toks[1], line_no, "cbit count");
    } else {
      body.emplace_back(line_no, std::move(toks));
    }
  }
  if (n_qubits < 1) throw parse_error("circuit file must declare \"qubits N\" first");

  Circuit circuit(n_qubits, n_cbits);
  for (const auto& [ln, toks] : body) {
    std::string head = toks[0];
    for (auto& ch : head) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    try {
      if (head == "measure") {
        if (toks.size() != 3) throw parse_error("measure takes: qubit cbit");
        circuit.add_measure(parse_int(toks[1], ln, "qubit"), parse_int(toks[2], ln, "cbit"));
      } else if (head == "cond") {
        if (toks.size() < 5) throw parse_error("cond takes: cbit trigger gate targets...");
        const int cbit = parse_int(toks[1], ln, "cbit");
        const int trig = parse_int(toks[2], ln, "trigger");
        const auto g = gate_by_name(toks[3]);
        if (!g) throw parse_error("unknown gate \"" + toks[3] + "\"");
        std::vector<int> targets;
        for (std::size_t i = 4; i < toks.size(); ++i) targets.push_back(parse_int(toks[i], ln, "qubit"));
        circuit.add_conditional(*g, std::move(targets), cbit, trig);
      } else {
        const auto g = gate_by_name(head);
        if (!g) throw parse_error("unknown gate \"" + toks[0] + "\"");
        std::vector<int> targets;
        for (std::size_t i = 1; i < toks.size(); ++i) targets.push_back(parse_int(toks[i], ln, "qubit"));
        circuit.add_gate(*g, std::move(targets));
      }
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception& e) {
      throw parse_error("line " + std::to_string(ln) + ": " + e.what());
    }
  }
  circuit.validate();
  return circuit;
}

std::string format_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits() << "\n";
  if (circuit.num_cbits() > 0) out << "cbits " << circuit.num_cbits() << "\n";
  auto emit_gate = [&](const GateOp& g) {
    if (!g.name) {
      throw validation_error("format_circuit: raw-matrix gates have no text form");
    }
    std::string name{gate_name(*g.name)};
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out << name;
    for (int q : g.targets) out << ' ' << q;
    out << "\n";
  };
  for (const auto& inst : circuit.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      emit_gate(*g);
    } else if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      out << "measure " << m->qubit << ' ' << m->cbit << "\n";
    } else {
      const auto& c = std::get<ConditionalOp>(inst);
      out << "cond " << c.cbit << ' ' << c.trigger << ' ';
      emit_gate(c.op);
    }
  }
  return out.str();
}

}  // namespace nlq
