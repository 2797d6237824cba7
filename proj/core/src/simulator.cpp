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

#include "nlqsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nlq {

namespace {

// Branches below this weight are dropped during enumeration.
constexpr double kBranchEpsilon = 1e-15;

void check_gate_targets(int n_qubits, const GateMatrix& gate, const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != gate.arity()) {
    throw dimension_error("apply: gate arity does not match target count");
  }
  std::set<int> seen;
  for (int q : targets) {
    if (q < 0 || q >= n_qubits) {
      throw dimension_error("apply: qubit index " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) {
      throw validation_error("apply: duplicate target qubit " + std::to_string(q));
    }
  }
}

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw dimension_error("qubit index " + std::to_string(qubit) + " out of range");
  }
}

// Applies `u` to the amplitudes at `data` on the given targets. The first
// target maps to the most significant bit of u's index space.
void apply_kernel(cplx_t* data, const cmatrix_t& u, const std::vector<int>& targets, int n) {
  const int k = static_cast<int>(targets.size());
  const std::size_t d = dim_of(n);
  const std::size_t dk = dim_of(k);

  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << (n - 1 - t);

  std::vector<std::size_t> offsets(dk, 0);
  for (std::size_t m = 0; m < dk; ++m) {
    std::size_t off = 0;
    for (int t = 0; t < k; ++t) {
      off = with_bit(off, targets[static_cast<std::size_t>(t)], n, bit_of(m, t, k));
    }
    offsets[m] = off;
  }

  std::vector<cplx_t> scratch(dk);
  for (std::size_t base = 0; base < d; ++base) {
    if (base & target_mask) continue;
    for (std::size_t m = 0; m < dk; ++m) scratch[m] = data[base | offsets[m]];
    for (std::size_t r = 0; r < dk; ++r) {
      cplx_t acc = 0.0;
      for (std::size_t c = 0; c < dk; ++c) {
        acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * scratch[c];
      }
      data[base | offsets[r]] = acc;
    }
  }
}

void apply_to_columns(cmatrix_t& m, const cmatrix_t& u, const std::vector<int>& targets, int n) {
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    apply_kernel(m.col(col).data(), u, targets, n);
  }
}

// Execution state for trajectory walks and branch enumeration.
struct WorkState {
  cvector_t amps;
  std::vector<int> cbits;
  double probability = 1.0;
};

// Splits a work state on a measurement; appends surviving branches to `out`.
void split_on_measurement(const WorkState& ws, int qubit, int cbit, int n,
                          std::vector<WorkState>& out) {
  for (int outcome = 0; outcome < 2; ++outcome) {
    double p = 0.0;
    for (std::size_t i = 0; i < dim_of(n); ++i) {
      if (bit_of(i, qubit, n) == outcome) p += std::norm(ws.amps(static_cast<Eigen::Index>(i)));
    }
    if (p < kBranchEpsilon) continue;
    WorkState next;
    next.amps = ws.amps;
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < dim_of(n); ++i) {
      if (bit_of(i, qubit, n) != outcome) {
        next.amps(static_cast<Eigen::Index>(i)) = 0.0;
      } else {
        next.amps(static_cast<Eigen::Index>(i)) *= scale;
      }
    }
    next.cbits = ws.cbits;
    next.cbits[static_cast<std::size_t>(cbit)] = outcome;
    next.probability = ws.probability * p;
    out.push_back(std::move(next));
  }
}

std::vector<int> resolve_report_cbits(const Circuit& circuit, const std::vector<int>& report) {
  std::vector<int> cbits = report;
  if (cbits.empty()) {
    for (int c = 0; c < circuit.num_cbits(); ++c) cbits.push_back(c);
  }
  if (cbits.empty()) {
    throw validation_error("circuit declares no classical bits to report");
  }
  for (int c : cbits) {
    if (c < 0 || c >= circuit.num_cbits()) {
      throw dimension_error("report cbit " + std::to_string(c) + " out of range");
    }
  }
  return cbits;
}

std::string key_for(const std::vector<int>& cbits, const std::vector<int>& report) {
  std::string key(report.size(), '0');
  for (std::size_t i = 0; i < report.size(); ++i) {
    key[i] = cbits[static_cast<std::size_t>(report[i])] ? '1' : '0';
  }
  return key;
}

}  // namespace

StateVector apply_unitary(const StateVector& state, const GateMatrix& gate,
                          const std::vector<int>& targets) {
  check_gate_targets(state.num_qubits(), gate, targets);
  cvector_t amps = state.amplitudes();
  apply_kernel(amps.data(), gate.matrix(), targets, state.num_qubits());
  return StateVector(state.num_qubits(), std::move(amps));
}

double outcome_probability(const StateVector& state, int qubit, int outcome) {
  check_qubit(state.num_qubits(), qubit);
  if (outcome != 0 && outcome != 1) throw validation_error("outcome must be 0 or 1");
  const int n = state.num_qubits();
  double p = 0.0;
  for (std::size_t i = 0; i < dim_of(n); ++i) {
    if (bit_of(i, qubit, n) == outcome) p += state.probability(i);
  }
  return p;
}

std::pair<double, StateVector> project_qubit(const StateVector& state, int qubit, int outcome) {
  const double p = outcome_probability(state, qubit, outcome);
  if (p < kBranchEpsilon) return {p, state};
  const int n = state.num_qubits();
  cvector_t amps = state.amplitudes();
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < dim_of(n); ++i) {
    if (bit_of(i, qubit, n) != outcome) {
      amps(static_cast<Eigen::Index>(i)) = 0.0;
    } else {
      amps(static_cast<Eigen::Index>(i)) *= scale;
    }
  }
  return {p, StateVector(n, std::move(amps))};
}

std::pair<int, StateVector> measure_qubit(const StateVector& state, int qubit, Rng& rng) {
  const double p0 = outcome_probability(state, qubit, 0);
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  auto [p, collapsed] = project_qubit(state, qubit, outcome);
  return {outcome, std::move(collapsed)};
}

IdealRunResult run_ideal(const Circuit& circuit, std::uint64_t seed) {
  circuit.validate();
  Rng rng(seed);
  StateVector state = StateVector::zero_state(circuit.num_qubits());
  std::vector<int> cbits(static_cast<std::size_t>(circuit.num_cbits()), 0);
  for (const auto& inst : circuit.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      state = apply_unitary(state, g->gate, g->targets);
    } else if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      auto [outcome, collapsed] = measure_qubit(state, m->qubit, rng);
      state = std::move(collapsed);
      cbits[static_cast<std::size_t>(m->cbit)] = outcome;
    } else {
      const auto& c = std::get<ConditionalOp>(inst);
      if (cbits[static_cast<std::size_t>(c.cbit)] == c.trigger) {
        state = apply_unitary(state, c.op.gate, c.op.targets);
      }
    }
  }
  return {std::move(state), std::move(cbits)};
}

std::vector<Branch> enumerate_branches(const Circuit& circuit) {
  circuit.validate();
  const int n = circuit.num_qubits();
  std::vector<WorkState> work;
  {
    WorkState init;
    init.amps = StateVector::zero_state(n).amplitudes();
    init.cbits.assign(static_cast<std::size_t>(circuit.num_cbits()), 0);
    work.push_back(std::move(init));
  }
  for (const auto& inst : circuit.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      for (auto& ws : work) apply_kernel(ws.amps.data(), g->gate.matrix(), g->targets, n);
    } else if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      std::vector<WorkState> next;
      next.reserve(work.size() * 2);
      for (const auto& ws : work) split_on_measurement(ws, m->qubit, m->cbit, n, next);
      work = std::move(next);
    } else {
      const auto& c = std::get<ConditionalOp>(inst);
      for (auto& ws : work) {
        if (ws.cbits[static_cast<std::size_t>(c.cbit)] == c.trigger) {
          apply_kernel(ws.amps.data(), c.op.gate.matrix(), c.op.targets, n);
        }
      }
    }
  }
  std::vector<Branch> out;
  out.reserve(work.size());
  for (auto& ws : work) {
    out.push_back(Branch{StateVector(n, std::move(ws.amps)), std::move(ws.cbits), ws.probability});
  }
  return out;
}

std::map<std::string, double> outcome_probabilities(const Circuit& circuit,
                                                    const std::vector<int>& report_cbits) {
  const auto report = resolve_report_cbits(circuit, report_cbits);
  std::map<std::string, double> dist;
  for (const auto& branch : enumerate_branches(circuit)) {
    dist[key_for(branch.cbits, report)] += branch.probability;
  }
  return dist;
}

Histogram sample_histogram(const Circuit& circuit, int shots, std::uint64_t seed,
                           const std::vector<int>& report_cbits, int shot_cap) {
  if (shots < 1) throw validation_error("sample_histogram: shots must be >= 1");
  if (shot_cap >= 1 && shots > shot_cap) {
    throw validation_error("sample_histogram: shots " + std::to_string(shots) +
                           " exceeds the cap of " + std::to_string(shot_cap) +
                           " (raise the cap to override)");
  }
  const auto dist = outcome_probabilities(circuit, report_cbits);
  std::vector<std::string> outcomes;
  std::vector<double> weights;
  outcomes.reserve(dist.size());
  weights.reserve(dist.size());
  for (const auto& [outcome, p] : dist) {
    outcomes.push_back(outcome);
    weights.push_back(p);
  }
  Histogram h;
  h.shots = static_cast<std::uint64_t>(shots);
  for (int s = 0; s < shots; ++s) {
    Rng rng = shot_rng(seed, static_cast<std::uint64_t>(s));
    h.counts[outcomes[rng.categorical(weights)]] += 1;
  }
  return h;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const GateMatrix& gate,
                            const std::vector<int>& targets) {
  check_gate_targets(rho.num_qubits(), gate, targets);
  const int n = rho.num_qubits();
  cmatrix_t a = rho.matrix();
  apply_to_columns(a, gate.matrix(), targets, n);  // U rho
  cmatrix_t b = a.adjoint();
  apply_to_columns(b, gate.matrix(), targets, n);  // U (U rho)^dag
  return DensityMatrix(n, b.adjoint());            // = U rho U^dag
}

DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<cmatrix_t>& kraus,
                            const std::vector<int>& targets) {
  if (kraus.empty()) throw validation_error("apply_channel: empty Kraus set");
  const auto dk = kraus.front().rows();
  int arity = 0;
  while ((Eigen::Index{1} << arity) < dk) ++arity;
  if ((Eigen::Index{1} << arity) != dk || arity < 1 || arity > 2) {
    throw dimension_error("apply_channel: Kraus operators must be 2x2 or 4x4");
  }
  cmatrix_t completeness = cmatrix_t::Zero(dk, dk);
  for (const auto& k : kraus) {
    if (k.rows() != dk || k.cols() != dk) {
      throw dimension_error("apply_channel: Kraus operators have mixed shapes");
    }
    completeness += k.adjoint() * k;
  }
  const double dev = (completeness - cmatrix_t::Identity(dk, dk)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw validation_error("apply_channel: Kraus set is not trace preserving (deviation " +
                           std::to_string(dev) + ")");
  }
  if (static_cast<int>(targets.size()) != arity) {
    throw dimension_error("apply_channel: target count does not match Kraus arity");
  }
  std::set<int> seen;
  for (int q : targets) {
    if (q < 0 || q >= rho.num_qubits()) throw dimension_error("apply_channel: qubit out of range");
    if (!seen.insert(q).second) throw validation_error("apply_channel: duplicate target");
  }

  const int n = rho.num_qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  cmatrix_t acc = cmatrix_t::Zero(d, d);
  for (const auto& k : kraus) {
    cmatrix_t a = rho.matrix();
    apply_to_columns(a, k, targets, n);  // K rho
    cmatrix_t b = a.adjoint();
    apply_to_columns(b, k, targets, n);  // K (K rho)^dag
    acc += b.adjoint();                  // K rho K^dag
  }
  return DensityMatrix(n, std::move(acc));
}

std::pair<double, DensityMatrix> project_qubit(const DensityMatrix& rho, int qubit, int outcome) {
  check_qubit(rho.num_qubits(), qubit);
  if (outcome != 0 && outcome != 1) throw validation_error("outcome must be 0 or 1");
  const int n = rho.num_qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  double p = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (bit_of(static_cast<std::size_t>(i), qubit, n) == outcome) p += rho.matrix()(i, i).real();
  }
  if (p < kBranchEpsilon) return {p, rho};
  cmatrix_t projected = rho.matrix();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (bit_of(static_cast<std::size_t>(i), qubit, n) != outcome) {
      projected.row(i).setZero();
      projected.col(i).setZero();
    }
  }
  projected /= p;
  return {p, DensityMatrix(n, std::move(projected))};
}

}  // namespace nlq
