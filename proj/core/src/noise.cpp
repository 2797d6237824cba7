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

#include "nlqsim/noise.hpp"

#include <cmath>
#include <iostream>
#include <utility>

#include "nlqsim/random.hpp"

namespace nlq {

namespace {

constexpr double kBranchEpsilon = 1e-15;

cmatrix_t make2(cplx_t a, cplx_t b, cplx_t c, cplx_t d) {
  cmatrix_t m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

std::vector<cmatrix_t> depolarizing_kraus(double p, int arity) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw validation_error("depolarizing: p must lie in [0, 1]");
  }
  if (arity != 1 && arity != 2) {
    throw validation_error("depolarizing: arity must be 1 or 2");
  }
  std::vector<cmatrix_t> kraus;
  if (arity == 1) {
    kraus.reserve(4);
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * pauli(0));
    if (p > 0.0) {
      for (int i = 1; i < 4; ++i) kraus.push_back(std::sqrt(p / 3.0) * pauli(i));
    }
  } else {
    kraus.reserve(16);
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * kron(pauli(0), pauli(0)));
    if (p > 0.0) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          if (i == 0 && j == 0) continue;
          kraus.push_back(std::sqrt(p / 15.0) * kron(pauli(i), pauli(j)));
        }
      }
    }
  }
  return kraus;
}

std::vector<cmatrix_t> relaxation_kraus(double t1_us, double t2_us, double duration_ns) {
  if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
    throw validation_error("relaxation: T1 and T2 must be positive");
  }
  if (!(duration_ns >= 0.0)) {
    throw validation_error("relaxation: duration must be non-negative");
  }
  const double t_us = duration_ns * 1e-3;

  const double gamma = -std::expm1(-t_us / t1_us);  // 1 - e^{-t/T1}

  // Pure dephasing rate on top of the T1-induced decoherence.
  double phi_rate = 1.0 / t2_us - 0.5 / t1_us;
  if (phi_rate < 0.0) {
    if (phi_rate < -1e-15) {
      std::clog << "relaxation: T2 > 2*T1, clamping pure dephasing to zero\n";
    }
    phi_rate = 0.0;
  }
  const double lambda = -std::expm1(-t_us * phi_rate);

  std::vector<cmatrix_t> damping;
  damping.push_back(make2(1, 0, 0, std::sqrt(1.0 - gamma)));
  if (gamma > 0.0) damping.push_back(make2(0, std::sqrt(gamma), 0, 0));

  if (lambda <= 0.0) return damping;

  std::vector<cmatrix_t> dephasing;
  dephasing.push_back(make2(1, 0, 0, std::sqrt(1.0 - lambda)));
  dephasing.push_back(make2(0, 0, 0, std::sqrt(lambda)));
  return compose_kraus(damping, dephasing);
}

std::vector<cmatrix_t> compose_kraus(const std::vector<cmatrix_t>& first,
                                     const std::vector<cmatrix_t>& second) {
  std::vector<cmatrix_t> out;
  out.reserve(first.size() * second.size());
  for (const auto& b : second) {
    for (const auto& a : first) {
      cmatrix_t prod = b * a;
      if (prod.norm() > 1e-15) out.push_back(std::move(prod));
    }
  }
  return out;
}

double kraus_completeness_deviation(const std::vector<cmatrix_t>& kraus) {
  if (kraus.empty()) throw validation_error("empty Kraus set");
  const auto d = kraus.front().rows();
  cmatrix_t sum = cmatrix_t::Zero(d, d);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - cmatrix_t::Identity(d, d)).cwiseAbs().maxCoeff();
}

int readout_flip(int bit, double p, Rng& rng) {
  if (bit != 0 && bit != 1) throw validation_error("readout_flip: bit must be 0 or 1");
  if (!(p >= 0.0 && p <= 1.0)) throw validation_error("readout_flip: p must lie in [0, 1]");
  return rng.bernoulli(p) ? 1 - bit : bit;
}

double accumulated_error_probability(std::span<const double> gate_errors) {
  double survival = 1.0;
  for (double p : gate_errors) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw validation_error("accumulated_error_probability: p must lie in [0, 1]");
    }
    survival *= 1.0 - p;
  }
  return 1.0 - survival;
}

//===========================================================================
// Noise placement
//===========================================================================

namespace {

// Lazily built per-execution channel table. Keeps relaxation construction
// (and its clamping warning) to one evaluation per qubit and duration.
class NoisePlan {
 public:
  NoisePlan(const NoiseModel& model, int n_qubits) : model_(model), n_(n_qubits) {
    model_.durations.validate();
    for (int q = 0; q < n_; ++q) model_.calibration.qubit(q);  // fail early when missing
  }

  // Channels to apply after a unitary on `targets`, as (kraus, targets).
  std::vector<std::pair<const std::vector<cmatrix_t>*, std::vector<int>>> after_gate(
      const std::vector<int>& targets) {
    std::vector<std::pair<const std::vector<cmatrix_t>*, std::vector<int>>> out;
    const bool two_qubit = targets.size() == 2;
    const double duration =
        two_qubit ? model_.durations.two_qubit_ns : model_.durations.single_qubit_ns;
    if (two_qubit) {
      const auto& depol = pair_depolarizing(targets[0], targets[1]);
      if (!depol.empty()) out.emplace_back(&depol, targets);
    } else {
      const auto& depol = qubit_depolarizing(targets[0]);
      if (!depol.empty()) out.emplace_back(&depol, targets);
    }
    for (int q : targets) {
      const auto& relax = relaxation_for(q, duration);
      if (!relax.empty()) out.emplace_back(&relax, std::vector<int>{q});
    }
    if (model_.idle_relaxation) add_idle(out, targets, duration);
    return out;
  }

  // Channels for the idle qubits during a measurement (idle mode only).
  std::vector<std::pair<const std::vector<cmatrix_t>*, std::vector<int>>> during_measurement(
      int measured_qubit) {
    std::vector<std::pair<const std::vector<cmatrix_t>*, std::vector<int>>> out;
    if (model_.idle_relaxation) add_idle(out, {measured_qubit}, model_.durations.readout_ns);
    return out;
  }

  double readout_error(int qubit) const { return model_.calibration.qubit(qubit).readout_error; }

 private:
  void add_idle(std::vector<std::pair<const std::vector<cmatrix_t>*, std::vector<int>>>& out,
                const std::vector<int>& busy, double duration) {
    for (int q = 0; q < n_; ++q) {
      bool is_busy = false;
      for (int b : busy) is_busy = is_busy || (b == q);
      if (is_busy) continue;
      const auto& relax = relaxation_for(q, duration);
      if (!relax.empty()) out.emplace_back(&relax, std::vector<int>{q});
    }
  }

  const std::vector<cmatrix_t>& qubit_depolarizing(int q) {
    auto it = depol1_.find(q);
    if (it == depol1_.end()) {
      const double p = model_.calibration.qubit(q).gate_error;
      it = depol1_.emplace(q, p > 0.0 ? depolarizing_kraus(p, 1) : std::vector<cmatrix_t>{}).first;
    }
    return it->second;
  }

  const std::vector<cmatrix_t>& pair_depolarizing(int q1, int q2) {
    const std::pair<int, int> key{q1, q2};
    auto it = depol2_.find(key);
    if (it == depol2_.end()) {
      const auto p = model_.calibration.cx_error(q1, q2);
      if (!p) {
        throw validation_error("noise: no two-qubit gate error for pair (" + std::to_string(q1) +
                               ", " + std::to_string(q2) + ") in the calibration table");
      }
      it = depol2_.emplace(key, *p > 0.0 ? depolarizing_kraus(*p, 2) : std::vector<cmatrix_t>{})
               .first;
    }
    return it->second;
  }

  const std::vector<cmatrix_t>& relaxation_for(int q, double duration_ns) {
    const std::pair<int, double> key{q, duration_ns};
    auto it = relax_.find(key);
    if (it == relax_.end()) {
      const auto& cal = model_.calibration.qubit(q);
      auto kraus = relaxation_kraus(cal.t1_us, cal.t2_us, duration_ns);
      // A single identity element is a no-op; store empty to skip it.
      if (kraus.size() == 1 && (kraus.front() - pauli(0)).cwiseAbs().maxCoeff() < 1e-15) {
        kraus.clear();
      }
      it = relax_.emplace(key, std::move(kraus)).first;
    }
    return it->second;
  }

  NoiseModel model_;
  int n_;
  std::map<int, std::vector<cmatrix_t>> depol1_;
  std::map<std::pair<int, int>, std::vector<cmatrix_t>> depol2_;
  std::map<std::pair<int, double>, std::vector<cmatrix_t>> relax_;
};

DensityMatrix apply_noise(DensityMatrix rho,
                          const std::vector<std::pair<const std::vector<cmatrix_t>*,
                                                      std::vector<int>>>& channels) {
  for (const auto& [kraus, targets] : channels) {
    rho = apply_channel(rho, *kraus, targets);
  }
  return rho;
}

}  // namespace

std::vector<DmBranch> enumerate_noisy_branches(const Circuit& circuit, const NoiseModel& model) {
  circuit.validate();
  if (circuit.num_qubits() > kMaxDensityMatrixQubits) {
    throw capability_error("noisy execution: register of " +
                           std::to_string(circuit.num_qubits()) +
                           " qubits exceeds the density-matrix cap of " +
                           std::to_string(kMaxDensityMatrixQubits));
  }
  NoisePlan plan(model, circuit.num_qubits());

  std::vector<DmBranch> work;
  work.push_back(DmBranch{DensityMatrix::zero_state(circuit.num_qubits()),
                          std::vector<int>(static_cast<std::size_t>(circuit.num_cbits()), 0),
                          1.0});

  auto apply_gate_with_noise = [&](DmBranch& branch, const GateOp& g) {
    branch.state = apply_unitary(branch.state, g.gate, g.targets);
    branch.state = apply_noise(std::move(branch.state), plan.after_gate(g.targets));
  };

  for (const auto& inst : circuit.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      for (auto& branch : work) apply_gate_with_noise(branch, *g);
    } else if (const auto* c = std::get_if<ConditionalOp>(&inst)) {
      for (auto& branch : work) {
        if (branch.cbits[static_cast<std::size_t>(c->cbit)] == c->trigger) {
          apply_gate_with_noise(branch, c->op);
        }
      }
    } else {
      const auto& m = std::get<MeasureOp>(inst);
      const double flip = plan.readout_error(m.qubit);
      std::vector<DmBranch> next;
      next.reserve(work.size() * 2);
      for (auto& branch : work) {
        for (int true_outcome = 0; true_outcome < 2; ++true_outcome) {
          auto [p, projected] = project_qubit(branch.state, m.qubit, true_outcome);
          if (p < kBranchEpsilon) continue;
          projected = apply_noise(std::move(projected), plan.during_measurement(m.qubit));
          for (int recorded = 0; recorded < 2; ++recorded) {
            const double w = recorded == true_outcome ? 1.0 - flip : flip;
            if (w < kBranchEpsilon) continue;
            DmBranch child{projected, branch.cbits, branch.probability * p * w};
            child.cbits[static_cast<std::size_t>(m.cbit)] = recorded;
            next.push_back(std::move(child));
          }
        }
      }
      work = std::move(next);
    }
  }
  return work;
}

std::map<std::string, double> noisy_outcome_probabilities(const Circuit& circuit,
                                                          const NoiseModel& model,
                                                          const std::vector<int>& report_cbits) {
  std::vector<int> report = report_cbits;
  if (report.empty()) {
    for (int c = 0; c < circuit.num_cbits(); ++c) report.push_back(c);
  }
  if (report.empty()) throw validation_error("circuit declares no classical bits to report");
  for (int c : report) {
    if (c < 0 || c >= circuit.num_cbits()) {
      throw dimension_error("report cbit " + std::to_string(c) + " out of range");
    }
  }
  std::map<std::string, double> dist;
  for (const auto& branch : enumerate_noisy_branches(circuit, model)) {
    std::string key(report.size(), '0');
    for (std::size_t i = 0; i < report.size(); ++i) {
      key[i] = branch.cbits[static_cast<std::size_t>(report[i])] ? '1' : '0';
    }
    dist[key] += branch.probability;
  }
  return dist;
}

Histogram noisy_run(const Circuit& circuit, const NoiseModel& model, int shots,
                    std::uint64_t seed, const std::vector<int>& report_cbits, int shot_cap) {
  if (shots < 1) throw validation_error("noisy_run: shots must be >= 1");
  if (shot_cap >= 1 && shots > shot_cap) {
    throw validation_error("noisy_run: shots " + std::to_string(shots) + " exceeds the cap of " +
                           std::to_string(shot_cap) + " (raise the cap to override)");
  }
  const auto dist = noisy_outcome_probabilities(circuit, model, report_cbits);
  std::vector<std::string> outcomes;
  std::vector<double> weights;
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

//===========================================================================
// Noisy protocol register
//===========================================================================

namespace {

class NoisyRegister final : public ProtocolRegister {
 public:
  NoisyRegister(DensityMatrix rho, const NoiseModel& model, Rng* rng)
      : rho_(std::move(rho)), plan_(model, rho_.num_qubits()), rng_(rng) {}

  const DensityMatrix& state() const { return rho_; }

  void apply_gate(const std::string&, const GateMatrix& gate,
                  const std::vector<int>& targets) override {
    rho_ = apply_unitary(rho_, gate, targets);
    rho_ = apply_noise(std::move(rho_), plan_.after_gate(targets));
  }

  int measure(int qubit, std::optional<int> forced) override {
    int true_outcome;
    if (forced) {
      true_outcome = *forced;
    } else {
      if (rng_ == nullptr) throw protocol_error("protocol: sampling run without an RNG");
      auto [p0, ignored] = project_qubit(rho_, qubit, 0);
      true_outcome = rng_->uniform() < p0 ? 0 : 1;
    }
    auto [p, projected] = project_qubit(rho_, qubit, true_outcome);
    if (p < kBranchEpsilon) {
      throw protocol_error("protocol: forced measurement branch has zero weight");
    }
    rho_ = apply_noise(std::move(projected), plan_.during_measurement(qubit));
    const double flip = plan_.readout_error(qubit);
    if (flip > 0.0 && rng_ != nullptr) return readout_flip(true_outcome, flip, *rng_);
    return true_outcome;
  }

  double probability_of_zero(int qubit) override {
    return project_qubit(rho_, qubit, 0).first;
  }

 private:
  DensityMatrix rho_;
  NoisePlan plan_;
  Rng* rng_;
};

}  // namespace

NoisyEisertResult run_eisert(const StateVector& psi_a, const StateVector& psi_b,
                             const GateMatrix& u, std::uint64_t seed, const NoiseModel& noise,
                             const RegisterLayout& layout) {
  if (layout.num_qubits() > kMaxDensityMatrixQubits) {
    throw capability_error("run_eisert: layout exceeds the density-matrix cap");
  }
  Rng rng(seed);
  ProtocolTranscript transcript;
  NoisyRegister reg(DensityMatrix::from_state(initial_protocol_state(psi_a, psi_b, layout)),
                    noise, &rng);
  const auto [alice_bit, bob_bit] = run_protocol_steps(reg, layout, u, transcript);
  DensityMatrix final_ab =
      reg.state().partial_trace({layout.alice_data, layout.bob_data});
  return {std::move(final_ab), std::move(transcript), alice_bit, bob_bit};
}

}  // namespace nlq
