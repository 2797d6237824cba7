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

#include <benchmark/benchmark.h>

#include "nlqsim/experiments.hpp"
#include "nlqsim/noise.hpp"
#include "nlqsim/process_tomo.hpp"
#include "nlqsim/protocol.hpp"
#include "nlqsim/random.hpp"
#include "nlqsim/simulator.hpp"
#include "nlqsim/state_tomo.hpp"

using namespace nlq;

namespace {

StateVector random_state(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  return StateVector(n_qubits, haar_random_amplitudes(static_cast<int>(dim_of(n_qubits)), rng));
}

void BM_ApplySingleQubitGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi = random_state(n, 1);
  const GateMatrix& h = named_gate(Gate::H);
  int q = 0;
  for (auto _ : state) {
    psi = apply_unitary(psi, h, {q});
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim_of(n)));
}
BENCHMARK(BM_ApplySingleQubitGate)->DenseRange(4, 16, 4);

void BM_ApplyCnot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi = random_state(n, 2);
  const GateMatrix& cx = named_gate(Gate::CX);
  int q = 0;
  for (auto _ : state) {
    psi = apply_unitary(psi, cx, {q, (q + 1) % n});
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim_of(n)));
}
BENCHMARK(BM_ApplyCnot)->DenseRange(4, 16, 4);

void BM_ProtocolTrajectory(benchmark::State& state) {
  const StateVector psi_a = random_state(1, 3);
  const StateVector psi_b = random_state(1, 4);
  const GateMatrix u(1, [] {
    Rng rng(5);
    return haar_random_unitary(2, rng);
  }());
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto result = run_eisert(psi_a, psi_b, u, seed++);
    benchmark::DoNotOptimize(result.final_ab.amplitudes().data());
  }
}
BENCHMARK(BM_ProtocolTrajectory);

void BM_SampleHistogram8192(benchmark::State& state) {
  const Circuit circuit = build_run_circuit({NonLocalGate::Cnot});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Histogram h = sample_histogram(circuit, 8192, seed++, run_report_cbits());
    benchmark::DoNotOptimize(h.shots);
  }
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_SampleHistogram8192);

void BM_NoisyDistribution(benchmark::State& state) {
  const Circuit circuit = build_run_circuit({NonLocalGate::Cnot});
  const NoiseModel model{calibration_preset("ibmqx2-paper"), {}, false};
  for (auto _ : state) {
    const auto dist = noisy_outcome_probabilities(circuit, model, run_report_cbits());
    benchmark::DoNotOptimize(dist.size());
  }
}
BENCHMARK(BM_NoisyDistribution);

void BM_StateTomographyAnalytic(benchmark::State& state) {
  const StateVector target = theory_output({NonLocalGate::Cnot});
  for (auto _ : state) {
    const DensityMatrix rho =
        reconstruct(t_from_probabilities(analytic_tomography_data(target)));
    benchmark::DoNotOptimize(rho.matrix().data());
  }
}
BENCHMARK(BM_StateTomographyAnalytic);

void BM_ChiPipelineCnot(benchmark::State& state) {
  for (auto _ : state) {
    const ProcessMatrix chi = chi_from_outputs(acquire_outputs(named_gate(Gate::CX)));
    benchmark::DoNotOptimize(chi.chi.data());
  }
}
BENCHMARK(BM_ChiPipelineCnot);

void BM_StateFidelityMixed(benchmark::State& state) {
  Rng rng(6);
  const StateVector psi(2, haar_random_amplitudes(4, rng));
  const DensityMatrix a = psi.to_density_matrix();
  const DensityMatrix b = DensityMatrix::maximally_mixed(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_fidelity(a, b));
  }
}
BENCHMARK(BM_StateFidelityMixed);

}  // namespace

BENCHMARK_MAIN();
