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

#include <cmath>

#include "doctest.h"
#include "nlqsim/noise.hpp"
#include "nlqsim/random.hpp"
#include "nlqsim/simulator.hpp"
#include "test_helpers.hpp"

using namespace nlq;
using namespace nlqtest;

TEST_CASE("single-qubit gates act as expected on basis states") {
  const StateVector zero = StateVector::zero_state(1);
  CHECK(pure_fidelity(apply_unitary(zero, named_gate(Gate::X), {0}),
                      StateVector::computational_state(1, 1)) == doctest::Approx(1.0));
  const StateVector plus = apply_unitary(zero, named_gate(Gate::H), {0});
  CHECK(std::abs(plus.amplitude(0) - cplx_t(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(plus.amplitude(1) - cplx_t(kInvSqrt2, 0.0)) < 1e-15);
}

TEST_CASE("CNOT on (|00>+|10>)/sqrt2 yields the Bell pair") {
  const StateVector in = state({kInvSqrt2, 0.0, kInvSqrt2, 0.0});
  const StateVector out = apply_unitary(in, named_gate(Gate::CX), {0, 1});
  const StateVector bell = state({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  CHECK(pure_fidelity(out, bell) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_unitary validates targets") {
  const StateVector psi = StateVector::zero_state(2);
  CHECK_THROWS_AS(apply_unitary(psi, named_gate(Gate::CX), {0}), dimension_error);
  CHECK_THROWS_AS(apply_unitary(psi, named_gate(Gate::H), {5}), dimension_error);
  CHECK_THROWS_AS(apply_unitary(psi, named_gate(Gate::CX), {1, 1}), validation_error);
}

TEST_CASE("norm is preserved across long random gate sequences") {
  Rng rng(21);
  const Gate pool[] = {Gate::H, Gate::T, Gate::S, Gate::X, Gate::Y, Gate::Z, Gate::Tdg};
  StateVector psi = StateVector::zero_state(3);
  for (int step = 0; step < 200; ++step) {
    if (rng.uniform() < 0.25) {
      const int control = static_cast<int>(rng.next_u64() % 3);
      int target = static_cast<int>(rng.next_u64() % 3);
      if (target == control) target = (target + 1) % 3;
      psi = apply_unitary(psi, named_gate(Gate::CX), {control, target});
    } else {
      const Gate g = pool[rng.next_u64() % 7];
      psi = apply_unitary(psi, named_gate(g), {static_cast<int>(rng.next_u64() % 3)});
    }
  }
  CHECK(std::abs(psi.squared_norm() - 1.0) < 1e-9);
}

TEST_CASE("measurement on eigenstates is deterministic") {
  Rng rng(1);
  const auto [outcome, collapsed] =
      measure_qubit(StateVector::computational_state(1, 1), 0, rng);
  CHECK(outcome == 1);
  CHECK(collapsed.probability(1) == doctest::Approx(1.0));
}

TEST_CASE("measurement branch probabilities sum to one") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi(3, haar_random_amplitudes(8, rng));
    for (int q = 0; q < 3; ++q) {
      CHECK(std::abs(outcome_probability(psi, q, 0) + outcome_probability(psi, q, 1) - 1.0) <
            1e-10);
    }
  }
}

TEST_CASE("collapsing one side of a Bell pair pins the other") {
  const StateVector bell = state({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  const auto [p0, collapsed] = project_qubit(bell, 0, 0);
  CHECK(p0 == doctest::Approx(0.5));
  CHECK(collapsed.probability(0) == doctest::Approx(1.0));
}

TEST_CASE("projecting the shared ancilla reproduces the X-correction identity") {
  // Entangled three-qubit state (A, a, b) after Alice's CNOT, with
  // alpha = 0.6, beta = 0.8:
  //   (alpha|000> + alpha|011> + beta|110> + beta|101>)/sqrt2.
  const double alpha = 0.6, beta = 0.8, r = kInvSqrt2;
  const StateVector entangled =
      state({alpha * r, 0.0, 0.0, alpha * r, 0.0, beta * r, beta * r, 0.0});
  auto [p, projected] = project_qubit(entangled, 1, 1);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
  // Bob's X on qubit b restores alpha|0>_A|0>_b + beta|1>_A|1>_b.
  const StateVector corrected = apply_unitary(projected, named_gate(Gate::X), {2});
  const StateVector expected =
      state({0.0, 0.0, alpha, 0.0, 0.0, 0.0, 0.0, beta});  // |A a b> with a = 1
  CHECK(pure_fidelity(corrected, expected) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_ideal executes trivial and feed-forward circuits") {
  const Circuit empty(3);
  CHECK(pure_fidelity(run_ideal(empty, 0).state, StateVector::zero_state(3)) ==
        doctest::Approx(1.0));

  // H then measure: both outcomes occur across seeds.
  Circuit hm(1, 1);
  hm.add_gate(Gate::H, {0});
  hm.add_measure(0, 0);
  bool saw0 = false, saw1 = false;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto result = run_ideal(hm, seed);
    (result.cbits[0] ? saw1 : saw0) = true;
  }
  CHECK(saw0);
  CHECK(saw1);

  // Feed-forward: the conditional X keeps both cbits equal on every branch.
  Circuit ff(2, 2);
  ff.add_gate(Gate::H, {0});
  ff.add_measure(0, 0);
  ff.add_conditional(Gate::X, {1}, 0, 1);
  ff.add_measure(1, 1);
  for (const auto& branch : enumerate_branches(ff)) {
    CHECK(branch.cbits[0] == branch.cbits[1]);
    CHECK(branch.probability == doctest::Approx(0.5));
  }
}

TEST_CASE("branch enumeration weights always sum to one") {
  Rng rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    Circuit c(2, 2);
    c.add_gate(Gate::H, {0});
    c.add_gate(Gate::T, {0});
    c.add_gate(Gate::CX, {0, 1});
    c.add_gate(rng.uniform() < 0.5 ? Gate::H : Gate::S, {1});
    c.add_measure(0, 0);
    c.add_measure(1, 1);
    double total = 0.0;
    for (const auto& branch : enumerate_branches(c)) total += branch.probability;
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("sample_histogram is exact on deterministic circuits") {
  Circuit c(2, 2);
  c.add_gate(Gate::X, {0});
  c.add_gate(Gate::X, {1});
  c.add_measure(0, 0);
  c.add_measure(1, 1);
  const Histogram h = sample_histogram(c, 1024, 7);
  h.validate();
  CHECK(h.counts.at("11") == 1024);
  CHECK(h.counts.size() == 1);
}

TEST_CASE("sample_histogram enforces the shot window") {
  Circuit c(1, 1);
  c.add_measure(0, 0);
  CHECK_THROWS_AS(sample_histogram(c, 0, 1), validation_error);
  CHECK_THROWS_AS(sample_histogram(c, 9000, 1), validation_error);
  CHECK_NOTHROW(sample_histogram(c, 9000, 1, {}, 16384));  // cap override
  Circuit no_cbits(1, 0);
  CHECK_THROWS_AS(sample_histogram(no_cbits, 16, 1), validation_error);
}

TEST_CASE("identical (circuit, shots, seed) gives bit-identical histograms") {
  Circuit c(2, 2);
  c.add_gate(Gate::H, {0});
  c.add_gate(Gate::CX, {0, 1});
  c.add_gate(Gate::T, {1});
  c.add_gate(Gate::H, {1});
  c.add_measure(0, 0);
  c.add_measure(1, 1);
  const Histogram a = sample_histogram(c, 2048, 123);
  const Histogram b = sample_histogram(c, 2048, 123);
  CHECK(a == b);
  const Histogram other = sample_histogram(c, 2048, 124);
  CHECK(a.counts != other.counts);
}

TEST_CASE("density-matrix unitaries match the state-vector path") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi(2, haar_random_amplitudes(4, rng));
    const GateMatrix u(2, haar_random_unitary(4, rng));
    const StateVector sv_out = apply_unitary(psi, u, {0, 1});
    const DensityMatrix dm_out = apply_unitary(psi.to_density_matrix(), u, {0, 1});
    CHECK(max_diff(dm_out.matrix(), sv_out.to_density_matrix().matrix()) < 1e-12);
  }
}

TEST_CASE("apply_channel validates CPTP and preserves trace") {
  const DensityMatrix rho = DensityMatrix::zero_state(1);
  // Identity channel.
  const auto id = std::vector<cmatrix_t>{pauli(0)};
  CHECK(max_diff(apply_channel(rho, id, {0}).matrix(), rho.matrix()) == 0.0);
  // A non-CPTP set is rejected.
  CHECK_THROWS_AS(apply_channel(rho, std::vector<cmatrix_t>{0.5 * pauli(0)}, {0}),
                  validation_error);

  Rng rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi(2, haar_random_amplitudes(4, rng));
    const auto channel = depolarizing_kraus(0.3, 1);
    const DensityMatrix out = apply_channel(psi.to_density_matrix(), channel, {1});
    CHECK(std::abs(out.trace() - 1.0) < 1e-9);
  }
}

TEST_CASE("uniform-Pauli depolarizing mixes |0><0| to I/2") {
  // The Kraus-form parameter for complete mixing is p = 3/4: the set
  // becomes {I/2, X/2, Y/2, Z/2} and (rho + X rho X + Y rho Y + Z rho Z)/4
  // equals Tr(rho) I/2.
  const DensityMatrix out =
      apply_channel(DensityMatrix::zero_state(1), depolarizing_kraus(0.75, 1), {0});
  CHECK(max_diff(out.matrix(), 0.5 * cmatrix_t::Identity(2, 2)) < 1e-12);
}

TEST_CASE("p=1 depolarizing is the uniform non-identity Pauli mix") {
  Rng rng(4);
  const StateVector psi(1, haar_random_amplitudes(2, rng));
  const DensityMatrix rho = psi.to_density_matrix();
  const DensityMatrix out = apply_channel(rho, depolarizing_kraus(1.0, 1), {0});
  cmatrix_t expected = cmatrix_t::Zero(2, 2);
  for (int i = 1; i < 4; ++i) expected += pauli(i) * rho.matrix() * pauli(i) / 3.0;
  CHECK(max_diff(out.matrix(), expected) < 1e-12);
}

TEST_CASE("long relaxation decays |1><1| to the ground state") {
  const DensityMatrix excited = DensityMatrix::from_state(StateVector::computational_state(1, 1));
  const auto channel = relaxation_kraus(1.0, 1.5, 30000.0);  // t = 30 T1
  const DensityMatrix out = apply_channel(excited, channel, {0});
  CHECK(max_diff(out.matrix(), DensityMatrix::zero_state(1).matrix()) < 1e-6);
}

TEST_CASE("density-matrix projection matches Born probabilities") {
  Rng rng(6);
  const StateVector psi(2, haar_random_amplitudes(4, rng));
  const auto [p_sv, sv_proj] = project_qubit(psi, 0, 1);
  const auto [p_dm, dm_proj] = project_qubit(psi.to_density_matrix(), 0, 1);
  CHECK(p_dm == doctest::Approx(p_sv).epsilon(1e-12));
  CHECK(max_diff(dm_proj.matrix(), sv_proj.to_density_matrix().matrix()) < 1e-12);
}
