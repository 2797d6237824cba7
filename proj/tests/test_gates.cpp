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
#include <numbers>

#include "doctest.h"
#include "nlqsim/circuit.hpp"
#include "nlqsim/decompositions.hpp"
#include "nlqsim/gates.hpp"
#include "nlqsim/random.hpp"
#include "nlqsim/simulator.hpp"
#include "test_helpers.hpp"

using namespace nlq;
using namespace nlqtest;

namespace {

StateVector run_gates(const Circuit& c, StateVector psi) {
  for (const auto& inst : c.instructions()) {
    const auto& g = std::get<GateOp>(inst);
    psi = apply_unitary(psi, g.gate, g.targets);
  }
  return psi;
}

}  // namespace

TEST_CASE("named gates match their textbook entries exactly") {
  const cplx_t i{0.0, 1.0};
  const auto& s = named_gate(Gate::S).matrix();
  CHECK(s(0, 0) == cplx_t(1.0, 0.0));
  CHECK(s(1, 1) == i);
  const auto& t = named_gate(Gate::T).matrix();
  CHECK(std::abs(t(1, 1) - std::exp(i * (std::numbers::pi / 4.0))) == 0.0);
  const auto& y = named_gate(Gate::Y).matrix();
  CHECK(y(0, 1) == -i);
  CHECK(y(1, 0) == i);
  for (Gate g : {Gate::I, Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::S, Gate::Sdg, Gate::T,
                 Gate::Tdg, Gate::CX}) {
    const auto& m = named_gate(g).matrix();
    CHECK(max_diff(m.adjoint() * m, cmatrix_t::Identity(m.rows(), m.cols())) < 1e-14);
  }
}

TEST_CASE("gate_by_name is case-insensitive over the circuit-file gate set") {
  CHECK(gate_by_name("sdg") == Gate::Sdg);
  CHECK(gate_by_name("SDG") == Gate::Sdg);
  CHECK(gate_by_name("cx") == Gate::CX);
  CHECK(gate_by_name("tdg") == Gate::Tdg);
  CHECK_FALSE(gate_by_name("rx").has_value());
}

TEST_CASE("controlled() builds diag(I, U) with the control more significant") {
  CHECK(max_diff(controlled(named_gate(Gate::X)).matrix(), named_gate(Gate::CX).matrix()) == 0.0);
  CHECK(max_diff(controlled(named_gate(Gate::I)).matrix(), cmatrix_t::Identity(4, 4)) == 0.0);
  const auto ch = controlled(named_gate(Gate::H)).matrix();
  CHECK(std::abs(ch(2, 2) - cplx_t(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(ch(2, 3) - cplx_t(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(ch(3, 2) - cplx_t(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(ch(3, 3) - cplx_t(-kInvSqrt2, 0.0)) < 1e-15);
  CHECK(max_diff(ch.block(0, 0, 2, 2), cmatrix_t::Identity(2, 2)) == 0.0);
}

TEST_CASE("GateMatrix rejects non-unitary input") {
  cmatrix_t m(2, 2);
  m << 1.0, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(GateMatrix(1, m), validation_error);
  CHECK_THROWS_AS(GateMatrix(2, cmatrix_t::Identity(2, 2)), dimension_error);
}

TEST_CASE("phase_distance is zero exactly up to a global phase") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const cmatrix_t u = haar_random_unitary(4, rng);
    const cplx_t phase = std::exp(cplx_t(0.0, rng.uniform() * 6.28));
    CHECK(phase_distance(u, phase * u) < 1e-12);
    const cmatrix_t v = haar_random_unitary(4, rng);
    CHECK(phase_distance(u, v) > 1e-3);  // almost surely
  }
}

TEST_CASE("cz decomposition equals diag(1,1,1,-1)") {
  cmatrix_t target = cmatrix_t::Identity(4, 4);
  target(3, 3) = -1.0;
  const cmatrix_t got = circuit_unitary(cz_circuit());
  CHECK(max_diff(got, target) < 1e-12);
  // Same identity written as (I ⊗ H) CX (I ⊗ H).
  const cmatrix_t h = named_gate(Gate::H).matrix();
  const cmatrix_t ref = kron(pauli(0), h) * named_gate(Gate::CX).matrix() * kron(pauli(0), h);
  CHECK(max_diff(got, ref) < 1e-12);
}

TEST_CASE("ch decomposition equals controlled(H) with no residual phase") {
  // Independent oracle: multiply the embedded gate matrices by hand in
  // program order.
  const cmatrix_t i2 = pauli(0);
  auto on_target = [&](Gate g) { return kron(i2, named_gate(g).matrix()); };
  const cmatrix_t by_hand = on_target(Gate::S) * on_target(Gate::H) * on_target(Gate::T) *
                            named_gate(Gate::CX).matrix() * on_target(Gate::Tdg) *
                            on_target(Gate::H) * on_target(Gate::Sdg);
  const cmatrix_t got = circuit_unitary(ch_circuit());
  CHECK(max_diff(got, by_hand) < 1e-14);
  CHECK(phase_distance(got, controlled(named_gate(Gate::H)).matrix()) < 1e-12);
  // This particular decomposition lands on controlled(H) exactly.
  CHECK(max_diff(got, controlled(named_gate(Gate::H)).matrix()) < 1e-12);
}

TEST_CASE("ch circuit sends |10> to |1>(|0>+|1>)/sqrt2") {
  const StateVector out = run_gates(ch_circuit(), StateVector::computational_state(2, 2));
  const StateVector expected = state({0.0, 0.0, kInvSqrt2, kInvSqrt2});
  CHECK(pure_fidelity(out, expected) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("input preparations reproduce the fixed experiment amplitudes") {
  const cplx_t i{0.0, 1.0};
  const cplx_t omega = std::exp(i * (std::numbers::pi / 4.0));

  const StateVector alice = run_gates(prepare_alice(), StateVector::zero_state(1));
  CHECK(std::abs(alice.amplitude(0) - (1.0 + omega) / 2.0) < 1e-12);
  CHECK(std::abs(alice.amplitude(1) - (1.0 - omega) / 2.0) < 1e-12);
  CHECK(alice.probability(0) == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-12));
  CHECK(alice.probability(1) == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-12));

  const StateVector bob = run_gates(prepare_bob(), StateVector::zero_state(1));
  CHECK(std::abs(bob.amplitude(0) - (1.0 + i * omega) / 2.0) < 1e-12);
  CHECK(std::abs(bob.amplitude(1) - (1.0 - i * omega) / 2.0) < 1e-12);
  // |1 + i e^{i pi/4}|^2 = 2 - sqrt(2).
  CHECK(bob.probability(0) == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-12));
  CHECK(bob.probability(1) == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-12));
}

TEST_CASE("joint preparation gives the four fixed input amplitudes") {
  const double r = 1.0 / (2.0 * std::sqrt(2.0));
  const cplx_t i{0.0, 1.0};
  const StateVector alice = run_gates(prepare_alice(), StateVector::zero_state(1));
  const StateVector bob = run_gates(prepare_bob(), StateVector::zero_state(1));
  const StateVector joint = alice.tensor(bob);
  CHECK(std::abs(joint.amplitude(0) - i * r) < 1e-12);
  CHECK(std::abs(joint.amplitude(1) - cplx_t((std::sqrt(2.0) + 1.0) * r, 0.0)) < 1e-12);
  CHECK(std::abs(joint.amplitude(2) - cplx_t((std::sqrt(2.0) - 1.0) * r, 0.0)) < 1e-12);
  CHECK(std::abs(joint.amplitude(3) + i * r) < 1e-12);
}

TEST_CASE("state_preparation_gate maps |0> to the requested state") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const cvector_t target = haar_random_amplitudes(2, rng);
    const GateMatrix prep = state_preparation_gate(target);
    const StateVector got = apply_unitary(StateVector::zero_state(1), prep, {0});
    CHECK(max_diff(got.amplitudes(), target) < 1e-12);
  }
}
