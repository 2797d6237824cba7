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
#include "nlqsim/random.hpp"
#include "nlqsim/state.hpp"
#include "test_helpers.hpp"

using namespace nlq;
using namespace nlqtest;

TEST_CASE("bitstring helpers follow the q0-most-significant convention") {
  CHECK(bitstring_of(2, 2) == "10");
  CHECK(bitstring_of(1, 2) == "01");
  CHECK(bitstring_of(5, 4) == "0101");
  CHECK(index_of_bitstring("10") == 2);
  CHECK(index_of_bitstring("0101") == 5);
  CHECK(bit_of(0b10, 0, 2) == 1);
  CHECK(bit_of(0b10, 1, 2) == 0);
  CHECK(with_bit(0b00, 0, 2, 1) == 0b10);
  CHECK_THROWS_AS(index_of_bitstring("102"), parse_error);
}

TEST_CASE("StateVector construction validates size and norm") {
  CHECK_THROWS_AS(StateVector(2, vec({1.0, 0.0})), dimension_error);
  CHECK_THROWS_AS(StateVector(1, vec({1.0, 1.0})), validation_error);
  CHECK_THROWS_AS(StateVector(25, cvector_t::Zero(1 << 25)), capability_error);
  const StateVector zero = StateVector::zero_state(3);
  CHECK(zero.probability(0) == 1.0);
  CHECK(zero.squared_norm() == doctest::Approx(1.0));
}

TEST_CASE("tensor places the left factor on the more significant qubit") {
  const StateVector one = StateVector::computational_state(1, 1);
  const StateVector zero = StateVector::zero_state(1);
  const StateVector ten = one.tensor(zero);
  CHECK(ten.probability(index_of_bitstring("10")) == doctest::Approx(1.0));
  const StateVector plus = state({kInvSqrt2, kInvSqrt2});
  const StateVector joint = plus.tensor(one);
  CHECK(joint.probability(index_of_bitstring("01")) == doctest::Approx(0.5));
  CHECK(joint.probability(index_of_bitstring("11")) == doctest::Approx(0.5));
}

TEST_CASE("purity oracle: pure states give Tr(rho^2) = 1") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi(2, haar_random_amplitudes(4, rng));
    CHECK(std::abs(psi.to_density_matrix().purity() - 1.0) < 1e-9);
  }
}

TEST_CASE("DensityMatrix construction enforces Hermiticity and trace") {
  cmatrix_t bad(2, 2);
  bad << 1.0, cplx_t(0.0, 0.5), 0.0, 0.0;
  CHECK_THROWS_AS(DensityMatrix(1, bad), validation_error);

  cmatrix_t off_trace = cmatrix_t::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(1, off_trace), validation_error);

  // Non-PSD but Hermitian trace-1 input is flagged, not rejected.
  cmatrix_t inversion_artifact(2, 2);
  inversion_artifact << 1.1, 0.0, 0.0, -0.1;
  const DensityMatrix flagged(1, inversion_artifact);
  CHECK_FALSE(flagged.is_positive_semidefinite());
  CHECK(flagged.trace() == doctest::Approx(1.0));
}

TEST_CASE("maximally mixed state has purity 1/d") {
  CHECK(DensityMatrix::maximally_mixed(1).purity() == doctest::Approx(0.5));
  CHECK(DensityMatrix::maximally_mixed(2).purity() == doctest::Approx(0.25));
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  const StateVector bell = state({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  const DensityMatrix rho = bell.to_density_matrix();
  CHECK(max_diff(rho.partial_trace({0}).matrix(), 0.5 * cmatrix_t::Identity(2, 2)) < 1e-12);
  CHECK(max_diff(rho.partial_trace({1}).matrix(), 0.5 * cmatrix_t::Identity(2, 2)) < 1e-12);
}

TEST_CASE("partial trace of a product state recovers the factors") {
  Rng rng(5);
  const StateVector a(1, haar_random_amplitudes(2, rng));
  const StateVector b(1, haar_random_amplitudes(2, rng));
  const DensityMatrix joint = a.tensor(b).to_density_matrix();
  CHECK(max_diff(joint.partial_trace({0}).matrix(), a.to_density_matrix().matrix()) < 1e-12);
  CHECK(max_diff(joint.partial_trace({1}).matrix(), b.to_density_matrix().matrix()) < 1e-12);
  // Keep order: listing qubit 1 first transposes the roles.
  const DensityMatrix swapped = b.tensor(a).to_density_matrix();
  CHECK(max_diff(joint.partial_trace({1, 0}).matrix(), swapped.matrix()) < 1e-12);
  CHECK_THROWS_AS(joint.partial_trace({0, 0}), validation_error);
  CHECK_THROWS_AS(joint.partial_trace({7}), dimension_error);
}

TEST_CASE("haar sampling is deterministic per seed and normalized") {
  Rng rng_a(42);
  Rng rng_b(42);
  const cvector_t v1 = haar_random_amplitudes(8, rng_a);
  const cvector_t v2 = haar_random_amplitudes(8, rng_b);
  CHECK(max_diff(v1, v2) == 0.0);
  CHECK(std::abs(v1.squaredNorm() - 1.0) < 1e-12);

  Rng rng_c(7);
  const cmatrix_t u = haar_random_unitary(4, rng_c);
  CHECK(max_diff(u.adjoint() * u, cmatrix_t::Identity(4, 4)) < 1e-12);
}
