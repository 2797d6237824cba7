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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nlq {

using cplx_t = std::complex<double>;
using cvector_t = Eigen::VectorXcd;
using cmatrix_t = Eigen::MatrixXcd;

/// Register-size caps for the dense backends.
inline constexpr int kMaxStateVectorQubits = 20;
inline constexpr int kMaxDensityMatrixQubits = 10;

/// Default upper bound on shots per sampling call; callers may override.
inline constexpr int kDefaultShotCap = 8192;

// Shared numerical tolerances.
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;

/// An argument violates a documented precondition.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand dimensions or index ranges are inconsistent.
class dimension_error : public validation_error {
 public:
  using validation_error::validation_error;
};

/// A request exceeds what a backend supports (e.g. register size).
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structured input text could not be parsed.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol step was attempted out of order or across node ownership.
class protocol_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tomography data set is missing required measurement settings.
class incomplete_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension of an n-qubit register.
constexpr std::size_t dim_of(int n_qubits) {
  return std::size_t{1} << n_qubits;
}

// Qubit ordering convention, used by every module: the ket label
// |q0 q1 ... q(n-1)> reads left to right, and qubit 0 occupies the MOST
// significant bit of the amplitude index. So for two qubits the basis order
// is |00>, |01>, |10>, |11> and kron(a, b) places `a` on qubit 0.

/// Bit value of `qubit` inside basis-state `index`.
constexpr int bit_of(std::size_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & std::size_t{1});
}

/// `index` with the bit of `qubit` forced to `value`.
constexpr std::size_t with_bit(std::size_t index, int qubit, int n_qubits, int value) {
  const std::size_t mask = std::size_t{1} << (n_qubits - 1 - qubit);
  return value ? (index | mask) : (index & ~mask);
}

/// Basis-state label, qubit 0 first: bitstring_of(2, 2) == "10".
std::string bitstring_of(std::size_t index, int n_qubits);

/// Inverse of bitstring_of. Throws parse_error on non-binary input.
std::size_t index_of_bitstring(const std::string& bits);

}  // namespace nlq
