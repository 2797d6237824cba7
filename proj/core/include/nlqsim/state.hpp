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

#include <vector>

#include "nlqsim/types.hpp"

namespace nlq {

class DensityMatrix;

/// Pure state of an n-qubit register as 2^n complex amplitudes. Immutable
/// value type; construction checks length and normalization.
class StateVector {
 public:
  StateVector(int n_qubits, cvector_t amplitudes);

  static StateVector zero_state(int n_qubits);
  static StateVector computational_state(int n_qubits, std::size_t index);

  int num_qubits() const { return n_qubits_; }
  const cvector_t& amplitudes() const { return amps_; }
  cplx_t amplitude(std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

  /// Born probability of the basis state `index`.
  double probability(std::size_t index) const;

  double squared_norm() const { return amps_.squaredNorm(); }

  /// <this|other>.
  cplx_t inner_product(const StateVector& other) const;

  /// this ⊗ other; `this` supplies the more significant qubits.
  StateVector tensor(const StateVector& other) const;

  DensityMatrix to_density_matrix() const;

 private:
  int n_qubits_;
  cvector_t amps_;
};

/// Mixed state of an n-qubit register. Construction enforces Hermiticity and
/// unit trace; positivity is only *flagged* (linear-inversion tomography
/// legitimately produces slightly non-PSD matrices).
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, cmatrix_t entries);

  static DensityMatrix from_state(const StateVector& psi);
  static DensityMatrix zero_state(int n_qubits);
  static DensityMatrix maximally_mixed(int n_qubits);

  int num_qubits() const { return n_qubits_; }
  const cmatrix_t& matrix() const { return rho_; }

  double trace() const { return rho_.trace().real(); }

  /// Tr(rho^2); 1 for pure states.
  double purity() const;

  /// Ascending eigenvalues (matrix is Hermitian by construction).
  Eigen::VectorXd eigenvalues() const;

  bool is_positive_semidefinite(double tol = kPsdTolerance) const;

  /// Reduced state over `keep`, in the listed qubit order.
  DensityMatrix partial_trace(const std::vector<int>& keep) const;

 private:
  int n_qubits_;
  cmatrix_t rho_;
};

}  // namespace nlq
