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

#include <optional>
#include <string>
#include <string_view>

#include "nlqsim/types.hpp"

namespace nlq {

/// Unitary acting on 1 or 2 qubits. Construction checks unitarity. For
/// two-qubit gates the first target qubit indexes the more significant bit of
/// the matrix, matching the register convention.
class GateMatrix {
 public:
  GateMatrix(int arity, cmatrix_t entries);

  int arity() const { return arity_; }
  const cmatrix_t& matrix() const { return u_; }

 private:
  int arity_;
  cmatrix_t u_;
};

/// The gate set available in circuit files.
enum class Gate { I, X, Y, Z, H, S, Sdg, T, Tdg, CX };

const GateMatrix& named_gate(Gate g);
std::string_view gate_name(Gate g);
int gate_arity(Gate g);

/// Case-insensitive lookup of I, X, Y, Z, H, S, SDG, T, TDG, CX.
std::optional<Gate> gate_by_name(std::string_view name);

/// Pauli matrix sigma_i for i in 0..3 (I, X, Y, Z).
const cmatrix_t& pauli(int i);

cmatrix_t kron(const cmatrix_t& a, const cmatrix_t& b);

/// controlled(U) = diag(I, U); the control is the first (more significant)
/// qubit.
GateMatrix controlled(const GateMatrix& u);

/// Frobenius distance min over phi of ||a - e^{i phi} b||_F. Zero iff the
/// matrices agree up to a global phase.
double phase_distance(const cmatrix_t& a, const cmatrix_t& b);

/// 2x2 unitary sending |0> to the given single-qubit state.
GateMatrix state_preparation_gate(const cvector_t& target_amplitudes);

}  // namespace nlq
