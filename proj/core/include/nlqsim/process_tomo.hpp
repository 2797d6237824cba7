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

#include <array>
#include <functional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nlqsim/gates.hpp"
#include "nlqsim/state.hpp"
#include "nlqsim/state_tomo.hpp"

namespace nlq {

// Two-qubit process characterization from the 16 product inputs over
// {H, V, D, R} = {|0>, |1>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2}. Each output
// is state-tomographed, mapped into the matrix-unit basis by M^-1, arranged
// into the 16x16 block matrix B, and folded into chi = K^T B K with
// K = P Lambda, P = I ⊗ (SWAP) ⊗ I and Lambda = ((Z⊗I + X⊗X)/2)^{⊗2}.
//
// Index conventions, fixed across the module:
//   input index  = 4 * (first-qubit label) + (second-qubit label),
//                  labels ordered H, V, D, R;
//   jk index     = 4 * (j - 1) + (k - 1) for the matrix unit |j><k|, j,k in
//                  1..4 over the two-qubit computational basis.

enum class InputLabel { H, V, D, R };

char input_label_char(InputLabel l);

/// Single-qubit ket for a label.
StateVector input_ket(InputLabel l);

/// Preparation circuit from |0>: H -> (nothing), V -> X, D -> H, R -> H, S.
Circuit input_prep_circuit(InputLabel l);

/// The two labels at an input index (0..15).
std::array<InputLabel, 2> input_pair(int index);

/// Two-qubit product input state at an index.
StateVector input_state(int index);

/// M with M[input][jk] = (rho^{input})_{jk}: expresses every input density
/// matrix over the matrix units. Built numerically from the definitions.
cmatrix_t build_m_matrix();
cmatrix_t build_m_inverse();

/// eps(rho^{jk}) = sum_inputs (M^-1)[jk][input] * eps(rho^{input}). The
/// results are generally neither Hermitian nor trace-1.
std::array<cmatrix_t, 16> map_to_jk(const std::array<cmatrix_t, 16>& outputs);

/// The fixed fold matrix K = P Lambda (16x16) used by chi_from_blocks.
const cmatrix_t& chi_basis_change();

/// chi of a two-qubit operation in the fixed operator basis.
struct ProcessMatrix {
  cmatrix_t chi;  // 16x16

  double trace() const { return chi.trace().real(); }
  bool is_hermitian(double tol = 1e-9) const;
  bool is_positive_semidefinite(double tol = kPsdTolerance) const;
};

/// chi = K^T B K from the 16 mapped blocks in jk order.
ProcessMatrix chi_from_blocks(const std::array<cmatrix_t, 16>& eps_jk);

/// Full assembly from measured outputs in input-index order.
ProcessMatrix chi_from_outputs(const std::array<DensityMatrix, 16>& outputs);

//===========================================================================
// Operator-basis convention
//===========================================================================

// The basis chi indexes is {I, X, -iY, Z} ⊗ {I, X, -iY, Z} in row-major
// order; pushing each Pauli product through the analytic pipeline lands its
// unit weight on the diagonal position below (regression-tested).

/// "II", "IX", "IY", "IZ", "XI", ... (the -i on Y is implicit).
const std::array<std::string, 16>& chi_basis_labels();

/// Basis element E_m (4x4).
cmatrix_t chi_basis_element(int m);

/// Coefficients c with U = sum_m c_m E_m (c_m = Tr(E_m^dag U) / 4).
cvector_t operator_coefficients(const cmatrix_t& u);

/// Rank-1 chi of a unitary: the outer product c c^dag. The oracle the
/// pipeline is verified against.
ProcessMatrix chi_of_unitary(const cmatrix_t& u);

//===========================================================================
// Acquisition
//===========================================================================

/// A two-qubit operation as a density-matrix map.
using AnalyticChannel = std::function<DensityMatrix(const DensityMatrix&)>;

/// Exact pipeline: apply the channel to each input, tomograph with exact
/// probabilities, reconstruct.
std::array<DensityMatrix, 16> acquire_outputs(const AnalyticChannel& channel);

/// Unitary convenience wrapper.
std::array<DensityMatrix, 16> acquire_outputs(const GateMatrix& u);

/// Sampled pipeline: the source yields measured counts per (input index,
/// basis setting); each output is reconstructed by linear inversion and
/// optionally repaired to the nearest physical state.
using SampledSource = std::function<Histogram(int input_index, const BasisSetting& setting)>;
std::array<DensityMatrix, 16> acquire_outputs_sampled(const SampledSource& source,
                                                      bool project = false);

//===========================================================================
// Fidelities
//===========================================================================

/// Overlap form Re Tr(chi_t chi_e); exact process fidelity when the target
/// is a pure (rank-1) trace-preserving chi. Both inputs trace-normalized.
double process_fidelity(const ProcessMatrix& chi_t, const ProcessMatrix& chi_e);

/// General Uhlmann form (Tr sqrt(sqrt(chi_e) chi_t sqrt(chi_e)))^2.
double process_fidelity_general(const ProcessMatrix& chi_t, const ProcessMatrix& chi_e);

/// Average gate fidelity (d * F_p + 1) / (d + 1), d = 2^N.
double average_gate_fidelity(double process_fid, int d);

//===========================================================================
// Result record
//===========================================================================

struct ProcessTomographyResult {
  ProcessMatrix chi;
  double process_fid = 0.0;       // against the chosen target
  double avg_gate_fidelity = 0.0;

  bool operator==(const ProcessTomographyResult& other) const;
};

/// JSON form: {"chi": {"re": 16x16, "im": 16x16}, "trace": t,
/// "process_fidelity": f, "avg_gate_fidelity": g}.
nlohmann::json process_tomography_result_to_json(const ProcessTomographyResult& r);
ProcessTomographyResult process_tomography_result_from_json(const nlohmann::json& j);

/// One part of chi as CSV with operator-basis labels.
std::string chi_part_csv(const ProcessMatrix& chi, bool imaginary_part);

}  // namespace nlq
