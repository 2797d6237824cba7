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
#include <compare>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlqsim/circuit.hpp"
#include "nlqsim/histogram.hpp"
#include "nlqsim/state.hpp"

namespace nlq {

// Reconstruction is linear inversion over basis-rotated computational
// measurements: 3 settings for one qubit, 9 for two. Exact probabilities
// reproduce the state exactly; sampled counts can leave the matrix slightly
// non-PSD, which is flagged and optionally repaired.

enum class PauliBasis { X = 1, Y = 2, Z = 3 };

char basis_label(PauliBasis b);

/// One measurement setting: a basis label per measured qubit.
struct BasisSetting {
  std::vector<PauliBasis> bases;

  std::string to_string() const;                     // e.g. "XZ"
  static BasisSetting parse(std::string_view text);  // case-insensitive

  auto operator<=>(const BasisSetting&) const = default;
};

/// The full 3^n setting set in deterministic (X < Y < Z lexicographic) order.
std::vector<BasisSetting> all_settings(int n_qubits);

/// Pre-measurement rotation: X appends H, Y appends S-dagger then H, Z
/// nothing. Measuring the rotated state in the computational basis realizes
/// the requested Pauli basis.
Circuit rotation_for(const BasisSetting& setting);

/// Exact outcome probabilities of measuring `state` in `setting`
/// (length 2^n, index order per the register convention).
std::vector<double> setting_probabilities(const StateVector& state, const BasisSetting& setting);
std::vector<double> setting_probabilities(const DensityMatrix& rho, const BasisSetting& setting);

using SettingProbabilities = std::map<BasisSetting, std::vector<double>>;
using SettingCounts = std::map<BasisSetting, Histogram>;

/// Exact probabilities for every setting of the state's size.
SettingProbabilities analytic_tomography_data(const StateVector& state);
SettingProbabilities analytic_tomography_data(const DensityMatrix& rho);

/// Per-qubit expectation values (S0 = 1, S1..S3 = <X>, <Y>, <Z>).
struct StokesVector {
  std::array<double, 4> s{1.0, 0.0, 0.0, 0.0};
};

/// Two-qubit Pauli correlation array T[i1][i2], i in {I, X, Y, Z}.
struct TomographyCoefficients {
  Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
};

/// Assembles T from the 9 two-qubit settings:
///   T[i][j]   (i,j >= 1) = P00 - P01 - P10 + P11 in setting (i, j);
///   T[0][j]   = P00 - P01 + P10 - P11, averaged over the first-qubit basis;
///   T[i][0]   = P00 + P01 - P10 - P11, averaged over the second-qubit basis;
///   T[0][0]   = sum of probabilities (1 for normalized data).
/// A missing setting raises incomplete_data_error naming it.
TomographyCoefficients t_from_probabilities(const SettingProbabilities& data);
TomographyCoefficients t_from_counts(const SettingCounts& counts);

/// Single-qubit Stokes parameters from the 3 settings.
StokesVector stokes_from_probabilities(const SettingProbabilities& data);
StokesVector stokes_from_counts(const SettingCounts& counts);

/// Linear inversion: rho = (1/4) sum T[i][j] sigma_i ⊗ sigma_j. Hermitian and
/// trace-1 by construction; PSD is not guaranteed.
DensityMatrix reconstruct(const TomographyCoefficients& t);
DensityMatrix reconstruct(const StokesVector& s);

/// Nearest physical repair by eigenvalue clipping and trace renormalization;
/// idempotent on already-physical input.
DensityMatrix project_physical(const DensityMatrix& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)), clamped to
/// [0, 1]. Non-PSD inputs are projected physical first.
double state_fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e);

/// Pure-target shortcut sqrt(<psi|rho_e|psi>).
double state_fidelity(const StateVector& psi_t, const DensityMatrix& rho_e);

/// Bhattacharyya coefficient sum sqrt(p_i q_i) of two outcome distributions
/// of equal length (each summing to 1 within 1e-6).
double statistical_fidelity(const std::vector<double>& p_exp, const std::vector<double>& p_th);

//===========================================================================
// Result record
//===========================================================================

struct StateTomographyResult {
  TomographyCoefficients t;
  DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  double fidelity = 0.0;  // against the chosen target state
  bool projected = false;

  bool operator==(const StateTomographyResult&) const;
};

/// JSON form: {"T": 4x4, "rho": {"re": 4x4, "im": 4x4}, "fidelity": f,
/// "projected": bool}.
nlohmann::json state_tomography_result_to_json(const StateTomographyResult& r);
StateTomographyResult state_tomography_result_from_json(const nlohmann::json& j);

/// One part of a complex matrix as a labeled CSV grid (for bar-chart
/// plotting).
std::string matrix_part_csv(const cmatrix_t& m, bool imaginary_part);

/// Acquisition plan: which settings to measure and with how many shots.
/// JSON form: [{"basis": "XZ", "shots": 8192}, ...].
struct TomographyJob {
  std::vector<std::pair<BasisSetting, int>> settings;

  /// All 3^n settings at a uniform shot count.
  static TomographyJob full(int n_qubits, int shots);

  bool operator==(const TomographyJob&) const = default;
};

nlohmann::json tomography_job_to_json(const TomographyJob& job);
TomographyJob tomography_job_from_json(const nlohmann::json& j);

}  // namespace nlq
