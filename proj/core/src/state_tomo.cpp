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

#include "nlqsim/state_tomo.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlqsim/simulator.hpp"

namespace nlq {

char basis_label(PauliBasis b) {
  switch (b) {
    case PauliBasis::X: return 'X';
    case PauliBasis::Y: return 'Y';
    case PauliBasis::Z: return 'Z';
  }
  return '?';
}

std::string BasisSetting::to_string() const {
  std::string out;
  for (PauliBasis b : bases) out.push_back(basis_label(b));
  return out;
}

BasisSetting BasisSetting::parse(std::string_view text) {
  BasisSetting setting;
  for (char c : text) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'X': setting.bases.push_back(PauliBasis::X); break;
      case 'Y': setting.bases.push_back(PauliBasis::Y); break;
      case 'Z': setting.bases.push_back(PauliBasis::Z); break;
      default:
        throw parse_error("basis setting: unknown label '" + std::string(1, c) + "'");
    }
  }
  if (setting.bases.empty()) throw parse_error("basis setting: empty");
  return setting;
}

std::vector<BasisSetting> all_settings(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) {
    throw validation_error("tomography supports 1 or 2 qubits");
  }
  const std::array<PauliBasis, 3> order{PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
  std::vector<BasisSetting> out;
  if (n_qubits == 1) {
    for (PauliBasis b : order) out.push_back(BasisSetting{{b}});
  } else {
    for (PauliBasis b1 : order) {
      for (PauliBasis b2 : order) out.push_back(BasisSetting{{b1, b2}});
    }
  }
  return out;
}

Circuit rotation_for(const BasisSetting& setting) {
  const int n = static_cast<int>(setting.bases.size());
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    switch (setting.bases[static_cast<std::size_t>(q)]) {
      case PauliBasis::X:
        c.add_gate(Gate::H, {q});
        break;
      case PauliBasis::Y:
        c.add_gate(Gate::Sdg, {q});
        c.add_gate(Gate::H, {q});
        break;
      case PauliBasis::Z:
        break;
    }
  }
  return c;
}

namespace {

void check_setting_size(int n_qubits, const BasisSetting& setting) {
  if (static_cast<int>(setting.bases.size()) != n_qubits) {
    throw dimension_error("setting \"" + setting.to_string() + "\" does not match register size");
  }
}

template <typename State>
State rotate_state(State state, const BasisSetting& setting) {
  const Circuit rot = rotation_for(setting);
  for (const auto& inst : rot.instructions()) {
    const auto& g = std::get<GateOp>(inst);
    state = apply_unitary(state, g.gate, g.targets);
  }
  return state;
}

}  // namespace

std::vector<double> setting_probabilities(const StateVector& state, const BasisSetting& setting) {
  check_setting_size(state.num_qubits(), setting);
  const StateVector rotated = rotate_state(state, setting);
  std::vector<double> out(dim_of(state.num_qubits()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rotated.probability(i);
  return out;
}

std::vector<double> setting_probabilities(const DensityMatrix& rho, const BasisSetting& setting) {
  check_setting_size(rho.num_qubits(), setting);
  const DensityMatrix rotated = rotate_state(rho, setting);
  std::vector<double> out(dim_of(rho.num_qubits()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rotated.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return out;
}

namespace {

template <typename State>
SettingProbabilities analytic_data(const State& state) {
  SettingProbabilities data;
  for (const auto& setting : all_settings(state.num_qubits())) {
    data[setting] = setting_probabilities(state, setting);
  }
  return data;
}

}  // namespace

SettingProbabilities analytic_tomography_data(const StateVector& state) {
  return analytic_data(state);
}

SettingProbabilities analytic_tomography_data(const DensityMatrix& rho) {
  return analytic_data(rho);
}

namespace {

const std::vector<double>& setting_or_throw(const SettingProbabilities& data,
                                            const BasisSetting& setting, std::size_t size) {
  const auto it = data.find(setting);
  if (it == data.end()) {
    throw incomplete_data_error("tomography data is missing setting \"" + setting.to_string() +
                                "\"");
  }
  const auto& probs = it->second;
  if (probs.size() != size) {
    throw dimension_error("setting \"" + setting.to_string() + "\" has " +
                          std::to_string(probs.size()) + " outcomes, expected " +
                          std::to_string(size));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw validation_error("negative probability in tomography data");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw validation_error("setting \"" + setting.to_string() +
                           "\" probabilities sum to " + std::to_string(sum));
  }
  return probs;
}

constexpr std::array<PauliBasis, 3> kBasisOrder{PauliBasis::X, PauliBasis::Y, PauliBasis::Z};

}  // namespace

TomographyCoefficients t_from_probabilities(const SettingProbabilities& data) {
  TomographyCoefficients out;
  // Joint correlators straight from the matching setting.
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const BasisSetting setting{{kBasisOrder[i - 1], kBasisOrder[j - 1]}};
      const auto& p = setting_or_throw(data, setting, 4);
      out.t(i, j) = p[0] - p[1] - p[2] + p[3];
    }
  }
  // Single-qubit terms: every setting that measures the relevant qubit in
  // the relevant basis qualifies; average over the other qubit's bases.
  double t00 = 0.0;
  for (int j = 1; j <= 3; ++j) {
    double acc = 0.0;
    for (const PauliBasis other : kBasisOrder) {
      const auto& p = setting_or_throw(data, BasisSetting{{other, kBasisOrder[j - 1]}}, 4);
      acc += p[0] - p[1] + p[2] - p[3];
    }
    out.t(0, j) = acc / 3.0;
  }
  for (int i = 1; i <= 3; ++i) {
    double acc = 0.0;
    for (const PauliBasis other : kBasisOrder) {
      const auto& p = setting_or_throw(data, BasisSetting{{kBasisOrder[i - 1], other}}, 4);
      acc += p[0] + p[1] - p[2] - p[3];
    }
    out.t(i, 0) = acc / 3.0;
  }
  for (const auto& [setting, p] : data) {
    (void)setting;
    t00 += p[0] + p[1] + p[2] + p[3];
  }
  out.t(0, 0) = t00 / static_cast<double>(data.size());
  return out;
}

namespace {

SettingProbabilities probabilities_from_counts(const SettingCounts& counts, int n_qubits) {
  SettingProbabilities data;
  for (const auto& [setting, histogram] : counts) {
    histogram.validate();
    if (histogram.shots == 0) {
      throw validation_error("setting \"" + setting.to_string() + "\" has zero shots");
    }
    std::vector<double> p(dim_of(n_qubits), 0.0);
    for (const auto& [outcome, count] : histogram.counts) {
      const std::size_t idx = index_of_bitstring(outcome);
      if (outcome.size() != static_cast<std::size_t>(n_qubits) || idx >= p.size()) {
        throw validation_error("setting \"" + setting.to_string() + "\" has outcome \"" + outcome +
                               "\" outside the register");
      }
      p[idx] = static_cast<double>(count) / static_cast<double>(histogram.shots);
    }
    data[setting] = std::move(p);
  }
  return data;
}

}  // namespace

TomographyCoefficients t_from_counts(const SettingCounts& counts) {
  return t_from_probabilities(probabilities_from_counts(counts, 2));
}

StokesVector stokes_from_probabilities(const SettingProbabilities& data) {
  StokesVector out;
  double s0 = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const auto& p = setting_or_throw(data, BasisSetting{{kBasisOrder[i - 1]}}, 2);
    out.s[static_cast<std::size_t>(i)] = p[0] - p[1];
    s0 += p[0] + p[1];
  }
  out.s[0] = s0 / 3.0;
  return out;
}

StokesVector stokes_from_counts(const SettingCounts& counts) {
  return stokes_from_probabilities(probabilities_from_counts(counts, 1));
}

DensityMatrix reconstruct(const TomographyCoefficients& coeffs) {
  cmatrix_t rho = cmatrix_t::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho += coeffs.t(i, j) * kron(pauli(i), pauli(j));
    }
  }
  rho /= 4.0;
  return DensityMatrix(2, std::move(rho));
}

DensityMatrix reconstruct(const StokesVector& stokes) {
  cmatrix_t rho = cmatrix_t::Zero(2, 2);
  for (int i = 0; i < 4; ++i) rho += stokes.s[static_cast<std::size_t>(i)] * pauli(i);
  rho /= 2.0;
  return DensityMatrix(1, std::move(rho));
}

DensityMatrix project_physical(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(rho.matrix());
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = std::max(0.0, lambda(i));
  const double total = lambda.sum();
  if (!(total > 0.0)) throw validation_error("project_physical: all eigenvalues non-positive");
  lambda /= total;
  const cmatrix_t& v = solver.eigenvectors();
  cmatrix_t repaired = v * lambda.asDiagonal() * v.adjoint();
  // Symmetrize away eigensolver round-off so the constructor's checks pass.
  repaired = 0.5 * (repaired + repaired.adjoint().eval());
  return DensityMatrix(rho.num_qubits(), std::move(repaired));
}

namespace {

cmatrix_t psd_sqrt(const cmatrix_t& m) {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(m);
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
  return solver.eigenvectors() * lambda.asDiagonal() * solver.eigenvectors().adjoint();
}

DensityMatrix ensure_physical(const DensityMatrix& rho) {
  return rho.is_positive_semidefinite() ? rho : project_physical(rho);
}

}  // namespace

double state_fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
  if (rho_t.num_qubits() != rho_e.num_qubits()) {
    throw dimension_error("state_fidelity: register sizes differ");
  }
  const DensityMatrix t = ensure_physical(rho_t);
  const DensityMatrix e = ensure_physical(rho_e);
  const cmatrix_t root = psd_sqrt(t.matrix());
  const cmatrix_t inner = root * e.matrix() * root;
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(0.5 * (inner + inner.adjoint().eval()),
                                                  Eigen::EigenvaluesOnly);
  // Eigenvalues that are zero up to round-off must not leak sqrt(eps) each
  // into the sum.
  const double cutoff = std::max(0.0, solver.eigenvalues().maxCoeff()) * 1e-13;
  double fidelity = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > cutoff) fidelity += std::sqrt(solver.eigenvalues()(i));
  }
  return std::clamp(fidelity, 0.0, 1.0);
}

double state_fidelity(const StateVector& psi_t, const DensityMatrix& rho_e) {
  if (psi_t.num_qubits() != rho_e.num_qubits()) {
    throw dimension_error("state_fidelity: register sizes differ");
  }
  const DensityMatrix e = ensure_physical(rho_e);
  const cplx_t overlap = (psi_t.amplitudes().adjoint() * e.matrix() * psi_t.amplitudes())(0);
  return std::clamp(std::sqrt(std::max(0.0, overlap.real())), 0.0, 1.0);
}

double statistical_fidelity(const std::vector<double>& p_exp, const std::vector<double>& p_th) {
  if (p_exp.size() != p_th.size()) {
    throw validation_error("statistical_fidelity: distribution lengths differ");
  }
  if (p_exp.empty()) throw validation_error("statistical_fidelity: empty distributions");
  double sum_exp = 0.0, sum_th = 0.0, coeff = 0.0;
  for (std::size_t i = 0; i < p_exp.size(); ++i) {
    if (p_exp[i] < -1e-12 || p_th[i] < -1e-12) {
      throw validation_error("statistical_fidelity: negative probability");
    }
    sum_exp += p_exp[i];
    sum_th += p_th[i];
    coeff += std::sqrt(std::max(0.0, p_exp[i]) * std::max(0.0, p_th[i]));
  }
  if (std::abs(sum_exp - 1.0) > 1e-6 || std::abs(sum_th - 1.0) > 1e-6) {
    throw validation_error("statistical_fidelity: distributions must sum to 1");
  }
  return std::clamp(coeff, 0.0, 1.0);
}

//===========================================================================
// Serialization
//===========================================================================

bool StateTomographyResult::operator==(const StateTomographyResult& other) const {
  return t.t == other.t.t && rho.matrix() == other.rho.matrix() && fidelity == other.fidelity &&
         projected == other.projected && rho.num_qubits() == other.rho.num_qubits();
}

namespace {

nlohmann::json real_grid(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd grid_to_real(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  if (static_cast<Eigen::Index>(j.size()) != rows) throw parse_error("matrix grid: wrong row count");
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw parse_error("matrix grid: wrong column count");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

nlohmann::json state_tomography_result_to_json(const StateTomographyResult& r) {
  return nlohmann::json{
      {"T", real_grid(r.t.t)},
      {"rho", {{"re", real_grid(r.rho.matrix().real())}, {"im", real_grid(r.rho.matrix().imag())}}},
      {"fidelity", r.fidelity},
      {"projected", r.projected},
  };
}

StateTomographyResult state_tomography_result_from_json(const nlohmann::json& j) {
  try {
    TomographyCoefficients t;
    t.t = grid_to_real(j.at("T"), 4, 4);
    const Eigen::MatrixXd re = grid_to_real(j.at("rho").at("re"), 4, 4);
    const Eigen::MatrixXd im = grid_to_real(j.at("rho").at("im"), 4, 4);
    cmatrix_t rho = re.cast<cplx_t>() + cplx_t(0.0, 1.0) * im.cast<cplx_t>();
    StateTomographyResult out{t, DensityMatrix(2, std::move(rho)), j.at("fidelity").get<double>(),
                              j.at("projected").get<bool>()};
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("tomography result JSON: ") + e.what());
  }
}

TomographyJob TomographyJob::full(int n_qubits, int shots) {
  TomographyJob job;
  for (const auto& setting : all_settings(n_qubits)) job.settings.emplace_back(setting, shots);
  return job;
}

nlohmann::json tomography_job_to_json(const TomographyJob& job) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [setting, shots] : job.settings) {
    out.push_back({{"basis", setting.to_string()}, {"shots", shots}});
  }
  return out;
}

TomographyJob tomography_job_from_json(const nlohmann::json& j) {
  TomographyJob job;
  try {
    for (const auto& item : j) {
      const BasisSetting setting = BasisSetting::parse(item.at("basis").get<std::string>());
      const int shots = item.at("shots").get<int>();
      if (shots < 1) throw validation_error("tomography job: shots must be >= 1");
      job.settings.emplace_back(setting, shots);
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("tomography job JSON: ") + e.what());
  }
  if (job.settings.empty()) throw parse_error("tomography job: no settings listed");
  return job;
}

std::string matrix_part_csv(const cmatrix_t& m, bool imaginary_part) {
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows()) ++n;
  std::ostringstream out;
  out.precision(17);
  out << "basis";
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    out << ',' << bitstring_of(static_cast<std::size_t>(c), n);
  }
  out << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << bitstring_of(static_cast<std::size_t>(r), n);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << ',' << (imaginary_part ? m(r, c).imag() : m(r, c).real());
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace nlq
