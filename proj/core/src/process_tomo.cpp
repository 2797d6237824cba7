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

#include "nlqsim/process_tomo.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlqsim/simulator.hpp"

namespace nlq {

namespace {

constexpr cplx_t kI{0.0, 1.0};

}  // namespace

char input_label_char(InputLabel l) {
  switch (l) {
    case InputLabel::H: return 'H';
    case InputLabel::V: return 'V';
    case InputLabel::D: return 'D';
    case InputLabel::R: return 'R';
  }
  return '?';
}

StateVector input_ket(InputLabel l) {
  cvector_t amps(2);
  const double invsqrt2 = 1.0 / std::sqrt(2.0);
  switch (l) {
    case InputLabel::H: amps << 1.0, 0.0; break;
    case InputLabel::V: amps << 0.0, 1.0; break;
    case InputLabel::D: amps << invsqrt2, invsqrt2; break;
    case InputLabel::R: amps << invsqrt2, kI * invsqrt2; break;
  }
  return StateVector(1, std::move(amps));
}

Circuit input_prep_circuit(InputLabel l) {
  Circuit c(1);
  switch (l) {
    case InputLabel::H: break;
    case InputLabel::V: c.add_gate(Gate::X, {0}); break;
    case InputLabel::D: c.add_gate(Gate::H, {0}); break;
    case InputLabel::R:
      c.add_gate(Gate::H, {0});
      c.add_gate(Gate::S, {0});
      break;
  }
  return c;
}

std::array<InputLabel, 2> input_pair(int index) {
  if (index < 0 || index > 15) throw validation_error("input index must lie in 0..15");
  const std::array<InputLabel, 4> order{InputLabel::H, InputLabel::V, InputLabel::D,
                                        InputLabel::R};
  return {order[static_cast<std::size_t>(index / 4)],
          order[static_cast<std::size_t>(index % 4)]};
}

StateVector input_state(int index) {
  const auto [first, second] = input_pair(index);
  return input_ket(first).tensor(input_ket(second));
}

cmatrix_t build_m_matrix() {
  cmatrix_t m(16, 16);
  for (int input = 0; input < 16; ++input) {
    const StateVector psi = input_state(input);
    const cmatrix_t rho = psi.amplitudes() * psi.amplitudes().adjoint();
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        m(input, 4 * j + k) = rho(j, k);
      }
    }
  }
  return m;
}

cmatrix_t build_m_inverse() {
  const cmatrix_t m = build_m_matrix();
  Eigen::FullPivLU<cmatrix_t> lu(m);
  if (!lu.isInvertible()) {
    throw std::runtime_error("process tomography: input-state matrix M is singular");
  }
  return lu.inverse();
}

std::array<cmatrix_t, 16> map_to_jk(const std::array<cmatrix_t, 16>& outputs) {
  static const cmatrix_t m_inv = build_m_inverse();
  for (const auto& out : outputs) {
    if (out.rows() != 4 || out.cols() != 4) {
      throw dimension_error("map_to_jk: outputs must be 4x4");
    }
  }
  std::array<cmatrix_t, 16> eps_jk;
  for (int jk = 0; jk < 16; ++jk) {
    cmatrix_t acc = cmatrix_t::Zero(4, 4);
    for (int input = 0; input < 16; ++input) {
      acc += m_inv(jk, input) * outputs[static_cast<std::size_t>(input)];
    }
    eps_jk[static_cast<std::size_t>(jk)] = std::move(acc);
  }
  return eps_jk;
}

bool ProcessMatrix::is_hermitian(double tol) const {
  return (chi - chi.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool ProcessMatrix::is_positive_semidefinite(double tol) const {
  const cmatrix_t sym = 0.5 * (chi + chi.adjoint());
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

namespace {

const cmatrix_t& k_matrix() {
  static const cmatrix_t k = [] {
    cmatrix_t swap = cmatrix_t::Zero(4, 4);
    swap(0, 0) = 1;
    swap(1, 2) = 1;
    swap(2, 1) = 1;
    swap(3, 3) = 1;
    const cmatrix_t p = kron(pauli(0), kron(swap, pauli(0)));
    const cmatrix_t lambda1 = 0.5 * (kron(pauli(3), pauli(0)) + kron(pauli(1), pauli(1)));
    const cmatrix_t lambda = kron(lambda1, lambda1);
    return cmatrix_t(p * lambda);
  }();
  return k;
}

}  // namespace

const cmatrix_t& chi_basis_change() {
  return k_matrix();
}

ProcessMatrix chi_from_blocks(const std::array<cmatrix_t, 16>& eps_jk) {
  cmatrix_t b = cmatrix_t::Zero(16, 16);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const auto& block = eps_jk[static_cast<std::size_t>(4 * j + k)];
      if (block.rows() != 4 || block.cols() != 4) {
        throw dimension_error("chi_from_blocks: blocks must be 4x4");
      }
      b.block(4 * j, 4 * k, 4, 4) = block;
    }
  }
  const cmatrix_t& k_mat = k_matrix();
  return ProcessMatrix{k_mat.transpose() * b * k_mat};
}

ProcessMatrix chi_from_outputs(const std::array<DensityMatrix, 16>& outputs) {
  std::array<cmatrix_t, 16> raw;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].num_qubits() != 2) {
      throw dimension_error("chi_from_outputs: outputs must be two-qubit states");
    }
    raw[i] = outputs[i].matrix();
  }
  return chi_from_blocks(map_to_jk(raw));
}

//===========================================================================
// Operator-basis convention
//===========================================================================

const std::array<std::string, 16>& chi_basis_labels() {
  static const std::array<std::string, 16> labels = [] {
    const std::array<char, 4> p{'I', 'X', 'Y', 'Z'};
    std::array<std::string, 16> out;
    for (int m = 0; m < 16; ++m) {
      out[static_cast<std::size_t>(m)] = {p[static_cast<std::size_t>(m / 4)],
                                          p[static_cast<std::size_t>(m % 4)]};
    }
    return out;
  }();
  return labels;
}

namespace {

cmatrix_t single_basis_element(int i) {
  // {I, X, -iY, Z}.
  if (i == 2) return -kI * pauli(2);
  return pauli(i);
}

}  // namespace

cmatrix_t chi_basis_element(int m) {
  if (m < 0 || m > 15) throw validation_error("chi basis index must lie in 0..15");
  return kron(single_basis_element(m / 4), single_basis_element(m % 4));
}

cvector_t operator_coefficients(const cmatrix_t& u) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw dimension_error("operator_coefficients: expected a 4x4 matrix");
  }
  cvector_t c(16);
  for (int m = 0; m < 16; ++m) {
    c(m) = (chi_basis_element(m).adjoint() * u).trace() / 4.0;
  }
  return c;
}

ProcessMatrix chi_of_unitary(const cmatrix_t& u) {
  const cvector_t c = operator_coefficients(u);
  return ProcessMatrix{c * c.adjoint()};
}

//===========================================================================
// Acquisition
//===========================================================================

std::array<DensityMatrix, 16> acquire_outputs(const AnalyticChannel& channel) {
  std::array<DensityMatrix, 16> outputs{
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2)};
  for (int input = 0; input < 16; ++input) {
    const DensityMatrix out = channel(input_state(input).to_density_matrix());
    if (out.num_qubits() != 2) {
      throw dimension_error("acquire_outputs: channel must return two-qubit states");
    }
    // Tomograph with exact probabilities rather than taking the channel
    // output directly: the chi pipeline characterizes what tomography sees.
    outputs[static_cast<std::size_t>(input)] =
        reconstruct(t_from_probabilities(analytic_tomography_data(out)));
  }
  return outputs;
}

std::array<DensityMatrix, 16> acquire_outputs(const GateMatrix& u) {
  if (u.arity() != 2) throw validation_error("acquire_outputs: expected a two-qubit unitary");
  return acquire_outputs(
      [&u](const DensityMatrix& rho) { return apply_unitary(rho, u, {0, 1}); });
}

std::array<DensityMatrix, 16> acquire_outputs_sampled(const SampledSource& source, bool project) {
  std::array<DensityMatrix, 16> outputs{
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2), DensityMatrix::zero_state(2), DensityMatrix::zero_state(2),
      DensityMatrix::zero_state(2)};
  for (int input = 0; input < 16; ++input) {
    SettingCounts counts;
    for (const auto& setting : all_settings(2)) {
      counts[setting] = source(input, setting);
    }
    DensityMatrix rho = reconstruct(t_from_counts(counts));
    if (project) rho = project_physical(rho);
    outputs[static_cast<std::size_t>(input)] = std::move(rho);
  }
  return outputs;
}

//===========================================================================
// Fidelities
//===========================================================================

namespace {

void check_chi(const ProcessMatrix& chi, const char* what) {
  if (chi.chi.rows() != 16 || chi.chi.cols() != 16) {
    throw dimension_error(std::string(what) + ": chi must be 16x16");
  }
  if (std::abs(chi.trace() - 1.0) > 1e-6) {
    throw validation_error(std::string(what) + ": chi is not trace-normalized");
  }
}

cmatrix_t psd_sqrt(const cmatrix_t& m) {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(0.5 * (m + m.adjoint().eval()));
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
  return solver.eigenvectors() * lambda.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double process_fidelity(const ProcessMatrix& chi_t, const ProcessMatrix& chi_e) {
  check_chi(chi_t, "process_fidelity");
  check_chi(chi_e, "process_fidelity");
  return (chi_t.chi * chi_e.chi).trace().real();
}

double process_fidelity_general(const ProcessMatrix& chi_t, const ProcessMatrix& chi_e) {
  check_chi(chi_t, "process_fidelity_general");
  check_chi(chi_e, "process_fidelity_general");
  const cmatrix_t root = psd_sqrt(chi_e.chi);
  const cmatrix_t inner = root * chi_t.chi * root;
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(0.5 * (inner + inner.adjoint().eval()),
                                                  Eigen::EigenvaluesOnly);
  const double cutoff = std::max(0.0, solver.eigenvalues().maxCoeff()) * 1e-13;
  double tr = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > cutoff) tr += std::sqrt(solver.eigenvalues()(i));
  }
  return tr * tr;
}

double average_gate_fidelity(double process_fid, int d) {
  if (d < 2) throw validation_error("average_gate_fidelity: d must be >= 2");
  if (process_fid < -1e-9 || process_fid > 1.0 + 1e-9) {
    throw validation_error("average_gate_fidelity: process fidelity outside [0, 1]");
  }
  return (static_cast<double>(d) * process_fid + 1.0) / (static_cast<double>(d) + 1.0);
}

//===========================================================================
// Serialization
//===========================================================================

bool ProcessTomographyResult::operator==(const ProcessTomographyResult& other) const {
  return chi.chi == other.chi.chi && process_fid == other.process_fid &&
         avg_gate_fidelity == other.avg_gate_fidelity;
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

Eigen::MatrixXd grid_to_real(const nlohmann::json& j, Eigen::Index n) {
  Eigen::MatrixXd m(n, n);
  if (static_cast<Eigen::Index>(j.size()) != n) throw parse_error("chi grid: wrong row count");
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != n) throw parse_error("chi grid: wrong column count");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

nlohmann::json process_tomography_result_to_json(const ProcessTomographyResult& r) {
  return nlohmann::json{
      {"chi", {{"re", real_grid(r.chi.chi.real())}, {"im", real_grid(r.chi.chi.imag())}}},
      {"trace", r.chi.trace()},
      {"process_fidelity", r.process_fid},
      {"avg_gate_fidelity", r.avg_gate_fidelity},
  };
}

ProcessTomographyResult process_tomography_result_from_json(const nlohmann::json& j) {
  try {
    const Eigen::MatrixXd re = grid_to_real(j.at("chi").at("re"), 16);
    const Eigen::MatrixXd im = grid_to_real(j.at("chi").at("im"), 16);
    ProcessTomographyResult out{
        ProcessMatrix{re.cast<cplx_t>() + cplx_t(0.0, 1.0) * im.cast<cplx_t>()},
        j.at("process_fidelity").get<double>(), j.at("avg_gate_fidelity").get<double>()};
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("process tomography result JSON: ") + e.what());
  }
}

std::string chi_part_csv(const ProcessMatrix& chi, bool imaginary_part) {
  const auto& labels = chi_basis_labels();
  std::ostringstream out;
  out.precision(17);
  out << "basis";
  for (const auto& label : labels) out << ',' << label;
  out << "\n";
  for (int r = 0; r < 16; ++r) {
    out << labels[static_cast<std::size_t>(r)];
    for (int c = 0; c < 16; ++c) {
      out << ',' << (imaginary_part ? chi.chi(r, c).imag() : chi.chi(r, c).real());
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace nlq
