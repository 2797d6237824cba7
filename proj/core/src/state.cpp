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

#include "nlqsim/state.hpp"

#include <cmath>
#include <string>

namespace nlq {

namespace {

void check_register_size(int n_qubits, int cap, const char* what) {
  if (n_qubits < 1) {
    throw validation_error(std::string(what) + ": need at least one qubit");
  }
  if (n_qubits > cap) {
    throw capability_error(std::string(what) + ": " + std::to_string(n_qubits) +
                           " qubits exceeds the dense cap of " + std::to_string(cap));
  }
}

}  // namespace

StateVector::StateVector(int n_qubits, cvector_t amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_register_size(n_qubits_, kMaxStateVectorQubits, "StateVector");
  if (static_cast<std::size_t>(amps_.size()) != dim_of(n_qubits_)) {
    throw dimension_error("StateVector: expected " + std::to_string(dim_of(n_qubits_)) +
                          " amplitudes, got " + std::to_string(amps_.size()));
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
    throw validation_error("StateVector: squared norm " + std::to_string(amps_.squaredNorm()) +
                           " is not 1");
  }
}

StateVector StateVector::zero_state(int n_qubits) {
  return computational_state(n_qubits, 0);
}

StateVector StateVector::computational_state(int n_qubits, std::size_t index) {
  check_register_size(n_qubits, kMaxStateVectorQubits, "StateVector");
  if (index >= dim_of(n_qubits)) {
    throw dimension_error("computational_state: index out of range");
  }
  cvector_t amps = cvector_t::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double StateVector::probability(std::size_t index) const {
  return std::norm(amplitude(index));
}

cplx_t StateVector::inner_product(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw dimension_error("inner_product: qubit counts differ");
  }
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left side
}

StateVector StateVector::tensor(const StateVector& other) const {
  const auto da = amps_.size();
  const auto db = other.amps_.size();
  cvector_t out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = amps_(i) * other.amps_;
  }
  return StateVector(n_qubits_ + other.n_qubits_, std::move(out));
}

DensityMatrix StateVector::to_density_matrix() const {
  return DensityMatrix::from_state(*this);
}

DensityMatrix::DensityMatrix(int n_qubits, cmatrix_t entries)
    : n_qubits_(n_qubits), rho_(std::move(entries)) {
  check_register_size(n_qubits_, kMaxDensityMatrixQubits, "DensityMatrix");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits_));
  if (rho_.rows() != d || rho_.cols() != d) {
    throw dimension_error("DensityMatrix: expected a " + std::to_string(d) + "x" +
                          std::to_string(d) + " matrix");
  }
  const double herm_dev = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTolerance) {
    throw validation_error("DensityMatrix: not Hermitian (max deviation " +
                           std::to_string(herm_dev) + ")");
  }
  const cplx_t tr = rho_.trace();
  if (std::abs(tr - cplx_t(1.0, 0.0)) > kNormTolerance) {
    throw validation_error("DensityMatrix: trace is not 1");
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const cvector_t& a = psi.amplitudes();
  return DensityMatrix(psi.num_qubits(), a * a.adjoint());
}

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
  return from_state(StateVector::zero_state(n_qubits));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_register_size(n_qubits, kMaxDensityMatrixQubits, "DensityMatrix");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
  cmatrix_t rho = cmatrix_t::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(n_qubits, std::move(rho));
}

double DensityMatrix::purity() const {
  return (rho_ * rho_).trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
  return eigenvalues().minCoeff() >= -tol;
}

DensityMatrix DensityMatrix::partial_trace(const std::vector<int>& keep) const {
  if (keep.empty()) throw validation_error("partial_trace: keep list is empty");
  for (int q : keep) {
    if (q < 0 || q >= n_qubits_) throw dimension_error("partial_trace: qubit out of range");
  }
  std::vector<int> traced;
  for (int q = 0; q < n_qubits_; ++q) {
    bool kept = false;
    for (int k : keep) kept = kept || (k == q);
    if (!kept) traced.push_back(q);
  }
  const int n_keep = static_cast<int>(keep.size());
  if (n_keep + static_cast<int>(traced.size()) != n_qubits_) {
    throw validation_error("partial_trace: keep list has duplicates");
  }

  const auto dk = dim_of(n_keep);
  const auto dt = dim_of(static_cast<int>(traced.size()));
  cmatrix_t out = cmatrix_t::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      cplx_t sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        std::size_t row = 0, col = 0;
        for (int i = 0; i < n_keep; ++i) {
          row = with_bit(row, keep[static_cast<std::size_t>(i)], n_qubits_, bit_of(r, i, n_keep));
          col = with_bit(col, keep[static_cast<std::size_t>(i)], n_qubits_, bit_of(c, i, n_keep));
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
          const int b = bit_of(t, static_cast<int>(i), static_cast<int>(traced.size()));
          row = with_bit(row, traced[i], n_qubits_, b);
          col = with_bit(col, traced[i], n_qubits_, b);
        }
        sum += rho_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return DensityMatrix(n_keep, std::move(out));
}

}  // namespace nlq
