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

#include "nlqsim/gates.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace nlq {

namespace {

constexpr cplx_t kI{0.0, 1.0};

cmatrix_t make2(cplx_t a, cplx_t b, cplx_t c, cplx_t d) {
  cmatrix_t m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

GateMatrix::GateMatrix(int arity, cmatrix_t entries) : arity_(arity), u_(std::move(entries)) {
  if (arity_ != 1 && arity_ != 2) {
    throw validation_error("GateMatrix: arity must be 1 or 2");
  }
  const auto d = static_cast<Eigen::Index>(dim_of(arity_));
  if (u_.rows() != d || u_.cols() != d) {
    throw dimension_error("GateMatrix: matrix does not match arity");
  }
  const double dev = (u_.adjoint() * u_ - cmatrix_t::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTolerance) {
    throw validation_error("GateMatrix: not unitary (max deviation " + std::to_string(dev) + ")");
  }
}

const cmatrix_t& pauli(int i) {
  static const cmatrix_t table[4] = {
      make2(1, 0, 0, 1),
      make2(0, 1, 1, 0),
      make2(0, -kI, kI, 0),
      make2(1, 0, 0, -1),
  };
  if (i < 0 || i > 3) throw validation_error("pauli: index must be in 0..3");
  return table[i];
}

const GateMatrix& named_gate(Gate g) {
  static const double invsqrt2 = 1.0 / std::numbers::sqrt2;
  static const cplx_t t_phase = std::exp(kI * (std::numbers::pi / 4.0));
  static const GateMatrix i1{1, pauli(0)};
  static const GateMatrix x{1, pauli(1)};
  static const GateMatrix y{1, pauli(2)};
  static const GateMatrix z{1, pauli(3)};
  static const GateMatrix h{1, make2(invsqrt2, invsqrt2, invsqrt2, -invsqrt2)};
  static const GateMatrix s{1, make2(1, 0, 0, kI)};
  static const GateMatrix sdg{1, make2(1, 0, 0, -kI)};
  static const GateMatrix t{1, make2(1, 0, 0, t_phase)};
  static const GateMatrix tdg{1, make2(1, 0, 0, std::conj(t_phase))};
  static const GateMatrix cx{2, [] {
                               cmatrix_t m = cmatrix_t::Zero(4, 4);
                               m(0, 0) = 1;
                               m(1, 1) = 1;
                               m(2, 3) = 1;
                               m(3, 2) = 1;
                               return m;
                             }()};
  switch (g) {
    case Gate::I: return i1;
    case Gate::X: return x;
    case Gate::Y: return y;
    case Gate::Z: return z;
    case Gate::H: return h;
    case Gate::S: return s;
    case Gate::Sdg: return sdg;
    case Gate::T: return t;
    case Gate::Tdg: return tdg;
    case Gate::CX: return cx;
  }
  throw validation_error("named_gate: unknown gate");
}

std::string_view gate_name(Gate g) {
  switch (g) {
    case Gate::I: return "I";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::Sdg: return "SDG";
    case Gate::T: return "T";
    case Gate::Tdg: return "TDG";
    case Gate::CX: return "CX";
  }
  return "?";
}

int gate_arity(Gate g) {
  return g == Gate::CX ? 2 : 1;
}

std::optional<Gate> gate_by_name(std::string_view name) {
  std::string upper;
  upper.reserve(name.size());
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "I") return Gate::I;
  if (upper == "X") return Gate::X;
  if (upper == "Y") return Gate::Y;
  if (upper == "Z") return Gate::Z;
  if (upper == "H") return Gate::H;
  if (upper == "S") return Gate::S;
  if (upper == "SDG") return Gate::Sdg;
  if (upper == "T") return Gate::T;
  if (upper == "TDG") return Gate::Tdg;
  if (upper == "CX" || upper == "CNOT") return Gate::CX;
  return std::nullopt;
}

cmatrix_t kron(const cmatrix_t& a, const cmatrix_t& b) {
  cmatrix_t out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

GateMatrix controlled(const GateMatrix& u) {
  if (u.arity() != 1) {
    throw validation_error("controlled: expected a single-qubit unitary");
  }
  cmatrix_t m = cmatrix_t::Identity(4, 4);
  m.block(2, 2, 2, 2) = u.matrix();
  return GateMatrix(2, std::move(m));
}

double phase_distance(const cmatrix_t& a, const cmatrix_t& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw dimension_error("phase_distance: shape mismatch");
  }
  // The optimal phase is arg Tr(b^dag a); forming the residual directly
  // avoids the cancellation a squared-norm expansion would hit near zero.
  const cplx_t overlap = (b.adjoint() * a).trace();
  const double mag = std::abs(overlap);
  const cplx_t phase = mag > 0.0 ? overlap / mag : cplx_t(1.0, 0.0);
  return (a - phase * b).norm();
}

GateMatrix state_preparation_gate(const cvector_t& target) {
  if (target.size() != 2) {
    throw dimension_error("state_preparation_gate: expected 2 amplitudes");
  }
  if (std::abs(target.squaredNorm() - 1.0) > kNormTolerance) {
    throw validation_error("state_preparation_gate: amplitudes are not normalized");
  }
  // Columns [psi, psi_perp] form a unitary.
  return GateMatrix(1, make2(target(0), -std::conj(target(1)), target(1), std::conj(target(0))));
}

}  // namespace nlq
