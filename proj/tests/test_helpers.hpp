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

#include <cmath>
#include <initializer_list>

#include "nlqsim/state.hpp"
#include "nlqsim/types.hpp"

namespace nlqtest {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

template <typename A, typename B>
double max_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline nlq::cvector_t vec(std::initializer_list<nlq::cplx_t> xs) {
  nlq::cvector_t v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline nlq::StateVector state(std::initializer_list<nlq::cplx_t> xs) {
  nlq::cvector_t v = vec(xs);
  int n = 0;
  while ((Eigen::Index{1} << n) < v.size()) ++n;
  return nlq::StateVector(n, std::move(v));
}

/// |<a|b>| for pure states (the fidelity convention used throughout).
inline double pure_fidelity(const nlq::StateVector& a, const nlq::StateVector& b) {
  return std::abs(a.inner_product(b));
}

}  // namespace nlqtest
