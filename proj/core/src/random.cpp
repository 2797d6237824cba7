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

#include "nlqsim/random.hpp"

#include <cmath>
#include <numbers>

namespace nlq {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) {
    word = splitmix64(s);
  }
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // (0,1] for the log argument.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw validation_error("categorical weight is negative");
    total += w;
  }
  if (!(total > 0.0)) throw validation_error("categorical weights sum to zero");
  double u = uniform() * total;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    u -= weights[i];
    if (u < 0.0) return i;
  }
  return weights.size() - 1;
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream_index) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
  return splitmix64(x);
}

Rng shot_rng(std::uint64_t seed, std::uint64_t shot_index) {
  return Rng(derive_stream(seed, shot_index));
}

cmatrix_t haar_random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw validation_error("haar_random_unitary: dim must be >= 1");
  cmatrix_t ginibre(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      ginibre(r, c) = cplx_t(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<cmatrix_t> qr(ginibre);
  cmatrix_t q = qr.householderQ();
  const cmatrix_t r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const cplx_t d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= (mag > 0.0) ? d / mag : cplx_t(1.0, 0.0);
  }
  return q;
}

cvector_t haar_random_amplitudes(int dim, Rng& rng) {
  if (dim < 1) throw validation_error("haar_random_amplitudes: dim must be >= 1");
  cvector_t v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = cplx_t(rng.normal(), rng.normal());
  }
  v.normalize();
  return v;
}

}  // namespace nlq
