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
#include <cstdint>
#include <vector>

#include "nlqsim/types.hpp"

namespace nlq {

/// Deterministic pseudo-random generator (xoshiro256** seeded via splitmix64).
/// All randomness in the library flows through this type so that a given seed
/// produces bit-identical results on every platform, which the seeded
/// determinism guarantees depend on. <random> distributions are avoided on
/// purpose: their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal deviate (Box-Muller).
  double normal();

  /// 1 with probability p, else 0.
  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

  /// Index drawn proportionally to non-negative weights.
  std::size_t categorical(const std::vector<double>& weights);

 private:
  std::array<std::uint64_t, 4> state_;
};

/// Stateless seed derivation for independent sub-streams. Shot k of a job
/// seeded with s uses derive_stream(s, k); results are then independent of
/// evaluation order.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream_index);

/// Convenience: the RNG for one shot of a sampling job.
Rng shot_rng(std::uint64_t seed, std::uint64_t shot_index);

/// Haar-distributed random unitary of the given dimension (Ginibre + QR with
/// the R-diagonal phase fix).
cmatrix_t haar_random_unitary(int dim, Rng& rng);

/// Uniformly random pure-state amplitudes of the given dimension.
cvector_t haar_random_amplitudes(int dim, Rng& rng);

}  // namespace nlq
