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

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nlqsim/circuit.hpp"
#include "nlqsim/gates.hpp"
#include "nlqsim/histogram.hpp"
#include "nlqsim/random.hpp"
#include "nlqsim/state.hpp"

namespace nlq {

//===========================================================================
// State-vector execution (ideal)
//===========================================================================

/// U|psi> with the gate embedded on `targets` (identity elsewhere). The first
/// target indexes the gate's more significant bit.
StateVector apply_unitary(const StateVector& state, const GateMatrix& gate,
                          const std::vector<int>& targets);

/// Born-rule measurement of one qubit. Returns the sampled outcome and the
/// renormalized post-measurement state; deterministic for a given RNG state.
std::pair<int, StateVector> measure_qubit(const StateVector& state, int qubit, Rng& rng);

/// Probability of seeing `outcome` when measuring `qubit`.
double outcome_probability(const StateVector& state, int qubit, int outcome);

/// Projection onto a fixed outcome: (branch probability, renormalized state).
/// The state is meaningless when the probability is (near) zero.
std::pair<double, StateVector> project_qubit(const StateVector& state, int qubit, int outcome);

struct IdealRunResult {
  StateVector state;
  std::vector<int> cbits;
};

/// Executes the circuit as a single sampled trajectory (measurements drawn
/// from the Born rule, conditionals honored). Reproducible per seed.
IdealRunResult run_ideal(const Circuit& circuit, std::uint64_t seed);

struct Branch {
  StateVector state;
  std::vector<int> cbits;
  double probability;
};

/// Analytic mode: every measurement branch with its exact weight. Branch
/// order is deterministic (outcome 0 explored before 1 at each measurement).
std::vector<Branch> enumerate_branches(const Circuit& circuit);

/// Exact outcome distribution over the reported cbits (default: all cbits,
/// index 0 leftmost in the key).
std::map<std::string, double> outcome_probabilities(const Circuit& circuit,
                                                    const std::vector<int>& report_cbits = {});

/// Counts over `shots` independent runs. Each shot draws from the exact
/// branch distribution with its own RNG stream derived from (seed, shot), so
/// results do not depend on evaluation order. shots must lie in
/// [1, shot_cap].
Histogram sample_histogram(const Circuit& circuit, int shots, std::uint64_t seed,
                           const std::vector<int>& report_cbits = {},
                           int shot_cap = kDefaultShotCap);

//===========================================================================
// Density-matrix execution
//===========================================================================

DensityMatrix apply_unitary(const DensityMatrix& rho, const GateMatrix& gate,
                            const std::vector<int>& targets);

/// rho -> sum_i K_i rho K_i^dag on `targets`. The Kraus set must satisfy
/// sum K^dag K = I within 1e-10 (CPTP), else a validation_error is thrown.
DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<cmatrix_t>& kraus,
                            const std::vector<int>& targets);

/// Projection of a density matrix onto one measurement outcome:
/// (probability, renormalized post-measurement state).
std::pair<double, DensityMatrix> project_qubit(const DensityMatrix& rho, int qubit, int outcome);

}  // namespace nlq
