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
#include <span>
#include <vector>

#include "nlqsim/calibration.hpp"
#include "nlqsim/circuit.hpp"
#include "nlqsim/histogram.hpp"
#include "nlqsim/protocol.hpp"
#include "nlqsim/simulator.hpp"
#include "nlqsim/state.hpp"

namespace nlq {

//===========================================================================
// Channel builders
//===========================================================================

/// Depolarizing channel: sqrt(1-p) I plus the 3 (arity 1) or 15 (arity 2)
/// non-identity Pauli products sharing probability p equally.
std::vector<cmatrix_t> depolarizing_kraus(double p, int arity);

/// Amplitude damping with gamma = 1 - exp(-t/T1) composed with pure
/// dephasing, 1/Tphi = 1/T2 - 1/(2 T1) clamped at zero when T2 > 2 T1.
/// Durations are in nanoseconds, decay times in microseconds.
std::vector<cmatrix_t> relaxation_kraus(double t1_us, double t2_us, double duration_ns);

/// {B_j A_i}: channel `first` followed by channel `second`.
std::vector<cmatrix_t> compose_kraus(const std::vector<cmatrix_t>& first,
                                     const std::vector<cmatrix_t>& second);

/// Max-abs deviation of sum K^dag K from identity.
double kraus_completeness_deviation(const std::vector<cmatrix_t>& kraus);

/// Classical readout channel: returns the recorded value of `bit`, flipped
/// with probability p.
int readout_flip(int bit, double p, Rng& rng);

/// Probability that at least one of a sequence of gates with the given error
/// probabilities fires: 1 - prod(1 - p_i). Error bookkeeping, not a channel.
double accumulated_error_probability(std::span<const double> gate_errors);

//===========================================================================
// Noisy circuit execution
//===========================================================================

/// Calibration-driven noise placement: after every gate, depolarizing with
/// the gate's error probability plus relaxation over the gate duration on
/// exactly the touched qubits; a classical readout flip at each measurement.
/// `idle_relaxation` additionally decays untouched qubits for the same
/// duration (off by default; the calibration snapshot carries no scheduling
/// information). Readout duration only matters in idle mode.
struct NoiseModel {
  CalibrationTable calibration;
  GateDurations durations;
  bool idle_relaxation = false;
};

struct DmBranch {
  DensityMatrix state;
  std::vector<int> cbits;  // recorded (post-readout-flip) bits
  double probability;
};

/// Analytic density-matrix execution over every measurement/readout branch.
std::vector<DmBranch> enumerate_noisy_branches(const Circuit& circuit, const NoiseModel& model);

/// Exact outcome distribution of the noisy execution over the reported cbits.
std::map<std::string, double> noisy_outcome_probabilities(const Circuit& circuit,
                                                          const NoiseModel& model,
                                                          const std::vector<int>& report_cbits = {});

/// Sampled counts: the exact noisy distribution sampled per shot with the
/// same (seed, shot) stream scheme as the ideal sampler, so a zero-error
/// calibration reproduces sample_histogram() exactly.
Histogram noisy_run(const Circuit& circuit, const NoiseModel& model, int shots,
                    std::uint64_t seed, const std::vector<int>& report_cbits = {},
                    int shot_cap = kDefaultShotCap);

//===========================================================================
// Noisy protocol execution
//===========================================================================

struct NoisyEisertResult {
  DensityMatrix final_ab;  // (A, B) marginal, generally mixed
  ProtocolTranscript transcript;
  int alice_bit;
  int bob_bit;
};

/// Trajectory-style protocol run on a density matrix with calibration noise
/// woven into every step; announced bits include readout errors.
NoisyEisertResult run_eisert(const StateVector& psi_a, const StateVector& psi_b,
                             const GateMatrix& u, std::uint64_t seed, const NoiseModel& noise,
                             const RegisterLayout& layout = {});

}  // namespace nlq
