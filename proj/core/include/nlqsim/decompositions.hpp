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

#include "nlqsim/circuit.hpp"

namespace nlq {

/// Controlled-H over {1q gates, CX}: sdg/h/tdg on the target, CX, then
/// t/h/s. Equal to controlled(H) with no residual global phase.
Circuit ch_circuit();

/// Controlled-Z as (I ⊗ H) · CX · (I ⊗ H). Control is qubit 0 in both
/// decompositions.
Circuit cz_circuit();

/// Single-qubit preparation H·T·H|0>, amplitudes ((1+e^{i pi/4})/2,
/// (1-e^{i pi/4})/2).
Circuit prepare_alice();

/// Single-qubit preparation H·S·T·H|0>, amplitudes ((1+i e^{i pi/4})/2,
/// (1-i e^{i pi/4})/2).
Circuit prepare_bob();

}  // namespace nlq
