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

#include "nlqsim/decompositions.hpp"

namespace nlq {

Circuit ch_circuit() {
  // With V = S·H·T one has V X V^dag = H, so conjugating the CX target by V
  // turns controlled-X into controlled-H exactly.
  Circuit c(2);
  c.add_gate(Gate::Sdg, {1});
  c.add_gate(Gate::H, {1});
  c.add_gate(Gate::Tdg, {1});
  c.add_gate(Gate::CX, {0, 1});
  c.add_gate(Gate::T, {1});
  c.add_gate(Gate::H, {1});
  c.add_gate(Gate::S, {1});
  return c;
}

Circuit cz_circuit() {
  Circuit c(2);
  c.add_gate(Gate::H, {1});
  c.add_gate(Gate::CX, {0, 1});
  c.add_gate(Gate::H, {1});
  return c;
}

Circuit prepare_alice() {
  Circuit c(1);
  c.add_gate(Gate::H, {0});
  c.add_gate(Gate::T, {0});
  c.add_gate(Gate::H, {0});
  return c;
}

Circuit prepare_bob() {
  Circuit c(1);
  c.add_gate(Gate::H, {0});
  c.add_gate(Gate::T, {0});
  c.add_gate(Gate::S, {0});
  c.add_gate(Gate::H, {0});
  return c;
}

}  // namespace nlq
