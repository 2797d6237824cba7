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

#include "nlqsim/types.hpp"

namespace nlq {

std::string bitstring_of(std::size_t index, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    out[static_cast<std::size_t>(q)] = bit_of(index, q, n_qubits) ? '1' : '0';
  }
  return out;
}

std::size_t index_of_bitstring(const std::string& bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw parse_error("not a bitstring: \"" + bits + "\"");
    }
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  return index;
}

}  // namespace nlq
