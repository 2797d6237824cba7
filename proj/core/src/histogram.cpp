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

#include "nlqsim/histogram.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace nlq {

void Histogram::validate() const {
  std::uint64_t total = 0;
  std::size_t key_len = 0;
  for (const auto& [outcome, count] : counts) {
    if (outcome.empty()) throw validation_error("Histogram: empty outcome key");
    if (key_len == 0) key_len = outcome.size();
    if (outcome.size() != key_len) throw validation_error("Histogram: outcome lengths differ");
    for (char c : outcome) {
      if (c != '0' && c != '1') throw validation_error("Histogram: outcome is not a bitstring");
    }
    total += count;
  }
  if (total != shots) {
    throw validation_error("Histogram: counts sum to " + std::to_string(total) + ", not shots " +
                           std::to_string(shots));
  }
}

std::map<std::string, double> Histogram::frequencies() const {
  std::map<std::string, double> out;
  if (shots == 0) return out;
  for (const auto& [outcome, count] : counts) {
    out[outcome] = static_cast<double>(count) / static_cast<double>(shots);
  }
  return out;
}

nlohmann::json histogram_to_json(const Histogram& h) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [outcome, count] : h.counts) counts[outcome] = count;
  return nlohmann::json{{"shots", h.shots}, {"counts", counts}};
}

Histogram histogram_from_json(const nlohmann::json& j) {
  Histogram h;
  try {
    h.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& [outcome, count] : j.at("counts").items()) {
      h.counts[outcome] = count.get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("histogram JSON: ") + e.what());
  }
  h.validate();
  return h;
}

std::string histogram_to_csv(const Histogram& h) {
  std::ostringstream out;
  out << "outcome,count\n";
  for (const auto& [outcome, count] : h.counts) out << outcome << ',' << count << "\n";
  return out.str();
}

Histogram histogram_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "outcome,count") {
    throw parse_error("histogram CSV: missing \"outcome,count\" header");
  }
  Histogram h;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw parse_error("histogram CSV: bad row \"" + line + "\"");
    const std::string outcome = line.substr(0, comma);
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw parse_error("histogram CSV: bad count in \"" + line + "\"");
    }
    h.counts[outcome] = count;
    h.shots += count;
  }
  h.validate();
  return h;
}

}  // namespace nlq
