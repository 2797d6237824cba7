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

#include "nlqsim/reports.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "nlqsim/types.hpp"

namespace nlq {

nlohmann::json run_summary_to_json(const RunSummary& s) {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& o : s.outcomes) {
    outcomes.push_back({{"outcome", o.outcome},
                        {"theory", o.theory},
                        {"mean", o.mean},
                        {"sigma", o.sigma}});
  }
  nlohmann::json out{
      {"gate", s.gate},
      {"shots", s.shots},
      {"repeats", s.repeats},
      {"seed", s.seed},
      {"noise", s.noise},
      {"layout", s.layout},
      {"outcomes", outcomes},
      {"statistical_fidelity",
       {{"per_repeat", s.fs_per_repeat}, {"mean", s.fs_mean}, {"sigma", s.fs_sigma}}},
  };
  if (s.accumulated_gate_error) out["accumulated_gate_error"] = *s.accumulated_gate_error;
  return out;
}

RunSummary run_summary_from_json(const nlohmann::json& j) {
  RunSummary s;
  try {
    s.gate = j.at("gate").get<std::string>();
    s.shots = j.at("shots").get<int>();
    s.repeats = j.at("repeats").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.noise = j.at("noise").get<std::string>();
    s.layout = j.at("layout").get<std::string>();
    for (const auto& o : j.at("outcomes")) {
      s.outcomes.push_back(OutcomeStat{o.at("outcome").get<std::string>(),
                                       o.at("theory").get<double>(), o.at("mean").get<double>(),
                                       o.at("sigma").get<double>()});
    }
    const auto& fs = j.at("statistical_fidelity");
    s.fs_per_repeat = fs.at("per_repeat").get<std::vector<double>>();
    s.fs_mean = fs.at("mean").get<double>();
    s.fs_sigma = fs.at("sigma").get<double>();
    if (j.contains("accumulated_gate_error")) {
      s.accumulated_gate_error = j.at("accumulated_gate_error").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("run summary JSON: ") + e.what());
  }
  return s;
}

std::string run_summary_to_csv(const RunSummary& s) {
  std::ostringstream out;
  out.precision(17);
  out << "outcome,theory,mean,sigma\n";
  for (const auto& o : s.outcomes) {
    out << o.outcome << ',' << o.theory << ',' << o.mean << ',' << o.sigma << "\n";
  }
  return out.str();
}

}  // namespace nlq
