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

#include "nlqsim/calibration.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nlq {

namespace {

// ibmqx2 snapshot: qubits Q0..Q3 and the four characterized CX junctions.
constexpr const char* kIbmqx2Paper = R"(# ibmqx2 device calibration snapshot
fridge_temperature_k = 0.0159

[qubit.0]
gate_error = 1.37e-3
readout_error = 2.40e-2
t1_us = 62.4
t2_us = 77.5
frequency_ghz = 5.276

[qubit.1]
gate_error = 1.37e-3
readout_error = 2.60e-2
t1_us = 55.1
t2_us = 64
frequency_ghz = 5.212

[qubit.2]
gate_error = 2.23e-3
readout_error = 3.00e-2
t1_us = 48.4
t2_us = 54.7
frequency_ghz = 5.015

[qubit.3]
gate_error = 1.72e-3
readout_error = 2.20e-2
t1_us = 59
t2_us = 57.3
frequency_ghz = 5.280

[pair.0.1]
gate_error = 0.0272
[pair.0.2]
gate_error = 0.0417
[pair.1.2]
gate_error = 0.0376
[pair.3.2]
gate_error = 0.0397
)";

constexpr const char* kNoiseless = R"(# error-free table; noisy execution reduces to the ideal path
fridge_temperature_k = 0

[qubit.0]
gate_error = 0
readout_error = 0
t1_us = inf
t2_us = inf
frequency_ghz = 0

[qubit.1]
gate_error = 0
readout_error = 0
t1_us = inf
t2_us = inf
frequency_ghz = 0

[qubit.2]
gate_error = 0
readout_error = 0
t1_us = inf
t2_us = inf
frequency_ghz = 0

[qubit.3]
gate_error = 0
readout_error = 0
t1_us = inf
t2_us = inf
frequency_ghz = 0

[qubit.4]
gate_error = 0
readout_error = 0
t1_us = inf
t2_us = inf
frequency_ghz = 0

[pair.default]
gate_error = 0
)";

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, const std::string& key) {
  const std::string v = trim(value);
  if (v == "inf" || v == "INF" || v == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw parse_error("calibration: bad number for key \"" + key + "\": \"" + v + "\"");
  }
}

}  // namespace

std::vector<std::string> CalibrationTable::validate() const {
  std::vector<std::string> hard;
  std::vector<std::string> warnings;
  auto check_prob = [&](double p, const std::string& key) {
    if (!(p >= 0.0 && p <= 1.0)) hard.push_back(key + " must lie in [0, 1]");
  };
  for (const auto& [q, cal] : qubits) {
    const std::string prefix = "qubit." + std::to_string(q) + ".";
    check_prob(cal.gate_error, prefix + "gate_error");
    check_prob(cal.readout_error, prefix + "readout_error");
    if (!(cal.t1_us > 0.0)) hard.push_back(prefix + "t1_us must be > 0");
    if (!(cal.t2_us > 0.0)) hard.push_back(prefix + "t2_us must be > 0");
    if (cal.t1_us > 0.0 && cal.t2_us > 2.0 * cal.t1_us) {
      warnings.push_back(prefix + "t2_us exceeds 2*t1_us (unphysical; dephasing clamped)");
    }
  }
  for (const auto& [pair, err] : pair_gate_error) {
    check_prob(err, "pair." + std::to_string(pair.first) + "." + std::to_string(pair.second) +
                        ".gate_error");
  }
  if (default_pair_gate_error) check_prob(*default_pair_gate_error, "pair.default.gate_error");
  if (!hard.empty()) {
    std::string msg = "calibration: invalid values:";
    for (const auto& h : hard) msg += "\n  " + h;
    throw validation_error(msg);
  }
  return warnings;
}

const QubitCalibration& CalibrationTable::qubit(int q) const {
  const auto it = qubits.find(q);
  if (it == qubits.end()) {
    throw validation_error("calibration: no data for qubit " + std::to_string(q));
  }
  return it->second;
}

std::optional<double> CalibrationTable::cx_error(int control, int target) const {
  if (const auto it = pair_gate_error.find({control, target}); it != pair_gate_error.end()) {
    return it->second;
  }
  if (const auto it = pair_gate_error.find({target, control}); it != pair_gate_error.end()) {
    return it->second;
  }
  return default_pair_gate_error;
}

CalibrationTable CalibrationTable::scaled(double s) const {
  if (!(s >= 0.0)) throw validation_error("calibration: scale must be >= 0");
  CalibrationTable out = *this;
  const double inv = s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
  for (auto& [q, cal] : out.qubits) {
    cal.gate_error *= s;
    cal.readout_error *= s;
    cal.t1_us = std::isinf(cal.t1_us) ? cal.t1_us : cal.t1_us * inv;
    cal.t2_us = std::isinf(cal.t2_us) ? cal.t2_us : cal.t2_us * inv;
  }
  for (auto& [pair, err] : out.pair_gate_error) err *= s;
  if (out.default_pair_gate_error) *out.default_pair_gate_error *= s;
  return out;
}

void GateDurations::validate() const {
  if (!(single_qubit_ns > 0.0) || !(two_qubit_ns > 0.0) || !(readout_ns > 0.0)) {
    throw validation_error("durations must be positive");
  }
}

CalibrationTable parse_calibration(std::string_view text) {
  CalibrationTable table;
  enum class Section { Top, Qubit, Pair, PairDefault };
  Section section = Section::Top;
  int sec_qubit = -1;
  std::pair<int, int> sec_pair{-1, -1};
  std::map<std::string, bool> qubit_keys_seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::vector<std::string> missing;

  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw parse_error("calibration line " + std::to_string(line_no) +
                                                ": unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.rfind("qubit.", 0) == 0) {
        try {
          sec_qubit = std::stoi(name.substr(6));
        } catch (const std::exception&) {
          throw parse_error("calibration: bad section [" + name + "]");
        }
        if (sec_qubit < 0) throw parse_error("calibration: negative qubit in [" + name + "]");
        section = Section::Qubit;
        table.qubits[sec_qubit];  // creates the entry
      } else if (name == "pair.default") {
        section = Section::PairDefault;
      } else if (name.rfind("pair.", 0) == 0) {
        const auto dot = name.find('.', 5);
        if (dot == std::string::npos) throw parse_error("calibration: bad section [" + name + "]");
        try {
          sec_pair = {std::stoi(name.substr(5, dot - 5)), std::stoi(name.substr(dot + 1))};
        } catch (const std::exception&) {
          throw parse_error("calibration: bad section [" + name + "]");
        }
        if (sec_pair.first < 0 || sec_pair.second < 0 || sec_pair.first == sec_pair.second) {
          throw parse_error("calibration: bad pair section [" + name + "]");
        }
        section = Section::Pair;
      } else {
        throw parse_error("calibration: unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw parse_error("calibration line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);

    switch (section) {
      case Section::Top:
        if (key == "fridge_temperature_k") {
          table.fridge_temperature_k = parse_number(value, key);
        } else {
          throw parse_error("calibration: unknown top-level key \"" + key + "\"");
        }
        break;
      case Section::Qubit: {
        auto& cal = table.qubits[sec_qubit];
        const std::string full = "qubit." + std::to_string(sec_qubit) + "." + key;
        if (key == "gate_error") {
          cal.gate_error = parse_number(value, full);
        } else if (key == "readout_error") {
          cal.readout_error = parse_number(value, full);
        } else if (key == "t1_us") {
          cal.t1_us = parse_number(value, full);
        } else if (key == "t2_us") {
          cal.t2_us = parse_number(value, full);
        } else if (key == "frequency_ghz") {
          cal.frequency_ghz = parse_number(value, full);
        } else {
          throw parse_error("calibration: unknown key \"" + full + "\"");
        }
        qubit_keys_seen["qubit." + std::to_string(sec_qubit) + "." + key] = true;
        break;
      }
      case Section::Pair:
        if (key == "gate_error") {
          table.pair_gate_error[sec_pair] = parse_number(value, key);
        } else {
          throw parse_error("calibration: unknown pair key \"" + key + "\"");
        }
        break;
      case Section::PairDefault:
        if (key == "gate_error") {
          table.default_pair_gate_error = parse_number(value, key);
        } else {
          throw parse_error("calibration: unknown pair key \"" + key + "\"");
        }
        break;
    }
  }

  // Every declared qubit must carry the full key set.
  for (const auto& [q, cal] : table.qubits) {
    for (const char* key : {"gate_error", "readout_error", "t1_us", "t2_us", "frequency_ghz"}) {
      const std::string full = "qubit." + std::to_string(q) + "." + key;
      if (!qubit_keys_seen.count(full)) missing.push_back(full);
    }
  }
  if (!missing.empty()) {
    std::string msg = "calibration: missing keys:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw parse_error(msg);
  }
  if (table.qubits.empty()) {
    throw parse_error("calibration: no [qubit.N] sections found");
  }
  table.validate();
  return table;
}

namespace {

// Shortest representation that parses back to the same double.
std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_calibration(const CalibrationTable& table) {
  std::ostringstream out;
  out << "fridge_temperature_k = " << format_number(table.fridge_temperature_k) << "\n";
  for (const auto& [q, cal] : table.qubits) {
    out << "\n[qubit." << q << "]\n";
    out << "gate_error = " << format_number(cal.gate_error) << "\n";
    out << "readout_error = " << format_number(cal.readout_error) << "\n";
    out << "t1_us = " << format_number(cal.t1_us) << "\n";
    out << "t2_us = " << format_number(cal.t2_us) << "\n";
    out << "frequency_ghz = " << format_number(cal.frequency_ghz) << "\n";
  }
  for (const auto& [pair, err] : table.pair_gate_error) {
    out << "\n[pair." << pair.first << "." << pair.second << "]\n";
    out << "gate_error = " << format_number(err) << "\n";
  }
  if (table.default_pair_gate_error) {
    out << "\n[pair.default]\n";
    out << "gate_error = " << format_number(*table.default_pair_gate_error) << "\n";
  }
  return out.str();
}

const CalibrationTable& calibration_preset(std::string_view name) {
  static const CalibrationTable ibmqx2 = parse_calibration(kIbmqx2Paper);
  static const CalibrationTable noiseless = parse_calibration(kNoiseless);
  if (name == "ibmqx2-paper") return ibmqx2;
  if (name == "noiseless") return noiseless;
  throw validation_error("unknown calibration preset \"" + std::string(name) +
                         "\" (known: ibmqx2-paper, noiseless)");
}

std::vector<std::string> calibration_preset_names() {
  return {"ibmqx2-paper", "noiseless"};
}

bool is_calibration_preset(std::string_view name) {
  for (const auto& p : calibration_preset_names()) {
    if (p == name) return true;
  }
  return false;
}

CalibrationTable load_calibration(const std::string& path_or_preset) {
  if (is_calibration_preset(path_or_preset)) return calibration_preset(path_or_preset);
  std::ifstream in(path_or_preset);
  if (!in) {
    throw validation_error("calibration: \"" + path_or_preset +
                           "\" is neither a preset nor a readable file");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_calibration(text.str());
}

}  // namespace nlq
