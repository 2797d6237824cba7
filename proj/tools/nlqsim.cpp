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

// Command-line front end: run non-local gate experiments, state and process
// tomography, and calibration management. All randomness is keyed by --seed,
// so identical invocations write byte-identical files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "nlqsim/calibration.hpp"
#include "nlqsim/experiments.hpp"
#include "nlqsim/noise.hpp"
#include "nlqsim/process_tomo.hpp"
#include "nlqsim/random.hpp"
#include "nlqsim/reports.hpp"
#include "nlqsim/simulator.hpp"
#include "nlqsim/state_tomo.hpp"
#include "nlqsim/topology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlq;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string gate = "cnot";
  int shots = 8192;
  int repeats = 10;
  std::uint64_t seed = 1;
  int shot_cap = kDefaultShotCap;
  std::string noise = "off";
  std::string layout = "A=0,a=1,b=2,B=3";
  std::string out_dir;
  std::string format = "json";
  std::string durations = "80,300,1000";
  bool idle_decay = false;
  bool analytic = false;
  bool project = false;
  bool transcript = false;
  std::string job_file;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_repeats) {
  cmd->add_option("gate", opt.gate,
                  "Gate to run non-locally: cnot | ch | cz | path to a 2x2 unitary JSON file")
      ->required();
  cmd->add_option("--shots", opt.shots, "Shots per sampled job")->capture_default_str();
  if (with_repeats) {
    cmd->add_option("--repeats", opt.repeats, "Independent repetitions (distinct seeds)")
        ->capture_default_str();
  }
  cmd->add_option("--seed", opt.seed, "Master seed; all sub-streams derive from it")
      ->capture_default_str();
  cmd->add_option("--shot-cap", opt.shot_cap, "Upper bound on --shots")->capture_default_str();
  cmd->add_option("--noise,--calibration", opt.noise,
                  "off | calibration preset | calibration file")
      ->capture_default_str();
  cmd->add_option("--layout", opt.layout, "Role map, e.g. A=0,a=1,b=2,B=3")
      ->capture_default_str();
  cmd->add_option("--out", opt.out_dir,
                  "Output directory (default: $NLQSIM_OUT_DIR or current directory)");
  cmd->add_option("--format", opt.format, "json writes JSON results; csv adds plot-ready CSV")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--durations", opt.durations,
                  "Gate durations in ns as 1q,2q,readout (noise mode)")
      ->capture_default_str();
  cmd->add_flag("--idle-decay", opt.idle_decay,
                "Relax idle qubits during gates and readout (noise mode)");
}

fs::path resolve_out_dir(const CommonOptions& opt) {
  fs::path dir;
  if (!opt.out_dir.empty()) {
    dir = opt.out_dir;
  } else if (const char* env = std::getenv("NLQSIM_OUT_DIR"); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    dir = ".";
  }
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

GateMatrix load_custom_unitary(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error("gate \"" + path + "\" is neither cnot/ch/cz nor a readable file");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("custom gate file: " + std::string(e.what()));
  }
  cmatrix_t u(2, 2);
  try {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const double re = j.at("re").at(r).at(c).get<double>();
        const double im = j.contains("im") ? j.at("im").at(r).at(c).get<double>() : 0.0;
        u(r, c) = cplx_t(re, im);
      }
    }
  } catch (const json::exception& e) {
    throw parse_error("custom gate file: expected {\"re\": 2x2, \"im\": 2x2}: " +
                      std::string(e.what()));
  }
  return GateMatrix(1, std::move(u));  // validates unitarity
}

ExperimentSpec make_spec(const CommonOptions& opt) {
  ExperimentSpec spec;
  spec.layout = RegisterLayout::parse(opt.layout);
  if (const auto named = parse_non_local_gate(opt.gate); named && *named != NonLocalGate::Custom) {
    spec.gate = *named;
  } else {
    spec.gate = NonLocalGate::Custom;
    spec.custom_u = load_custom_unitary(opt.gate);
  }
  return spec;
}

std::string gate_tag(const ExperimentSpec& spec) {
  return std::string(non_local_gate_name(spec.gate));
}

GateDurations parse_durations(const std::string& text) {
  GateDurations d;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &d.single_qubit_ns, &d.two_qubit_ns,
                  &d.readout_ns) != 3) {
    throw parse_error("--durations expects three comma-separated values in ns");
  }
  d.validate();
  return d;
}

std::optional<NoiseModel> make_noise_model(const CommonOptions& opt) {
  if (opt.noise == "off") return std::nullopt;
  NoiseModel model{load_calibration(opt.noise), parse_durations(opt.durations), opt.idle_decay};
  for (const auto& warning : model.calibration.validate()) {
    std::cerr << "warning: " << warning << "\n";
  }
  return model;
}

std::vector<double> probabilities_vector(const std::map<std::string, double>& dist) {
  std::vector<double> p(4, 0.0);
  for (const auto& [outcome, value] : dist) p[index_of_bitstring(outcome)] = value;
  return p;
}

double sample_sigma(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

// Gate-error bookkeeping for the summary: every gate slot contributes its
// calibration error probability (feed-forward corrections included).
double circuit_accumulated_error(const Circuit& circuit, const CalibrationTable& table) {
  std::vector<double> errors;
  auto add_gate = [&](const GateOp& g) {
    if (g.targets.size() == 1) {
      errors.push_back(table.qubit(g.targets[0]).gate_error);
    } else if (const auto p = table.cx_error(g.targets[0], g.targets[1])) {
      errors.push_back(*p);
    }
  };
  for (const auto& inst : circuit.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&inst)) {
      add_gate(*g);
    } else if (const auto* c = std::get_if<ConditionalOp>(&inst)) {
      add_gate(c->op);
    }
  }
  return accumulated_error_probability(errors);
}

void print_topology_hints(const Circuit& circuit) {
  const auto violations = topology_lint(circuit, Topology::ibmqx2());
  for (const auto& v : violations) {
    std::cout << "topology note (ibmqx2): instruction " << v.instruction_index << ": "
              << v.message << "\n";
  }
}

//===========================================================================
// run
//===========================================================================

int cmd_run(const CommonOptions& opt) {
  if (opt.shots < 1 || opt.repeats < 1) {
    throw validation_error("--shots and --repeats must be >= 1");
  }
  const ExperimentSpec spec = make_spec(opt);
  const auto noise = make_noise_model(opt);
  const Circuit circuit = build_run_circuit(spec);
  const std::vector<double> theory = theory_probabilities(spec);
  const fs::path out_dir = resolve_out_dir(opt);
  const std::string tag = gate_tag(spec);

  std::vector<std::vector<double>> freqs;
  std::vector<double> fs;
  for (int rep = 0; rep < opt.repeats; ++rep) {
    const std::uint64_t rep_seed = derive_stream(opt.seed, static_cast<std::uint64_t>(rep));
    const Histogram h =
        noise ? noisy_run(circuit, *noise, opt.shots, rep_seed, run_report_cbits(), opt.shot_cap)
              : sample_histogram(circuit, opt.shots, rep_seed, run_report_cbits(), opt.shot_cap);
    const fs::path rep_path = out_dir / ("run_" + tag + "_rep" + std::to_string(rep) + ".json");
    write_json(rep_path, histogram_to_json(h));
    if (opt.format == "csv") {
      write_file(out_dir / ("run_" + tag + "_rep" + std::to_string(rep) + ".csv"),
                 histogram_to_csv(h));
    }
    freqs.push_back(frequencies_vector(h, 2));
    fs.push_back(statistical_fidelity(freqs.back(), theory));
  }

  RunSummary summary;
  summary.gate = tag;
  summary.shots = opt.shots;
  summary.repeats = opt.repeats;
  summary.seed = opt.seed;
  summary.noise = noise ? opt.noise : "off";
  summary.layout = spec.layout.to_string();
  for (std::size_t i = 0; i < 4; ++i) {
    OutcomeStat stat;
    stat.outcome = bitstring_of(i, 2);
    stat.theory = theory[i];
    std::vector<double> values;
    for (const auto& f : freqs) values.push_back(f[i]);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    stat.mean = mean;
    stat.sigma = sample_sigma(values, mean);
    summary.outcomes.push_back(std::move(stat));
  }
  summary.fs_per_repeat = fs;
  double fs_mean = 0.0;
  for (double f : fs) fs_mean += f;
  fs_mean /= static_cast<double>(fs.size());
  summary.fs_mean = fs_mean;
  summary.fs_sigma = sample_sigma(fs, fs_mean);
  if (noise) {
    summary.accumulated_gate_error = circuit_accumulated_error(circuit, noise->calibration);
  }

  write_json(out_dir / ("run_" + tag + "_summary.json"), run_summary_to_json(summary));
  if (opt.format == "csv") {
    write_file(out_dir / ("run_" + tag + "_summary.csv"), run_summary_to_csv(summary));
  }

  if (opt.transcript) {
    const std::uint64_t t_seed = derive_stream(opt.seed, 0x7472616e73ULL);
    json t;
    if (noise) {
      t = transcript_to_json(
          run_eisert(alice_input(), bob_input(), experiment_u(spec), t_seed, *noise, spec.layout)
              .transcript);
    } else {
      t = transcript_to_json(
          run_eisert(alice_input(), bob_input(), experiment_u(spec), t_seed, spec.layout)
              .transcript);
    }
    write_json(out_dir / ("run_" + tag + "_transcript.json"), t);
  }

  std::cout << "non-local " << tag << ": " << opt.shots << " shots x " << opt.repeats
            << " repeats, noise " << summary.noise << ", seed " << opt.seed << "\n";
  std::cout << "outcome   theory      mean        sigma\n";
  std::cout.precision(6);
  std::cout << std::fixed;
  for (const auto& o : summary.outcomes) {
    std::cout << o.outcome << "        " << o.theory << "    " << o.mean << "    " << o.sigma
              << "\n";
  }
  std::cout << "F_s = " << summary.fs_mean << " +/- " << summary.fs_sigma << "\n";
  if (summary.accumulated_gate_error) {
    std::cout << "accumulated gate error (calibration bookkeeping): "
              << *summary.accumulated_gate_error << "\n";
  }
  print_topology_hints(circuit);
  std::cout << "wrote " << (out_dir / ("run_" + tag + "_summary.json")).string() << "\n";
  return 0;
}

//===========================================================================
// tomo
//===========================================================================

int cmd_tomo(const CommonOptions& opt) {
  const ExperimentSpec spec = make_spec(opt);
  const auto noise = make_noise_model(opt);
  const StateVector target = theory_output(spec);
  const fs::path out_dir = resolve_out_dir(opt);
  const std::string tag = gate_tag(spec);

  TomographyJob job = TomographyJob::full(2, opt.shots);
  if (!opt.job_file.empty()) {
    std::ifstream in(opt.job_file);
    if (!in) throw validation_error("cannot read job file " + opt.job_file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw parse_error("job file: " + std::string(e.what()));
    }
    job = tomography_job_from_json(j);
  }

  TomographyCoefficients coeffs;
  if (opt.analytic) {
    SettingProbabilities data;
    for (const auto& [setting, shots] : job.settings) {
      (void)shots;
      const Circuit c = build_tomo_circuit(spec, setting);
      const auto dist = noise ? noisy_outcome_probabilities(c, *noise, run_report_cbits())
                              : outcome_probabilities(c, run_report_cbits());
      data[setting] = probabilities_vector(dist);
    }
    coeffs = t_from_probabilities(data);
  } else {
    SettingCounts counts;
    std::uint64_t job_index = 0;
    for (const auto& [setting, shots] : job.settings) {
      const Circuit c = build_tomo_circuit(spec, setting);
      const std::uint64_t s = derive_stream(opt.seed, job_index++);
      counts[setting] = noise ? noisy_run(c, *noise, shots, s, run_report_cbits(), opt.shot_cap)
                              : sample_histogram(c, shots, s, run_report_cbits(), opt.shot_cap);
    }
    coeffs = t_from_counts(counts);
  }

  StateTomographyResult result;
  result.t = coeffs;
  result.rho = reconstruct(coeffs);
  result.projected = opt.project;
  if (opt.project) result.rho = project_physical(result.rho);
  result.fidelity = state_fidelity(target, result.rho);

  write_json(out_dir / ("tomo_" + tag + "_result.json"),
             state_tomography_result_to_json(result));
  if (opt.format == "csv") {
    write_file(out_dir / ("tomo_" + tag + "_rho_re.csv"),
               matrix_part_csv(result.rho.matrix(), false));
    write_file(out_dir / ("tomo_" + tag + "_rho_im.csv"),
               matrix_part_csv(result.rho.matrix(), true));
  }

  std::cout.precision(6);
  std::cout << std::fixed;
  std::cout << "state tomography of non-local " << tag << " output ("
            << (opt.analytic ? "analytic" : "sampled") << ", noise "
            << (noise ? opt.noise : std::string("off")) << ")\n";
  std::cout << "fidelity vs theory = " << result.fidelity << "\n";
  if (!result.rho.is_positive_semidefinite()) {
    std::cout << "note: linear inversion left the matrix non-PSD; fidelity used the projected "
                 "matrix (re-run with --project to emit the repaired state)\n";
  }
  if (spec.gate == NonLocalGate::Cnot) {
    std::cout << "ibmqx2 hardware reference: F = 0.879 (CNOT)\n";
  } else if (spec.gate == NonLocalGate::Ch) {
    std::cout << "ibmqx2 hardware reference: F = 0.831 (CH)\n";
  }
  std::cout << "wrote " << (out_dir / ("tomo_" + tag + "_result.json")).string() << "\n";
  return 0;
}

//===========================================================================
// ptomo
//===========================================================================

std::array<DensityMatrix, 16> acquire_protocol_outputs(const ExperimentSpec& spec,
                                                       const CommonOptions& opt,
                                                       const std::optional<NoiseModel>& noise) {
  const auto settings = all_settings(2);
  if (!opt.analytic) {
    return acquire_outputs_sampled(
        [&](int input, const BasisSetting& setting) {
          std::size_t setting_index = 0;
          for (std::size_t i = 0; i < settings.size(); ++i) {
            if (settings[i] == setting) setting_index = i;
          }
          const std::uint64_t s = derive_stream(
              opt.seed, static_cast<std::uint64_t>(input) * settings.size() + setting_index);
          const Circuit c = build_ptomo_circuit(spec, input, setting);
          return noise ? noisy_run(c, *noise, opt.shots, s, run_report_cbits(), opt.shot_cap)
                       : sample_histogram(c, opt.shots, s, run_report_cbits(), opt.shot_cap);
        },
        opt.project);
  }
  std::vector<DensityMatrix> outputs;
  outputs.reserve(16);
  for (int input = 0; input < 16; ++input) {
    SettingProbabilities data;
    for (const auto& setting : settings) {
      const Circuit c = build_ptomo_circuit(spec, input, setting);
      const auto dist = noise ? noisy_outcome_probabilities(c, *noise, run_report_cbits())
                              : outcome_probabilities(c, run_report_cbits());
      data[setting] = probabilities_vector(dist);
    }
    DensityMatrix rho = reconstruct(t_from_probabilities(data));
    if (opt.project) rho = project_physical(rho);
    outputs.push_back(std::move(rho));
  }
  return std::array<DensityMatrix, 16>{
      outputs[0],  outputs[1],  outputs[2],  outputs[3], outputs[4],  outputs[5],
      outputs[6],  outputs[7],  outputs[8],  outputs[9], outputs[10], outputs[11],
      outputs[12], outputs[13], outputs[14], outputs[15]};
}

int cmd_ptomo(const CommonOptions& opt) {
  const ExperimentSpec spec = make_spec(opt);
  const auto noise = make_noise_model(opt);
  const fs::path out_dir = resolve_out_dir(opt);
  const std::string tag = gate_tag(spec);

  const std::array<DensityMatrix, 16> outputs = acquire_protocol_outputs(spec, opt, noise);
  const ProcessMatrix chi = chi_from_outputs(outputs);
  const ProcessMatrix chi_target = chi_of_unitary(controlled_gate_matrix(spec).matrix());
  ProcessTomographyResult result{chi, 0.0, 0.0};
  result.process_fid = process_fidelity(chi_target, chi);
  result.avg_gate_fidelity = average_gate_fidelity(std::clamp(result.process_fid, 0.0, 1.0), 4);

  write_json(out_dir / ("ptomo_" + tag + "_result.json"),
             process_tomography_result_to_json(result));
  if (opt.format == "csv") {
    write_file(out_dir / ("ptomo_" + tag + "_chi_re.csv"), chi_part_csv(chi, false));
    write_file(out_dir / ("ptomo_" + tag + "_chi_im.csv"), chi_part_csv(chi, true));
  }

  std::cout.precision(6);
  std::cout << std::fixed;
  std::cout << "process tomography of non-local " << tag << " ("
            << (opt.analytic ? "analytic" : "sampled") << ", noise "
            << (noise ? opt.noise : std::string("off")) << ")\n";
  std::cout << "Tr(chi) = " << chi.trace() << "\n";
  std::cout << "F_p = " << result.process_fid << ", average gate fidelity = "
            << result.avg_gate_fidelity << "\n";
  if (spec.gate == NonLocalGate::Cnot) {
    std::cout << "ibmqx2 hardware reference: F_p = 0.536, avg = 0.628 (CNOT)\n";
  } else if (spec.gate == NonLocalGate::Ch) {
    std::cout << "ibmqx2 hardware reference: F_p = 0.554, avg = 0.643 (CH)\n";
  }
  std::cout << "wrote " << (out_dir / ("ptomo_" + tag + "_result.json")).string() << "\n";
  return 0;
}

//===========================================================================
// calib
//===========================================================================

int cmd_calib_list() {
  for (const auto& name : calibration_preset_names()) std::cout << name << "\n";
  return 0;
}

int cmd_calib_show(const std::string& source) {
  const CalibrationTable table = load_calibration(source);
  for (const auto& warning : table.validate()) std::cerr << "warning: " << warning << "\n";
  std::cout << format_calibration(table);
  return 0;
}

int cmd_calib_validate(const std::string& path) {
  const CalibrationTable table = load_calibration(path);
  for (const auto& warning : table.validate()) std::cout << "warning: " << warning << "\n";
  std::cout << "OK: " << table.qubits.size() << " qubits, " << table.pair_gate_error.size()
            << " pairs\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlqsim — non-local controlled-unitary gate simulator and analysis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nlqsim 0.1.0");

  CommonOptions run_opt, tomo_opt, ptomo_opt;

  CLI::App* run = app.add_subcommand(
      "run", "Execute the two-node protocol and collect outcome histograms");
  add_common_flags(run, run_opt, true);
  run->add_flag("--transcript", run_opt.transcript, "Also write the protocol event transcript");

  CLI::App* tomo =
      app.add_subcommand("tomo", "State tomography of the protocol's output state");
  add_common_flags(tomo, tomo_opt, false);
  tomo->add_flag("--analytic", tomo_opt.analytic, "Use exact probabilities instead of sampling");
  tomo->add_flag("--project", tomo_opt.project, "Repair the reconstruction to the nearest "
                                                "physical state before reporting");
  tomo->add_option("--job", tomo_opt.job_file, "Tomography job file (settings + shot counts)");

  CLI::App* ptomo =
      app.add_subcommand("ptomo", "Process tomography (chi matrix) of the non-local gate");
  add_common_flags(ptomo, ptomo_opt, false);
  ptomo->add_flag("--analytic", ptomo_opt.analytic, "Use exact probabilities instead of sampling");
  ptomo->add_flag("--project", ptomo_opt.project,
                  "Repair each reconstructed output state before assembling chi");

  CLI::App* calib = app.add_subcommand("calib", "Inspect and validate calibration tables");
  calib->require_subcommand(1);
  CLI::App* calib_list = calib->add_subcommand("list", "List built-in presets");
  std::string calib_source;
  CLI::App* calib_show = calib->add_subcommand("show", "Print a preset or calibration file");
  calib_show->add_option("source", calib_source, "Preset name or file path")->required();
  std::string calib_path;
  CLI::App* calib_validate = calib->add_subcommand("validate", "Validate a calibration file");
  calib_validate->add_option("path", calib_path, "Calibration file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (tomo->parsed()) return cmd_tomo(tomo_opt);
    if (ptomo->parsed()) return cmd_ptomo(ptomo_opt);
    if (calib_list->parsed()) return cmd_calib_list();
    if (calib_show->parsed()) return cmd_calib_show(calib_source);
    if (calib_validate->parsed()) return cmd_calib_validate(calib_path);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const incomplete_data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const capability_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
