// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the tri-hybrid beamforming simulator: Monte
// Carlo sweeps over random channels for SE- and EE-maximizing beamformer
// design with radiation-center selection, plus a small-instance oracle check.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "trihybrid/trihybrid.hpp"

namespace {

using namespace trihybrid;

struct CommonArgs {
  int n_em = 80;
  int n_t = 8;
  int users = 4;
  double d_p = 0.1;
  double noise_dbm = 10.0;
  int paths = 4;
  int trials = 20;
  std::uint64_t seed = 42;
  std::string out = "./results.csv";
  std::string plot_out;
  std::string architectures = "rcraa-fc,fpa-fc";
  std::string cod_init = "fpa";
  int cod_sweeps = 5;
  bool no_timing = false;
  double eta_pa = 0.27;
  double p_lo = 22.5;
  double p_rf = 31.6;
  double p_dac = 128.0;
  double p_ps = 21.6;
};

void add_common_options(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--n-em", a.n_em, "Selectable RC candidate points");
  cmd->add_option("--n-t", a.n_t, "Antenna ports");
  cmd->add_option("--users", a.users, "Users (= RF chains)");
  cmd->add_option("--d-p", a.d_p, "Candidate spacing in wavelengths");
  cmd->add_option("--noise-dbm", a.noise_dbm, "Noise power in dBm");
  cmd->add_option("--paths", a.paths, "Channel paths per user");
  cmd->add_option("--trials", a.trials, "Monte Carlo trials");
  cmd->add_option("--seed", a.seed, "Base RNG seed (trial t uses seed + t)");
  cmd->add_option("--out", a.out, "Result CSV path");
  cmd->add_option("--plot-out", a.plot_out,
                  "Plot-data path (default: derived from --out)");
  cmd->add_option("--architectures", a.architectures,
                  "Comma list of {rcraa,fpa}-{fc,pc,fd} curves");
  cmd->add_option("--cod-init", a.cod_init,
                  "Coordinate-descent start: fpa | gain");
  cmd->add_option("--cod-sweeps", a.cod_sweeps,
                  "Max full coordinate cycles for RC selection");
  cmd->add_flag("--no-timing", a.no_timing,
                "Zero the wall-time column for byte-identical reruns");
  cmd->add_option("--eta-pa", a.eta_pa, "PA efficiency");
  cmd->add_option("--p-lo", a.p_lo, "Oscillator power, mW");
  cmd->add_option("--p-rf", a.p_rf, "Per-chain RF power, mW");
  cmd->add_option("--p-dac", a.p_dac, "Per-DAC power, mW");
  cmd->add_option("--p-ps", a.p_ps, "Per-phase-shifter power, mW");
}

AnalogStructure parse_structure(const std::string& s) {
  if (s == "fc") return AnalogStructure::FullyConnected;
  if (s == "pc") return AnalogStructure::PartiallyConnected;
  if (s == "fd") return AnalogStructure::FullyDigital;
  throw CLI::ValidationError("structure must be fc, pc, or fd");
}

std::vector<ArchitectureChoice> parse_architectures(const std::string& list) {
  std::vector<ArchitectureChoice> out;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto dash = token.find('-');
    if (dash == std::string::npos)
      throw CLI::ValidationError("architecture token must look like rcraa-fc");
    const std::string arch = token.substr(0, dash);
    ArchitectureChoice choice;
    if (arch == "rcraa")
      choice.arch = Architecture::RCRAA;
    else if (arch == "fpa")
      choice.arch = Architecture::FPA;
    else
      throw CLI::ValidationError("architecture must be rcraa or fpa");
    choice.structure = parse_structure(token.substr(dash + 1));
    out.push_back(choice);
  }
  if (out.empty()) throw CLI::ValidationError("no architectures given");
  return out;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stod(token));
  }
  return out;
}

ExperimentSpec build_spec(const CommonArgs& a) {
  ExperimentSpec spec;
  spec.base.n_em = a.n_em;
  spec.base.n_t = a.n_t;
  spec.base.n_rf = a.users;
  spec.base.k_users = a.users;
  spec.base.d_p = a.d_p;
  spec.base.noise_power = dbm_to_mw(a.noise_dbm);
  spec.power = PowerModel{a.eta_pa, a.p_lo, a.p_rf, a.p_dac, a.p_ps};
  spec.l_paths = a.paths;
  spec.trials = a.trials;
  spec.base_seed = a.seed;
  spec.architectures = parse_architectures(a.architectures);
  spec.cod_seed_from_fpa = (a.cod_init != "gain");
  spec.cod_max_sweeps = a.cod_sweeps;
  spec.measure_wall_time = !a.no_timing;
  return spec;
}

std::string default_plot_path(const std::string& out) {
  const auto dot = out.rfind('.');
  if (dot == std::string::npos || out.find('/', dot) != std::string::npos)
    return out + "_plot.csv";
  return out.substr(0, dot) + "_plot" + out.substr(dot);
}

int emit_and_report(const ExperimentSpec& spec, const CommonArgs& a,
                    PlotMetric metric) {
  const ExperimentResult result = run_experiment(spec);
  emit_csv(result.rows, a.out);

  std::vector<std::string> meta;
  meta.push_back(std::string("objective=") + to_string(spec.objective));
  meta.push_back(std::string("axis=") + to_string(spec.axis));
  meta.push_back("trials=" + std::to_string(spec.trials));
  meta.push_back("base_seed=" + std::to_string(spec.base_seed));
  meta.push_back("paths=" + std::to_string(spec.l_paths));
  if (spec.objective == Objective::EE)
    meta.push_back(std::string("ee_solver=") + to_string(spec.ee_solver));
  const std::string plot_path =
      a.plot_out.empty() ? default_plot_path(a.out) : a.plot_out;
  emit_plotdata(result.rows, plot_path, metric, meta);

  std::cout << result.rows.size() << " rows -> " << a.out << "\n"
            << "plot data -> " << plot_path << "\n";
  if (!result.all_converged()) {
    std::cerr << "warning: some rows did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_run_se(const CommonArgs& a, double p_max_dbm) {
  ExperimentSpec spec = build_spec(a);
  spec.objective = Objective::SE;
  spec.axis = SweepAxis::TransmitPower;
  spec.axis_values = {p_max_dbm};
  return emit_and_report(spec, a, PlotMetric::SE);
}

int cmd_run_ee(const CommonArgs& a, double p_max_dbm, const std::string& solver,
               bool dinkelbach_log) {
  ExperimentSpec spec = build_spec(a);
  spec.objective = Objective::EE;
  spec.axis = SweepAxis::MaxTransmitPower;
  spec.axis_values = {p_max_dbm};
  spec.ee_solver = solver == "dqtfp" ? EeSolver::DQTFP : EeSolver::LDTFP;
  spec.ee_options.dinkelbach_log_numerator = dinkelbach_log;
  return emit_and_report(spec, a, PlotMetric::EE);
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "transmit-power") return SweepAxis::TransmitPower;
  if (s == "max-transmit-power") return SweepAxis::MaxTransmitPower;
  if (s == "users") return SweepAxis::Users;
  if (s == "paths") return SweepAxis::Paths;
  if (s == "antenna-ports") return SweepAxis::AntennaPorts;
  if (s == "input-snr") return SweepAxis::InputSnr;
  throw CLI::ValidationError("unknown axis: " + s);
}

int cmd_sweep(const CommonArgs& a, const std::string& axis,
              const std::string& values, const std::string& objective,
              const std::string& solver, bool dinkelbach_log,
              const std::string& plot_metric) {
  ExperimentSpec spec = build_spec(a);
  spec.axis = parse_axis(axis);
  spec.axis_values = parse_values(values);
  spec.objective = objective == "ee" ? Objective::EE : Objective::SE;
  spec.ee_solver = solver == "dqtfp" ? EeSolver::DQTFP : EeSolver::LDTFP;
  spec.ee_options.dinkelbach_log_numerator = dinkelbach_log;
  PlotMetric metric =
      spec.objective == Objective::EE ? PlotMetric::EE : PlotMetric::SE;
  if (plot_metric == "se") metric = PlotMetric::SE;
  if (plot_metric == "ee") metric = PlotMetric::EE;
  if (plot_metric == "pt") metric = PlotMetric::PT;
  if (plot_metric == "p_total") metric = PlotMetric::PTotal;
  return emit_and_report(spec, a, metric);
}

int cmd_oracle_check(const CommonArgs& a, double p_max_dbm,
                     const std::string& structure) {
  SystemConfig config;
  config.n_em = a.n_em;
  config.n_t = a.n_t;
  config.n_rf = a.users;
  config.k_users = a.users;
  config.d_p = a.d_p;
  config.noise_power = dbm_to_mw(a.noise_dbm);
  config.p_max = dbm_to_mw(p_max_dbm);
  config.analog_structure = parse_structure(structure);
  config.validate();

  SePddOptions se_opts;
  se_opts.finalize_equality = true;
  const InnerSolver solver = [&](const Eigen::MatrixXcd& h_eff) {
    SeSolution sol = solve_se(h_eff, config, se_opts);
    return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                         std::move(sol.report)};
  };

  std::vector<double> gaps;
  bool ok = true;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
    const ExtendedChannel channel =
        generate_extended_channel(config, a.paths, seed);
    const OracleReport oracle = exhaustive_rc_opt(channel, config, solver);
    const RcSelection init = init_selection(channel, config);
    const double init_value =
        solver(apply_selection(channel, init, config)).value;
    const CodResult cod = run_cod(channel, config, solver, {});

    const double gap =
        (oracle.best_value - cod.report.final_objective) /
        std::max(oracle.best_value, 1e-12);
    gaps.push_back(gap);
    const bool bounded =
        cod.report.final_objective <=
        oracle.best_value * (1.0 + 1e-6) + 1e-12;
    const bool improved = cod.report.final_objective >= init_value - 1e-12;
    if (!bounded || !improved) ok = false;
    std::printf(
        "seed=%llu exhaustive=%.6f cod=%.6f init=%.6f gap=%.3f%% |A_r|=%ld%s\n",
        static_cast<unsigned long long>(seed), oracle.best_value,
        cod.report.final_objective, init_value, 100.0 * gap,
        oracle.evaluated_count,
        bounded && improved ? "" : "  <-- VIOLATION");
  }
  std::sort(gaps.begin(), gaps.end());
  std::printf("median gap over %d seeds: %.3f%%\n", a.trials,
              100.0 * gaps[gaps.size() / 2]);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tri-hybrid beamforming simulator (digital + analog + "
               "radiation-center selection)"};
  app.require_subcommand(1);
  // Goes before the subcommand: trihybrid --config run.toml sweep ...
  // File keys live under a [subcommand] section and are overridden by flags.
  app.set_config("--config", "", "Read options from a TOML/INI file");

  CommonArgs a_se, a_ee, a_sweep, a_oracle;
  // Exhaustive search only fits a small instance.
  a_oracle.n_em = 10;
  a_oracle.n_t = 3;
  a_oracle.users = 2;
  double p_max_dbm = 30.0;
  double p_max_dbm_oracle = 30.0;
  std::string solver = "ldtfp";
  bool dinkelbach_log = false;
  std::string axis = "transmit-power";
  std::string values = "10,15,20,25,30";
  std::string objective = "se";
  std::string plot_metric;
  std::string structure = "fc";

  CLI::App* run_se = app.add_subcommand(
      "run-se", "Sum-rate maximization at one power point");
  add_common_options(run_se, a_se);
  run_se->add_option("--p-max-dbm", p_max_dbm, "Power budget in dBm");

  CLI::App* run_ee = app.add_subcommand(
      "run-ee", "Energy-efficiency maximization at one power point");
  add_common_options(run_ee, a_ee);
  run_ee->add_option("--p-max-dbm", p_max_dbm, "Power budget in dBm");
  run_ee->add_option("--solver", solver, "EE solver: ldtfp | dqtfp");
  run_ee->add_flag("--dinkelbach-log", dinkelbach_log,
                   "Use the sum-rate Dinkelbach numerator");

  CLI::App* sweep = app.add_subcommand("sweep", "Axis sweep experiment");
  add_common_options(sweep, a_sweep);
  sweep->add_option("--axis", axis,
                    "transmit-power | max-transmit-power | users | paths | "
                    "antenna-ports | input-snr");
  sweep->add_option("--values", values, "Comma list of axis values");
  sweep->add_option("--objective", objective, "se | ee");
  sweep->add_option("--solver", solver, "EE solver: ldtfp | dqtfp");
  sweep->add_flag("--dinkelbach-log", dinkelbach_log,
                  "Use the sum-rate Dinkelbach numerator");
  sweep->add_option("--plot-metric", plot_metric,
                    "Plot-data metric: se | ee | pt | p_total");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check",
      "Compare coordinate-descent RC selection against exhaustive search");
  add_common_options(oracle, a_oracle);
  oracle->add_option("--p-max-dbm", p_max_dbm_oracle, "Power budget in dBm");
  oracle->add_option("--structure", structure, "fc | pc | fd");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run_se->parsed()) return cmd_run_se(a_se, p_max_dbm);
    if (run_ee->parsed())
      return cmd_run_ee(a_ee, p_max_dbm, solver, dinkelbach_log);
    if (sweep->parsed())
      return cmd_sweep(a_sweep, axis, values, objective, solver,
                       dinkelbach_log, plot_metric);
    if (oracle->parsed())
      return cmd_oracle_check(a_oracle, p_max_dbm_oracle, structure);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
