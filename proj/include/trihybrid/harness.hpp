// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "trihybrid/ee_solvers.hpp"
#include "trihybrid/oracles.hpp"

namespace trihybrid {

enum class SweepAxis {
  TransmitPower,     // dBm, SE-style sweeps with the power constraint tight
  MaxTransmitPower,  // dBm, EE-style budget sweeps
  Users,
  Paths,
  AntennaPorts,
  InputSnr,          // dB over the noise floor; sets the power budget
};

enum class Architecture { RCRAA, FPA };
enum class Objective { SE, EE };
enum class EeSolver { DQTFP, LDTFP };

inline const char* to_string(Architecture a) {
  return a == Architecture::RCRAA ? "RCRAA" : "FPA";
}
inline const char* to_string(Objective o) { return o == Objective::SE ? "SE" : "EE"; }
inline const char* to_string(EeSolver s) {
  return s == EeSolver::DQTFP ? "DQTFP" : "LDTFP";
}
inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::TransmitPower: return "transmit-power";
    case SweepAxis::MaxTransmitPower: return "max-transmit-power";
    case SweepAxis::Users: return "users";
    case SweepAxis::Paths: return "paths";
    case SweepAxis::AntennaPorts: return "antenna-ports";
    case SweepAxis::InputSnr: return "input-snr";
  }
  return "?";
}

struct ArchitectureChoice {
  Architecture arch = Architecture::RCRAA;
  AnalogStructure structure = AnalogStructure::FullyConnected;
};

struct ExperimentSpec {
  SystemConfig base;
  PowerModel power;
  SweepAxis axis = SweepAxis::TransmitPower;
  std::vector<double> axis_values;
  std::vector<ArchitectureChoice> architectures;
  Objective objective = Objective::SE;
  EeSolver ee_solver = EeSolver::LDTFP;
  int l_paths = 4;
  int trials = 20;
  std::uint64_t base_seed = 42;
  bool cod_seed_from_fpa = true;  // guarantees RCRAA >= FPA row by row
  int cod_max_sweeps = 5;
  bool measure_wall_time = true;  // false pins timing fields to zero for
                                  // byte-identical reruns
  SePddOptions se_options{};
  EeSolveOptions ee_options{};

  void validate() const {
    if (trials < 1) throw ConfigError("need at least one trial");
    if (axis_values.empty()) throw ConfigError("sweep needs axis values");
    for (size_t i = 1; i < axis_values.size(); ++i)
      if (!(axis_values[i] > axis_values[i - 1]))
        throw ConfigError("axis values must be strictly increasing");
    if (architectures.empty())
      throw ConfigError("need at least one architecture");
    if (l_paths < 1) throw ConfigError("need at least one path");
  }
};

struct ResultRow {
  std::string architecture;
  std::string structure;
  double axis_value = 0.0;
  std::uint64_t trial_seed = 0;
  double se = 0.0;
  double pt = 0.0;
  double p_total = 0.0;
  double ee = 0.0;
  int iterations = 0;
  double wall_time_ms = 0.0;
  bool converged = true;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  // One entry per row: identifies the channel realization the row was solved
  // against (paired-comparison audit).
  std::vector<std::uint64_t> row_channel_hashes;

  bool all_converged() const {
    for (const auto& r : rows)
      if (!r.converged) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t channel_hash(const ExtendedChannel& ch) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(ch.h_bar.data());
  const size_t n = sizeof(Complex) * static_cast<size_t>(ch.h_bar.size());
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline int worker_count(int tasks) {
  int limit = static_cast<int>(std::thread::hardware_concurrency());
  if (limit < 1) limit = 1;
  if (const char* env = std::getenv("TRIHYBRID_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) limit = requested;
  }
  return std::min(limit, tasks);
}

}  // namespace detail

/// Base config with the axis value applied. Power axes are given in dBm
/// (input SNR in dB over the noise floor); count axes in plain units.
inline SystemConfig config_at(const ExperimentSpec& spec, double axis_value) {
  SystemConfig c = spec.base;
  switch (spec.axis) {
    case SweepAxis::TransmitPower:
    case SweepAxis::MaxTransmitPower:
      c.p_max = dbm_to_mw(axis_value);
      break;
    case SweepAxis::InputSnr:
      c.p_max = c.noise_power * std::pow(10.0, axis_value / 10.0);
      break;
    case SweepAxis::Users:
      c.k_users = static_cast<int>(axis_value);
      c.n_rf = static_cast<int>(axis_value);
      break;
    case SweepAxis::AntennaPorts:
      c.n_t = static_cast<int>(axis_value);
      break;
    case SweepAxis::Paths:
      break;
  }
  return c;
}

inline int paths_at(const ExperimentSpec& spec, double axis_value) {
  return spec.axis == SweepAxis::Paths ? static_cast<int>(axis_value)
                                       : spec.l_paths;
}

/// Inner beamforming solve for one architecture at a fixed selection; the
/// returned value is the sweep objective (SE or EE).
inline InnerSolver make_inner_solver(const ExperimentSpec& spec,
                                     const SystemConfig& config) {
  if (spec.objective == Objective::SE) {
    SePddOptions opts = spec.se_options;
    // The SE experiments report full-power beamformers.
    opts.finalize_equality = true;
    return [config, opts](const Eigen::MatrixXcd& h_eff) {
      SeSolution sol = solve_se(h_eff, config, opts);
      return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                           std::move(sol.report)};
    };
  }
  const EeSolveOptions opts = spec.ee_options;
  const PowerModel pm = spec.power;
  if (spec.ee_solver == EeSolver::DQTFP)
    return [config, pm, opts](const Eigen::MatrixXcd& h_eff) {
      EeSolution sol = solve_ee_dqtfp(h_eff, config, pm, opts);
      return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                           std::move(sol.report)};
    };
  return [config, pm, opts](const Eigen::MatrixXcd& h_eff) {
    EeSolution sol = solve_ee_ldtfp(h_eff, config, pm, opts);
    return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                         std::move(sol.report)};
  };
}

namespace detail {

struct TrialOutput {
  std::vector<ResultRow> rows;
  std::vector<std::uint64_t> hashes;
};

inline TrialOutput run_trial(const ExperimentSpec& spec, int trial) {
  const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(trial);
  TrialOutput out;

  // Shared channel realizations per axis value: every architecture within a
  // trial sees the same draw.
  std::vector<ExtendedChannel> channels;
  channels.reserve(spec.axis_values.size());
  for (double v : spec.axis_values)
    channels.push_back(
        generate_extended_channel(config_at(spec, v), paths_at(spec, v), seed));

  for (const ArchitectureChoice& choice : spec.architectures) {
    for (size_t vi = 0; vi < spec.axis_values.size(); ++vi) {
      const double v = spec.axis_values[vi];
      SystemConfig config = config_at(spec, v);
      config.analog_structure = choice.structure;
      config.validate();
      const ExtendedChannel& channel = channels[vi];
      const InnerSolver solver = make_inner_solver(spec, config);

      const auto t0 = std::chrono::steady_clock::now();
      BeamformerSet bf;
      SolveReport report;
      Eigen::MatrixXcd h_eff;
      if (choice.arch == Architecture::FPA) {
        const RcSelection sel = fpa_baseline_selection(config);
        h_eff = apply_selection(channel, sel, config);
        InnerSolution sol = solver(h_eff);
        bf = std::move(sol.bf);
        report = std::move(sol.report);
      } else {
        CodOptions cod;
        cod.max_sweeps = spec.cod_max_sweeps;
        if (spec.cod_seed_from_fpa) cod.initial = fpa_baseline_selection(config);
        CodResult res = run_cod(channel, config, solver, cod);
        h_eff = apply_selection(channel, res.selection, config);
        bf = std::move(res.bf);
        report = std::move(res.report);
      }
      const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();

      ResultRow row;
      row.architecture = to_string(choice.arch);
      row.structure = to_string(choice.structure);
      row.axis_value = v;
      row.trial_seed = seed;
      row.pt = transmit_power(bf);
      row.se = spectral_efficiency(
          sinr_per_user(h_eff, bf.product(), config.noise_power));
      row.p_total = total_power(row.pt, config, spec.power);
      row.ee = energy_efficiency(row.se, row.p_total);
      row.iterations = report.inner_iterations;
      row.wall_time_ms = spec.measure_wall_time ? elapsed_ms : 0.0;
      row.converged = report.converged;
      out.rows.push_back(std::move(row));
      out.hashes.push_back(channel_hash(channel));
    }
  }
  return out;
}

}  // namespace detail

/// Monte Carlo sweep. Trial t draws its channels from base_seed + t; rows are
/// emitted in (trial, architecture, axis) order regardless of how many worker
/// threads run (TRIHYBRID_THREADS caps the pool).
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<detail::TrialOutput> per_trial(static_cast<size_t>(spec.trials));

  const int workers = detail::worker_count(spec.trials);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int t = next.fetch_add(1); t < spec.trials;
             t = next.fetch_add(1))
          per_trial[static_cast<size_t>(t)] = detail::run_trial(spec, t);
      } catch (...) {
        failures[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ExperimentResult result;
  for (auto& trial : per_trial) {
    for (auto& row : trial.rows) result.rows.push_back(std::move(row));
    for (auto h : trial.hashes) result.row_channel_hashes.push_back(h);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180: quote fields containing separators or quotes, double embedded
// quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace detail

inline const char* kResultCsvHeader =
    "architecture,structure,axis_value,trial_seed,se,pt,p_total,ee,"
    "iterations,wall_time_ms,converged";

/// Writes every ResultRow field; floats carry 17 significant digits so a
/// parse-back reproduces them exactly.
inline void emit_csv(const std::vector<ResultRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kResultCsvHeader << "\n";
  for (const ResultRow& r : rows) {
    out << detail::csv_field(r.architecture) << ','
        << detail::csv_field(r.structure) << ','
        << detail::format_double(r.axis_value) << ',' << r.trial_seed << ','
        << detail::format_double(r.se) << ',' << detail::format_double(r.pt)
        << ',' << detail::format_double(r.p_total) << ','
        << detail::format_double(r.ee) << ',' << r.iterations << ','
        << detail::format_double(r.wall_time_ms) << ','
        << (r.converged ? 1 : 0) << "\n";
  }
  if (!out.flush()) throw IoError("write failed: " + path);
}

enum class PlotMetric { SE, PT, PTotal, EE };

inline const char* to_string(PlotMetric m) {
  switch (m) {
    case PlotMetric::SE: return "se";
    case PlotMetric::PT: return "pt";
    case PlotMetric::PTotal: return "p_total";
    case PlotMetric::EE: return "ee";
  }
  return "?";
}

struct PlotPoint {
  std::string architecture;
  std::string structure;
  double axis_value = 0.0;
  long n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Per-curve aggregates: sample mean and standard error of one metric over
/// trials, one record per (architecture, structure, axis value).
inline std::vector<PlotPoint> aggregate_plotdata(
    const std::vector<ResultRow>& rows, PlotMetric metric) {
  if (rows.empty()) throw DomainError("no rows to aggregate");
  const auto value_of = [metric](const ResultRow& r) {
    switch (metric) {
      case PlotMetric::SE: return r.se;
      case PlotMetric::PT: return r.pt;
      case PlotMetric::PTotal: return r.p_total;
      case PlotMetric::EE: return r.ee;
    }
    return 0.0;
  };

  struct Key {
    std::string arch, structure;
    double axis;
    bool operator==(const Key& o) const {
      return arch == o.arch && structure == o.structure && axis == o.axis;
    }
  };
  std::vector<Key> order;
  std::vector<std::vector<double>> samples;
  for (const ResultRow& r : rows) {
    const Key key{r.architecture, r.structure, r.axis_value};
    size_t slot = order.size();
    for (size_t i = 0; i < order.size(); ++i)
      if (order[i] == key) {
        slot = i;
        break;
      }
    if (slot == order.size()) {
      order.push_back(key);
      samples.emplace_back();
    }
    samples[slot].push_back(value_of(r));
  }

  std::vector<PlotPoint> points;
  points.reserve(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& xs = samples[i];
    const long n = static_cast<long>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    if (n > 1) {
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(n - 1);
    }
    const double se_of_mean = n > 1 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
    points.push_back({order[i].arch, order[i].structure, order[i].axis, n,
                      mean, se_of_mean});
  }
  return points;
}

/// Plot-data file: optional `# key=value` metadata lines, then one record per
/// curve point with mean, standard error, and a 95% normal interval.
inline void emit_plotdata(const std::vector<ResultRow>& rows,
                          const std::string& path, PlotMetric metric,
                          const std::vector<std::string>& metadata = {}) {
  const std::vector<PlotPoint> points = aggregate_plotdata(rows, metric);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const std::string& line : metadata) out << "# " << line << "\n";
  out << "architecture,structure,axis_value,n,mean,stderr,ci95_lo,ci95_hi\n";
  for (const PlotPoint& p : points) {
    const double half = 1.96 * p.stderr_;
    out << detail::csv_field(p.architecture) << ','
        << detail::csv_field(p.structure) << ','
        << detail::format_double(p.axis_value) << ',' << p.n << ','
        << detail::format_double(p.mean) << ','
        << detail::format_double(p.stderr_) << ','
        << detail::format_double(p.mean - half) << ','
        << detail::format_double(p.mean + half) << "\n";
  }
  if (!out.flush()) throw IoError("write failed: " + path);
}

}  // namespace trihybrid
