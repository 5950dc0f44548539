// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Randomized checks use fixed seeds so reruns are identical.

#include <cstdio>
#include <functional>
#include <map>

#include "test_helpers.hpp"

using namespace trihybrid;
using test_helpers::random_matrix;
using test_helpers::random_vector;
using test_helpers::selector_block;
using test_helpers::small_config;
using test_helpers::stacked_channel;
using test_helpers::vec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Check = std::function<Outcome()>;

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

// --------------------------------------------------------------- criterion 1
Outcome unit_identities() {
  Outcome out;
  std::mt19937_64 gen(1);
  for (int n : {1, 2, 7, 32, 128}) {
    for (int rep = 0; rep < 50; ++rep) {
      const double theta =
          test_helpers::uniform(gen, -std::numbers::pi / 2, std::numbers::pi / 2);
      if (!close(steering_vector(n, theta, 0.1).norm(), 1.0, 1e-10))
        return {false, "steering normalization failed"};
    }
  }

  // feasibility equivalence against the full binary power set
  SystemConfig feas = small_config(14, 3, 2);
  feas.d_p = 0.25;  // D_min = 2
  long count = 0;
  for (unsigned mask = 0; mask < (1u << 14); ++mask) {
    std::vector<int> r(14);
    int sum = 0;
    for (int i = 0; i < 14; ++i) {
      r[static_cast<size_t>(i)] = (mask >> i) & 1u;
      sum += r[static_cast<size_t>(i)];
    }
    bool expect = (sum == feas.n_t);
    if (expect)
      for (int w = 0; w + 2 <= 14 && expect; ++w)
        if (r[static_cast<size_t>(w)] + r[static_cast<size_t>(w + 1)] > 1)
          expect = false;
    if (check_feasible(r, feas).feasible != expect)
      return {false, "feasibility oracle mismatch"};
    count += expect;
  }
  if (count != count_feasible(feas))
    return {false, "feasible count mismatch"};

  // SINR / SE examples
  Eigen::MatrixXcd h1(2, 1);
  h1 << Complex(1, 0), Complex(0, 0);
  if (!close(sinr_per_user(h1, h1, 1.0)(0), 1.0, 1e-10))
    return {false, "single-user SINR"};
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::VectorXd g2 = sinr_per_user(eye, eye, 1.0);
  if (!close(g2(0), 1.0, 1e-10) || !close(g2(1), 1.0, 1e-10))
    return {false, "orthogonal SINR"};
  Eigen::VectorXd gammas(2);
  gammas << 3.0, 7.0;
  if (!close(spectral_efficiency(gammas), 5.0, 1e-10))
    return {false, "spectral efficiency example"};

  // power examples
  BeamformerSet ident;
  ident.f_rf = eye;
  ident.f_bb = eye;
  if (!close(transmit_power(ident), 2.0, 1e-10))
    return {false, "transmit power example"};
  const PowerModel pm;
  const SystemConfig fc = small_config(80, 8, 4, 1.0, AnalogStructure::FullyConnected);
  const SystemConfig pc =
      small_config(80, 8, 4, 1.0, AnalogStructure::PartiallyConnected);
  if (!close(total_power(0.0, fc, pm), 1864.1, 1e-10) ||
      !close(total_power(0.0, pc, pm), 1345.7, 1e-10) ||
      !close(total_power(270.0, fc, pm), 2864.1, 1e-10))
    return {false, "total power constants"};
  out.detail = "steering, feasibility power set, SINR/SE/power examples";
  return out;
}

// --------------------------------------------------------------- criterion 2
Outcome transform_identities() {
  std::mt19937_64 gen(2);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = test_helpers::uniform(gen, 1e-3, 40.0);
    const double b = test_helpers::uniform(gen, 0.5, 4000.0);
    const double rho = std::sqrt(a) / b;
    if (!close(2 * rho * std::sqrt(a) - rho * rho * b, a / b, 1e-12 * (a / b)))
      return {false, "quadratic-transform identity"};

    const int k = 3;
    Eigen::VectorXd gamma(k);
    for (int i = 0; i < k; ++i) gamma(i) = test_helpers::uniform(gen, 0.0, 80.0);
    double lt = 0.0, se = 0.0;
    for (int i = 0; i < k; ++i) {
      lt += std::log2(1 + gamma(i)) - gamma(i) / std::numbers::ln2 +
            (gamma(i) + 1) * gamma(i) / ((1 + gamma(i)) * std::numbers::ln2);
      se += std::log2(1 + gamma(i));
    }
    if (!close(lt, se, 1e-12 * std::max(1.0, se)))
      return {false, "Lagrange-dual identity"};

    const Eigen::MatrixXcd h = random_matrix(4, 3, 5000 + rep);
    const Eigen::MatrixXcd f = random_matrix(4, 3, 6000 + rep);
    const Eigen::VectorXd t = update_t(h, f, 2.0);
    const Eigen::VectorXd sinr = sinr_per_user(h, f, 2.0);
    for (int i = 0; i < 3; ++i)
      if (!close(t(i), sinr(i), 1e-12 * std::max(1.0, sinr(i))))
        return {false, "epigraph-SINR identity"};
  }
  return {true, "QT, Lagrange-dual, epigraph identities on 100 instances"};
}

// --------------------------------------------------------------- criterion 3
Outcome stationarity() {
  const double sigma2 = 2.0;
  const int n_t = 4, k = 2;
  double worst = 0.0;
  const auto track = [&](double norm, double obj) {
    worst = std::max(worst, norm / (1.0 + std::abs(obj)));
    return norm <= 1e-6 * (1.0 + std::abs(obj));
  };

  for (unsigned seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXcd h = random_matrix(n_t, k, 7000 + seed);
    const Eigen::MatrixXcd f = random_matrix(n_t, k, 7100 + seed);

    // receive scalars
    const Eigen::VectorXcd u = update_u(h, f, sigma2);
    const auto mse_sum = [&](const Eigen::VectorXcd& uu) {
      return mse_values(h, f, uu, sigma2).sum();
    };
    if (!track(finite_difference_gradient(mse_sum, u, 1e-6).norm(), mse_sum(u)))
      return {false, "receive-scalar stationarity"};

    // weights (real variables, direct central differences)
    const Eigen::VectorXd e = mse_values(h, f, u, sigma2);
    const Eigen::VectorXd w = update_w(e);
    double wg = 0.0, wobj = 0.0;
    for (int i = 0; i < k; ++i) {
      const double hstep = 1e-6;
      const auto obj = [&](double wv) { return wv * e(i) - std::log2(wv); };
      wg += std::abs(obj(w(i) + hstep) - obj(w(i) - hstep)) / (2 * hstep);
      wobj += obj(w(i));
    }
    if (!track(wg, wobj)) return {false, "weight stationarity"};

    // penalized precoder (stacked Lagrangian with the returned dual)
    SystemConfig cfg = small_config(12, n_t, k, 1.5);
    BeamformerSet bf = init_beamformers(h, cfg);
    const double mu = 0.7;
    const FAuxUpdate upd = update_f_aux(h, bf, u, w, mu, cfg.p_max);
    const Eigen::VectorXcd f_tilde = vec(bf.product());
    const auto lagrangian_f = [&](const Eigen::VectorXcd& x) {
      double val = 0.0;
      for (int q = 0; q < k; ++q) {
        const Eigen::MatrixXcd ht = stacked_channel(h, q);
        const Eigen::MatrixXcd sq = selector_block(q, n_t, k);
        const Complex inner = (h.col(q).adjoint() * sq * x)(0);
        val += w(q) * (std::norm(u(q)) *
                           ((ht.adjoint() * x).squaredNorm() + sigma2) +
                       1.0 - 2.0 * (u(q) * inner).real());
      }
      val += (x - f_tilde).squaredNorm() / (2.0 * mu);
      val += upd.nu * (x.squaredNorm() - cfg.p_max);
      return val;
    };
    const Eigen::VectorXcd fhat = vec(upd.f);
    if (!track(finite_difference_gradient(lagrangian_f, fhat, 1e-6).norm(),
               lagrangian_f(fhat)))
      return {false, "penalized precoder stationarity"};

    // inner-ratio auxiliaries
    const Eigen::VectorXcd tau = update_tau(h, f, sigma2);
    const Eigen::MatrixXcd cross = h.adjoint() * f;
    const auto tau_obj = [&](const Eigen::VectorXcd& tt) {
      double val = 0.0;
      for (int q = 0; q < k; ++q) {
        const double inpn =
            cross.row(q).squaredNorm() - std::norm(cross(q, q)) + sigma2;
        val += 2.0 * (std::conj(tt(q)) * cross(q, q)).real() -
               std::norm(tt(q)) * inpn;
      }
      return val;
    };
    if (!track(finite_difference_gradient(tau_obj, tau, 1e-6).norm(),
               tau_obj(tau)))
      return {false, "inner-ratio stationarity"};

    // closed-form ratio auxiliaries
    const Eigen::VectorXd t = update_t(h, f, sigma2);
    const Eigen::VectorXcd z = update_z(h, f, t, sigma2);
    const auto z_obj = [&](const Eigen::VectorXcd& zz) {
      double val = 0.0;
      for (int q = 0; q < k; ++q) {
        const double denom =
            std::numbers::ln2 * (cross.row(q).squaredNorm() + sigma2);
        val += 2.0 * std::sqrt(t(q) + 1.0) *
                   (std::conj(zz(q)) * cross(q, q)).real() -
               std::norm(zz(q)) * denom;
      }
      return val;
    };
    if (!track(finite_difference_gradient(z_obj, z, 1e-6).norm(), z_obj(z)))
      return {false, "ratio-auxiliary stationarity"};

    // closed-form precoder (stacked Lagrangian with the returned dual)
    const PowerModel pm;
    SystemConfig cfg2 = small_config(12, n_t, k, 1.5);
    const double omega = 0.003, mu2 = 0.9;
    const FAuxUpdate upd2 =
        ldtfp_update_f(h, bf, omega, t, z, mu2, cfg2.p_max, pm);
    const auto lagrangian_l = [&](const Eigen::VectorXcd& x) {
      double val = 0.0;
      for (int q = 0; q < k; ++q) {
        const Eigen::MatrixXcd ht = stacked_channel(h, q);
        const Eigen::MatrixXcd sq = selector_block(q, n_t, k);
        const Complex inner = (h.col(q).adjoint() * sq * x)(0);
        val += 2.0 * std::sqrt(t(q) + 1.0) * (std::conj(z(q)) * inner).real() -
               std::norm(z(q)) * std::numbers::ln2 *
                   ((ht.adjoint() * x).squaredNorm() + sigma2);
      }
      val -= omega * (x.squaredNorm() / pm.eta_pa + circuit_power(cfg2, pm));
      val -= (x - f_tilde).squaredNorm() / (2.0 * mu2);
      val -= upd2.nu * (x.squaredNorm() - cfg2.p_max);
      return -val;  // minimize the negative for a vanishing gradient
    };
    const Eigen::VectorXcd fhat2 = vec(upd2.f);
    if (!track(finite_difference_gradient(lagrangian_l, fhat2, 1e-6).norm(),
               lagrangian_l(fhat2)))
      return {false, "closed-form precoder stationarity"};
  }
  return {true, fmt("six update rules x 20 instances, worst %.2e", worst)};
}

// --------------------------------------------------------------- criterion 4
Outcome monotonicity() {
  SePddOptions se_opts;
  se_opts.finalize_equality = true;

  // coordinate-descent traces
  const SystemConfig cod_cfg = small_config(20, 3, 2, 1000.0);
  const InnerSolver solver = [&](const Eigen::MatrixXcd& h_eff) {
    SeSolution sol = solve_se(h_eff, cod_cfg, se_opts);
    return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                         std::move(sol.report)};
  };
  for (unsigned seed = 0; seed < 50; ++seed) {
    const ExtendedChannel ch =
        generate_extended_channel(cod_cfg, 4, 8000 + seed);
    const CodResult res = run_cod(ch, cod_cfg, solver, {});
    const auto& trace = res.report.objective_trace;
    for (size_t i = 1; i < trace.size(); ++i)
      if (trace[i] < trace[i - 1])
        return {false, fmt("COD trace decreased at seed %u", seed)};
  }

  // penalized-objective descent for the block-exact structure
  const SystemConfig pc_cfg =
      small_config(20, 4, 2, 1000.0, AnalogStructure::PartiallyConnected);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const ExtendedChannel ch = generate_extended_channel(pc_cfg, 4, 8500 + seed);
    const Eigen::MatrixXcd h =
        apply_selection(ch, fpa_baseline_selection(pc_cfg), pc_cfg);
    SePddOptions opts;
    opts.record_surrogate = true;
    const SeSolution sol = solve_se(h, pc_cfg, opts);
    for (const auto& round : sol.report.surrogate_traces)
      for (size_t i = 1; i < round.size(); ++i)
        if (round[i] > round[i - 1] + 1e-9 * std::abs(round[i - 1]))
          return {false, fmt("L1 increased at seed %u", seed)};
  }
  return {true, "50 COD traces, 20 penalized-descent traces"};
}

// --------------------------------------------------------------- criterion 5
Outcome oracle_gap() {
  SystemConfig cfg = small_config(10, 3, 2, 1000.0);
  cfg.d_p = 0.25;  // D_min = 2, |A_r| = C(8,3) = 56
  SePddOptions se_opts;
  se_opts.finalize_equality = true;
  const InnerSolver solver = [&](const Eigen::MatrixXcd& h_eff) {
    SeSolution sol = solve_se(h_eff, cfg, se_opts);
    return InnerSolution{sol.report.final_objective, std::move(sol.bf),
                         std::move(sol.report)};
  };

  std::vector<double> gaps;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const ExtendedChannel ch = generate_extended_channel(cfg, 4, 9000 + seed);
    const OracleReport oracle = exhaustive_rc_opt(ch, cfg, solver);
    const CodResult cod = run_cod(ch, cfg, solver, {});
    const double init_value = cod.report.objective_trace.front();
    if (cod.report.final_objective >
        oracle.best_value * (1.0 + 1e-6))
      return {false, fmt("COD exceeded the exhaustive bound at seed %u", seed)};
    if (cod.report.final_objective < init_value)
      return {false, fmt("COD fell below its start at seed %u", seed)};
    gaps.push_back((oracle.best_value - cod.report.final_objective) /
                   oracle.best_value);
  }
  std::sort(gaps.begin(), gaps.end());
  const double median = gaps[gaps.size() / 2];
  if (median > 0.05)
    return {false, fmt("median relative gap %.2f%% > 5%%", 100 * median)};
  return {true, fmt("median relative gap %.3f%%, max %.3f%%", 100 * median,
                    100 * gaps.back())};
}

// --------------------------------------------------------------- criterion 6
Outcome selection_gain() {
  ExperimentSpec spec;
  spec.base = small_config(40, 4, 2);
  spec.axis = SweepAxis::TransmitPower;
  spec.axis_values = {10.0, 30.0};
  spec.architectures = {{Architecture::RCRAA, AnalogStructure::FullyConnected},
                        {Architecture::FPA, AnalogStructure::FullyConnected}};
  spec.objective = Objective::SE;
  spec.trials = 100;
  spec.base_seed = 100;
  spec.measure_wall_time = false;
  const ExperimentResult result = run_experiment(spec);

  std::map<std::pair<std::uint64_t, double>, std::pair<double, double>> paired;
  for (const ResultRow& row : result.rows) {
    auto& slot = paired[{row.trial_seed, row.axis_value}];
    (row.architecture == "RCRAA" ? slot.first : slot.second) = row.se;
  }
  double gain_low = 0.0, gain_high = 0.0;
  for (const auto& [key, se] : paired) {
    if (se.first < se.second)
      return {false, fmt("RCRAA SE %.4f below FPA %.4f at seed %llu",
                         se.first, se.second,
                         static_cast<unsigned long long>(key.first))};
    (key.second == 30.0 ? gain_high : gain_low) += se.first - se.second;
  }
  gain_low /= spec.trials;
  gain_high /= spec.trials;
  if (gain_high < gain_low)
    return {false, fmt("mean gain %.3f at 30 dBm < %.3f at 10 dBm", gain_high,
                       gain_low)};
  return {true, fmt("per-trial dominance holds; mean gain %.3f -> %.3f "
                    "bits/s/Hz from 10 to 30 dBm",
                    gain_low, gain_high)};
}

// --------------------------------------------------------------- criterion 7
Outcome structure_ordering() {
  ExperimentSpec spec;
  spec.base = small_config(40, 4, 2);
  spec.axis = SweepAxis::TransmitPower;
  spec.axis_values = {30.0};
  spec.architectures = {{Architecture::FPA, AnalogStructure::FullyDigital},
                        {Architecture::FPA, AnalogStructure::FullyConnected},
                        {Architecture::FPA, AnalogStructure::PartiallyConnected}};
  spec.objective = Objective::SE;
  spec.trials = 50;
  spec.base_seed = 300;
  spec.measure_wall_time = false;
  const ExperimentResult result = run_experiment(spec);

  std::map<std::string, double> mean;
  for (const ResultRow& row : result.rows) mean[row.structure] += row.se;
  for (auto& [name, value] : mean) value /= spec.trials;
  if (!(mean.at("FD") >= mean.at("FC") && mean.at("FC") >= mean.at("PC")))
    return {false, fmt("means not ordered: FD %.3f, FC %.3f, PC %.3f",
                       mean.at("FD"), mean.at("FC"), mean.at("PC"))};
  return {true, fmt("mean SE: FD %.3f >= FC %.3f >= PC %.3f over 50 paired "
                    "trials",
                    mean.at("FD"), mean.at("FC"), mean.at("PC"))};
}

// --------------------------------------------------------------- criterion 8
Outcome ee_solver_parity() {
  const PowerModel pm;
  const SystemConfig cfg = small_config(80, 8, 4, 1000.0);  // 20 dB input SNR
  std::vector<double> diffs, diffs_printed, ratios;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const ExtendedChannel ch = generate_extended_channel(cfg, 4, 10000 + seed);
    const Eigen::MatrixXcd h =
        apply_selection(ch, fpa_baseline_selection(cfg), cfg);
    const EeSolution dq = solve_ee_dqtfp(h, cfg, pm, {});
    EeSolveOptions log_mode;
    log_mode.dinkelbach_log_numerator = true;
    const EeSolution ld = solve_ee_ldtfp(h, cfg, pm, log_mode);
    const EeSolution ld_printed = solve_ee_ldtfp(h, cfg, pm, {});

    diffs.push_back(std::abs(ld.report.final_objective -
                             dq.report.final_objective) /
                    dq.report.final_objective);
    diffs_printed.push_back(std::abs(ld_printed.report.final_objective -
                                     dq.report.final_objective) /
                            dq.report.final_objective);
    const double per_dq = dq.report.wall_time_ms / dq.report.inner_iterations;
    const double per_ld = ld.report.wall_time_ms / ld.report.inner_iterations;
    ratios.push_back(per_dq / per_ld);
  }
  std::sort(diffs.begin(), diffs.end());
  std::sort(diffs_printed.begin(), diffs_printed.end());
  std::sort(ratios.begin(), ratios.end());
  const double median = diffs[diffs.size() / 2];
  const double median_printed = diffs_printed[diffs_printed.size() / 2];
  const double median_ratio = ratios[ratios.size() / 2];
  if (median > 0.05)
    return {false, fmt("median relative EE difference %.2f%% > 5%%",
                       100 * median)};
  if (median_ratio < 10.0)
    return {false, fmt("median per-iteration ratio %.1fx < 10x", median_ratio)};
  return {true,
          fmt("sum-rate-numerator mode: median EE diff %.2f%%, per-iteration "
              "time ratio %.0fx (as-printed numerator for reference: %.1f%%)",
              100 * median, median_ratio, 100 * median_printed)};
}

// --------------------------------------------------------------- criterion 9
Outcome ee_plateau() {
  ExperimentSpec spec;
  spec.base = small_config(80, 8, 4, 1.0, AnalogStructure::PartiallyConnected);
  spec.axis = SweepAxis::MaxTransmitPower;
  spec.axis_values = {10.0, 15.0, 20.0, 25.0, 30.0, 35.0};
  spec.architectures = {{Architecture::FPA, AnalogStructure::PartiallyConnected}};
  spec.objective = Objective::EE;
  spec.ee_solver = EeSolver::LDTFP;
  spec.ee_options.dinkelbach_log_numerator = true;
  spec.trials = 30;
  spec.base_seed = 500;
  spec.measure_wall_time = false;
  const ExperimentResult result = run_experiment(spec);
  const auto pts = aggregate_plotdata(result.rows, PlotMetric::EE);
  if (pts.size() != 6) return {false, "unexpected aggregate size"};
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].mean < pts[i - 1].mean * (1.0 - 0.02))
      return {false, fmt("mean EE drops by more than 2%% between %.0f and "
                         "%.0f dBm",
                         pts[i - 1].axis_value, pts[i].axis_value)};
  const double last = pts[5].mean, prev = pts[4].mean;
  if (std::abs(last - prev) > 0.02 * std::max(last, prev))
    return {false, fmt("no plateau: %.3g vs %.3g at the top of the sweep",
                       prev, last)};
  return {true, fmt("mean EE non-decreasing within 2%%; final plateau "
                    "%.4g vs %.4g (%.2f%% apart)",
                    prev, last, 100 * std::abs(last - prev) / last)};
}

// -------------------------------------------------------------- criterion 10
Outcome reporting_boundary() {
  // The reference percentages depend on undisclosed random draws; the
  // deliverable is the statistic-with-uncertainty output, checked here.
  ExperimentSpec spec;
  spec.base = small_config(16, 2, 2);
  spec.axis = SweepAxis::TransmitPower;
  spec.axis_values = {20.0, 30.0};
  spec.architectures = {{Architecture::RCRAA, AnalogStructure::FullyConnected},
                        {Architecture::FPA, AnalogStructure::FullyConnected}};
  spec.objective = Objective::SE;
  spec.trials = 4;
  spec.base_seed = 900;
  spec.measure_wall_time = false;
  const ExperimentResult result = run_experiment(spec);
  const std::string path = "acceptance_plotdata.csv";
  emit_plotdata(result.rows, path, PlotMetric::SE,
                {"trials=4", "base_seed=900"});
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::remove(path.c_str());
  if (text.find("mean,stderr,ci95_lo,ci95_hi") == std::string::npos)
    return {false, "plot data lacks uncertainty columns"};
  const auto pts = aggregate_plotdata(result.rows, PlotMetric::SE);
  if (pts.size() != 4) return {false, "unexpected curve-point count"};
  for (const auto& p : pts)
    if (p.n != 4 || !(p.stderr_ > 0.0))
      return {false, "aggregate sample bookkeeping broken"};
  return {true,
          "exact single-run percentages are declared non-reproducible "
          "(undisclosed seeds); desk-scale means with confidence intervals "
          "are emitted instead"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"unit identities", unit_identities},
      {"transform identities", transform_identities},
      {"stationarity of closed-form updates", stationarity},
      {"monotone descent and selection traces", monotonicity},
      {"coordinate descent vs exhaustive oracle", oracle_gap},
      {"reconfigurable selection dominates the fixed grid", selection_gain},
      {"structure ordering at high power", structure_ordering},
      {"closed-form EE solver parity and speed", ee_solver_parity},
      {"EE plateau in the power budget", ee_plateau},
      {"statistical reporting boundary", reporting_boundary},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %2zu: %s — %s%s%s\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                outcome.detail.empty() ? "" : ": ",
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
