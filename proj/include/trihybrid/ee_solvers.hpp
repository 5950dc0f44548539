// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

#include "trihybrid/se_pdd.hpp"

namespace trihybrid {

struct EeSolveOptions {
  // NaN selects the per-solver default: 1.0 for the closed-form scheme,
  // 30 * P_max for the double-QT scheme (whose surrogate lives at EE scale,
  // orders of magnitude below the squared coupling distance in mW units).
  double mu_init = std::numeric_limits<double>::quiet_NaN();
  double c2 = 0.5;        // penalty shrink factor
  double ee_tol = 1e-4;   // relative EE change, inner and outer
  // Large budgets start the iterates far above the efficient power level;
  // the cap is a safety net, not the stopping rule.
  int max_inner = 2000;
  int max_outer = 15;
  double residual_tol = 1e-4;  // coupling residual target, times sqrt(P_max)
  // Dinkelbach numerator as printed uses sum(1 + sinr); the switch selects
  // the sum-rate numerator instead.
  bool dinkelbach_log_numerator = false;
  PgSolverSpec pg{};
  BisectionSpec bisection{};
  bool record_surrogate = false;
  std::function<void(const BeamformerSet&, int outer, int inner)> on_iteration;
};

struct EeSolution {
  BeamformerSet bf;
  SolveReport report;
};

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

/// EE of an auxiliary precoder: sum rate over PA-referred power plus circuit
/// power, all evaluated on F itself.
inline double aux_energy_efficiency(const Eigen::MatrixXcd& h_eff,
                                    const Eigen::MatrixXcd& f_aux,
                                    double noise_power, double eta_pa,
                                    double p_c) {
  const double se = spectral_efficiency(sinr_per_user(h_eff, f_aux, noise_power));
  return se / (f_aux.squaredNorm() / eta_pa + p_c);
}

// ---------------------------------------------------------------------------
// Double quadratic transform (outer EE ratio + inner SINR ratios)
// ---------------------------------------------------------------------------

struct DqtfpState {
  BeamformerSet bf;
  double rho = 0.0;
  Eigen::VectorXcd tau;
  double mu = 1.0;
};

/// Outer-ratio auxiliary: rho = sqrt(SE) / (||F||^2 / eta_PA + P_C).
inline double update_rho(double se, double pt_aux, const PowerModel& pm,
                         const SystemConfig& config) {
  if (se < 0.0) throw DomainError("sum rate must be non-negative");
  const double denom = pt_aux / pm.eta_pa + circuit_power(config, pm);
  if (!(denom > 0.0)) throw DomainError("power denominator must be positive");
  return std::sqrt(se) / denom;
}

/// Inner-ratio auxiliaries: tau_k = h_k^H f_k / (interference_k + noise).
inline Eigen::VectorXcd update_tau(const Eigen::MatrixXcd& h_eff,
                                   const Eigen::MatrixXcd& f_aux,
                                   double noise_power) {
  if (!(noise_power > 0.0)) throw DomainError("noise power must be positive");
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * f_aux;
  Eigen::VectorXcd tau(k);
  for (int q = 0; q < k; ++q) {
    const double denom =
        cross.row(q).squaredNorm() - std::norm(cross(q, q)) + noise_power;
    tau(q) = cross(q, q) / denom;
  }
  return tau;
}

/// Quadratic-transform surrogate of each SINR; equals the SINR exactly when
/// tau is fresh from update_tau.
inline Eigen::VectorXd qt_sinr_surrogate(const Eigen::MatrixXcd& h_eff,
                                         const Eigen::MatrixXcd& f_aux,
                                         const Eigen::VectorXcd& tau,
                                         double noise_power) {
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * f_aux;
  Eigen::VectorXd g(k);
  for (int q = 0; q < k; ++q) {
    const double inpn =
        cross.row(q).squaredNorm() - std::norm(cross(q, q)) + noise_power;
    g(q) = 2.0 * (std::conj(tau(q)) * cross(q, q)).real() -
           std::norm(tau(q)) * inpn;
  }
  return g;
}

/// Full double-QT surrogate value; -inf outside its effective domain.
inline double dqtfp_objective(const Eigen::MatrixXcd& h_eff,
                              const DqtfpState& state, double noise_power,
                              double eta_pa, double p_c) {
  double value =
      -state.rho * state.rho * (state.bf.f_aux.squaredNorm() / eta_pa + p_c);
  if (state.rho != 0.0) {
    // The root term only exists for rho > 0; its domain gating goes with it.
    const Eigen::VectorXd g =
        qt_sinr_surrogate(h_eff, state.bf.f_aux, state.tau, noise_power);
    double sum_rate_surrogate = 0.0;
    for (int q = 0; q < g.size(); ++q) {
      if (1.0 + g(q) <= 0.0) return -std::numeric_limits<double>::infinity();
      sum_rate_surrogate += std::log2(1.0 + g(q));
    }
    if (sum_rate_surrogate < 0.0)
      return -std::numeric_limits<double>::infinity();
    value += 2.0 * state.rho * std::sqrt(sum_rate_surrogate);
  }
  if (std::isfinite(state.mu))
    value -= (state.bf.f_aux - state.bf.product()).squaredNorm() /
             (2.0 * state.mu);
  return value;
}

/// Precoder update of the double-QT scheme: projected-gradient ascent of the
/// concave surrogate over the power ball, solved standalone from the penalty
/// anchor. mu = +inf drops the coupling penalty (fully digital runs).
inline Eigen::MatrixXcd dqtfp_update_f(const Eigen::MatrixXcd& h_eff,
                                       const BeamformerSet& bf, double rho,
                                       const Eigen::VectorXcd& tau, double mu,
                                       double p_max, const PowerModel& pm,
                                       const SystemConfig& config,
                                       const PgSolverSpec& pg = {}) {
  const int n_t = static_cast<int>(h_eff.rows());
  const int k = static_cast<int>(h_eff.cols());
  const double sigma2 = config.noise_power;
  const double eta = pm.eta_pa;
  const double p_c = circuit_power(config, pm);
  const bool penalized = std::isfinite(mu);
  const double half_inv_mu = penalized ? 1.0 / (2.0 * mu) : 0.0;
  const Eigen::MatrixXcd anchor =
      penalized ? bf.product() : Eigen::MatrixXcd::Zero(n_t, k);

  const auto as_matrix = [n_t, k](const Eigen::VectorXcd& v) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n_t, k);
  };

  const auto objective = [&](const Eigen::VectorXcd& v) -> double {
    const Eigen::MatrixXcd f = as_matrix(v);
    DqtfpState probe{BeamformerSet{bf.f_rf, bf.f_bb, f}, rho, tau, mu};
    return dqtfp_objective(h_eff, probe, sigma2, eta, p_c);
  };

  const auto raw_gradient = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    const Eigen::MatrixXcd f = as_matrix(v);
    const Eigen::MatrixXcd cross = h_eff.adjoint() * f;
    Eigen::VectorXd g(k);
    double a = 0.0;
    for (int q = 0; q < k; ++q) {
      const double inpn =
          cross.row(q).squaredNorm() - std::norm(cross(q, q)) + sigma2;
      g(q) = 2.0 * (std::conj(tau(q)) * cross(q, q)).real() -
             std::norm(tau(q)) * inpn;
      a += std::log2(1.0 + g(q));
    }
    Eigen::MatrixXcd grad = Eigen::MatrixXcd::Zero(n_t, k);
    if (rho != 0.0) {
      const double sqrt_a = std::sqrt(std::max(a, 1e-300));
      for (int q = 0; q < k; ++q) {
        const double coef =
            rho / (sqrt_a * (1.0 + g(q)) * std::numbers::ln2);
        const double t2 = std::norm(tau(q));
        grad.col(q) += coef * (tau(q) + t2 * cross(q, q)) * h_eff.col(q);
        for (int i = 0; i < k; ++i)
          grad.col(i) -= coef * t2 * cross(q, i) * h_eff.col(q);
      }
    }
    grad -= (rho * rho / eta) * f;
    if (penalized) grad -= half_inv_mu * (f - anchor);
    return Eigen::Map<const Eigen::VectorXcd>(grad.data(), grad.size());
  };

  // Each call solves the subproblem standalone from the penalty anchor, the
  // way an external convex solver would; the incumbent only acts as an
  // ascent safeguard.
  const Eigen::VectorXcd incumbent = Eigen::Map<const Eigen::VectorXcd>(
      bf.f_aux.data(), bf.f_aux.size());
  Eigen::VectorXcd start = Eigen::Map<const Eigen::VectorXcd>(
      anchor.data(), anchor.size());
  const double radius = std::sqrt(p_max);
  if (start.norm() > radius) start *= radius / start.norm();
  if (!penalized || !std::isfinite(objective(start))) start = incumbent;

  // Hand the solver a normalized problem (unit ball, unit objective scale) so
  // its tolerances act scale-free, the way a conic solver preconditions.
  const double obj_scale = std::max(std::abs(objective(start)), 1e-12);
  const auto scaled_objective = [&](const Eigen::VectorXcd& x) -> double {
    return objective(radius * x) / obj_scale;
  };
  const auto scaled_gradient = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    return (radius / obj_scale) * raw_gradient(radius * x);
  };
  const PgResult res = maximize_concave_ball(
      scaled_objective, scaled_gradient, 1.0, start / radius, pg);
  const Eigen::VectorXcd solution = radius * res.x;
  if (objective(solution) >= objective(incumbent)) return as_matrix(solution);
  return bf.f_aux;
}

/// Alternating EE maximization with two nested quadratic transforms
/// (Algorithm pattern: tau, rho, F, F_RF, F_BB inner; shrink mu outer).
inline EeSolution solve_ee_dqtfp(const Eigen::MatrixXcd& h_eff,
                                 const SystemConfig& config,
                                 const PowerModel& pm,
                                 const EeSolveOptions& opts = {}) {
  config.validate();
  pm.validate();
  if (h_eff.rows() != config.n_t || h_eff.cols() != config.k_users)
    throw DimensionError("effective channel must be N_T x K");
  if ((!std::isnan(opts.mu_init) && !(opts.mu_init > 0.0)) ||
      !(opts.c2 > 0.0 && opts.c2 < 1.0) || !(opts.ee_tol > 0.0) ||
      opts.max_inner < 1 || opts.max_outer < 1)
    throw ConfigError("invalid solver options");
  const auto t_start = std::chrono::steady_clock::now();
  const bool digital =
      config.analog_structure == AnalogStructure::FullyDigital;
  const double sigma2 = config.noise_power;
  const double eta = pm.eta_pa;
  const double p_c = circuit_power(config, pm);

  DqtfpState state;
  state.bf = init_beamformers(h_eff, config);
  const double mu_init =
      std::isnan(opts.mu_init) ? 30.0 * config.p_max : opts.mu_init;
  state.mu = digital ? std::numeric_limits<double>::infinity() : mu_init;

  EeSolution out;
  SolveReport& rep = out.report;
  rep.converged = false;

  double ee = 0.0;
  double ee_inner_prev = -std::numeric_limits<double>::infinity();
  double ee_outer_prev = -std::numeric_limits<double>::infinity();
  double residual = 0.0;
  double best_ee = -std::numeric_limits<double>::infinity();
  BeamformerSet best_bf;

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    rep.outer_iterations = outer;
    if (opts.record_surrogate) rep.surrogate_traces.emplace_back();
    for (int inner = 1; inner <= opts.max_inner; ++inner) {
      state.tau = update_tau(h_eff, state.bf.f_aux, sigma2);
      const double se_aux =
          spectral_efficiency(sinr_per_user(h_eff, state.bf.f_aux, sigma2));
      state.rho = update_rho(se_aux, state.bf.f_aux.squaredNorm(), pm, config);
      state.bf.f_aux =
          dqtfp_update_f(h_eff, state.bf, state.rho, state.tau, state.mu,
                         config.p_max, pm, config, opts.pg);
      if (digital) {
        state.bf.f_bb = state.bf.f_aux;
      } else {
        state.bf.f_rf =
            update_f_rf(state.bf.f_aux, state.bf.f_bb, config.analog_structure);
        state.bf.f_bb =
            update_f_bb(state.bf.f_aux, state.bf.f_rf, config.analog_structure);
      }

      ee = aux_energy_efficiency(h_eff, state.bf.f_aux, sigma2, eta, p_c);
      rep.objective_trace.push_back(ee);
      rep.residual_trace.push_back(
          digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm());
      ++rep.inner_iterations;
      if (ee > best_ee) {
        best_ee = ee;
        best_bf = state.bf;
      }
      if (opts.record_surrogate)
        rep.surrogate_traces.back().push_back(
            dqtfp_objective(h_eff, state, sigma2, eta, p_c));
      if (opts.on_iteration) opts.on_iteration(state.bf, outer, inner);

      const bool settled = std::abs(ee - ee_inner_prev) <=
                           opts.ee_tol * std::max(std::abs(ee_inner_prev), 1e-12);
      ee_inner_prev = ee;
      if (settled) break;
    }

    residual = digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
    const bool ee_settled = std::abs(ee - ee_outer_prev) <=
                            opts.ee_tol * std::max(std::abs(ee), 1e-12);
    if (ee_settled && residual <= opts.residual_tol * std::sqrt(config.p_max)) {
      rep.converged = true;
      break;
    }
    ee_outer_prev = ee;
    if (!digital) state.mu *= opts.c2;
  }

  if (!rep.converged && best_ee > ee) {
    state.bf = best_bf;
    rep.final_penalty_residual =
        digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
  } else {
    rep.final_penalty_residual = residual;
  }
  const double pt = state.bf.product().squaredNorm();
  if (pt > config.p_max) state.bf.f_bb *= std::sqrt(config.p_max / pt);

  out.bf = state.bf;
  const double final_se =
      spectral_efficiency(sinr_per_user(h_eff, out.bf.product(), sigma2));
  rep.final_objective = energy_efficiency(
      final_se, total_power(out.bf.product().squaredNorm(), config, pm));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return out;
}

// ---------------------------------------------------------------------------
// Dinkelbach + Lagrange dual transform + quadratic transform (closed form)
// ---------------------------------------------------------------------------

struct LdtfpState {
  BeamformerSet bf;
  double omega = 0.0;
  Eigen::VectorXd t;
  Eigen::VectorXcd z;
  double mu = 1.0;
};

/// Dinkelbach auxiliary. The numerator argument is either sum(1 + sinr)
/// (as printed) or the sum rate, depending on the caller's mode.
inline double update_omega(double numerator, double pt_aux,
                           const PowerModel& pm, const SystemConfig& config) {
  const double denom = pt_aux / pm.eta_pa + circuit_power(config, pm);
  if (!(denom > 0.0)) throw DomainError("power denominator must be positive");
  return numerator / denom;
}

/// Epigraph variables; identical to the per-user SINRs by strong duality.
inline Eigen::VectorXd update_t(const Eigen::MatrixXcd& h_eff,
                                const Eigen::MatrixXcd& f_aux,
                                double noise_power) {
  return sinr_per_user(h_eff, f_aux, noise_power);
}

/// Quadratic-transform auxiliaries of the extracted ratios:
/// z_k = sqrt(t_k + 1) h_k^H f_k / (ln2 (sum_i |h_k^H f_i|^2 + noise)).
inline Eigen::VectorXcd update_z(const Eigen::MatrixXcd& h_eff,
                                 const Eigen::MatrixXcd& f_aux,
                                 const Eigen::VectorXd& t,
                                 double noise_power) {
  if (!(noise_power > 0.0)) throw DomainError("noise power must be positive");
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * f_aux;
  Eigen::VectorXcd z(k);
  for (int q = 0; q < k; ++q)
    z(q) = std::sqrt(t(q) + 1.0) * cross(q, q) /
           (std::numbers::ln2 * (cross.row(q).squaredNorm() + noise_power));
  return z;
}

/// Lagrange-dual + QT surrogate value (diagnostic and test hook).
inline double ldtfp_surrogate(const Eigen::MatrixXcd& h_eff,
                              const LdtfpState& state, double noise_power,
                              double eta_pa, double p_c) {
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * state.bf.f_aux;
  double value = 0.0;
  for (int q = 0; q < k; ++q) {
    value += std::log2(1.0 + state.t(q)) - state.t(q) / std::numbers::ln2;
    value += 2.0 * std::sqrt(state.t(q) + 1.0) *
             (std::conj(state.z(q)) * cross(q, q)).real();
    value -= std::norm(state.z(q)) * std::numbers::ln2 *
             (cross.row(q).squaredNorm() + noise_power);
  }
  value -= state.omega * (state.bf.f_aux.squaredNorm() / eta_pa + p_c);
  if (std::isfinite(state.mu))
    value -= (state.bf.f_aux - state.bf.product()).squaredNorm() /
             (2.0 * state.mu);
  return value;
}

/// Closed-form precoder update: per-column ridge solve with shared Hermitian
/// part sum_k ln2 |z_k|^2 h_k h_k^H, shift omega/eta + 1/(2 mu), and dual nu
/// from the power-ball bisection. mu = +inf drops the penalty anchor.
inline FAuxUpdate ldtfp_update_f(const Eigen::MatrixXcd& h_eff,
                                 const BeamformerSet& bf, double omega,
                                 const Eigen::VectorXd& t,
                                 const Eigen::VectorXcd& z, double mu,
                                 double p_max, const PowerModel& pm,
                                 const BisectionSpec& bisection = {}) {
  const int n_t = static_cast<int>(h_eff.rows());
  const int k = static_cast<int>(h_eff.cols());
  const bool penalized = std::isfinite(mu);
  if (penalized && !(mu > 0.0))
    throw DomainError("penalty coefficient must be positive");
  const double half_inv_mu = penalized ? 1.0 / (2.0 * mu) : 0.0;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_t, n_t);
  for (int q = 0; q < k; ++q)
    m.noalias() += (std::numbers::ln2 * std::norm(z(q))) *
                   (h_eff.col(q) * h_eff.col(q).adjoint());

  Eigen::MatrixXcd rhs(n_t, k);
  for (int q = 0; q < k; ++q)
    rhs.col(q) = std::sqrt(t(q) + 1.0) * z(q) * h_eff.col(q);
  if (penalized) rhs += half_inv_mu * bf.product();

  const double base = omega / pm.eta_pa + half_inv_mu;
  const RidgeBallSolution sol =
      solve_ridge_ball(m, rhs, base, p_max, bisection);
  return {sol.f, sol.nu};
}

/// Fully closed-form EE maximization (Algorithm pattern: omega, t, z, F,
/// F_RF, F_BB inner; shrink mu outer).
inline EeSolution solve_ee_ldtfp(const Eigen::MatrixXcd& h_eff,
                                 const SystemConfig& config,
                                 const PowerModel& pm,
                                 const EeSolveOptions& opts = {}) {
  config.validate();
  pm.validate();
  if (h_eff.rows() != config.n_t || h_eff.cols() != config.k_users)
    throw DimensionError("effective channel must be N_T x K");
  if ((!std::isnan(opts.mu_init) && !(opts.mu_init > 0.0)) ||
      !(opts.c2 > 0.0 && opts.c2 < 1.0) || !(opts.ee_tol > 0.0) ||
      opts.max_inner < 1 || opts.max_outer < 1)
    throw ConfigError("invalid solver options");
  const auto t_start = std::chrono::steady_clock::now();
  const bool digital =
      config.analog_structure == AnalogStructure::FullyDigital;
  const double sigma2 = config.noise_power;
  const double eta = pm.eta_pa;
  const double p_c = circuit_power(config, pm);

  LdtfpState state;
  state.bf = init_beamformers(h_eff, config);
  const double mu_init = std::isnan(opts.mu_init) ? 1.0 : opts.mu_init;
  state.mu = digital ? std::numeric_limits<double>::infinity() : mu_init;

  EeSolution out;
  SolveReport& rep = out.report;
  rep.converged = false;

  double ee = 0.0;
  double ee_inner_prev = -std::numeric_limits<double>::infinity();
  double ee_outer_prev = -std::numeric_limits<double>::infinity();
  double residual = 0.0;
  double best_ee = -std::numeric_limits<double>::infinity();
  BeamformerSet best_bf;

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    rep.outer_iterations = outer;
    if (opts.record_surrogate) rep.surrogate_traces.emplace_back();
    for (int inner = 1; inner <= opts.max_inner; ++inner) {
      // One cross-product serves omega, t, and z (the closed-form loop is
      // the cheap one; keep it lean).
      const int k = static_cast<int>(h_eff.cols());
      const Eigen::MatrixXcd cross = h_eff.adjoint() * state.bf.f_aux;
      state.t.resize(k);
      state.z.resize(k);
      double numerator = 0.0;
      for (int q = 0; q < k; ++q) {
        const double row2 = cross.row(q).squaredNorm();
        const double sig = std::norm(cross(q, q));
        const double sinr = sig / (row2 - sig + sigma2);
        numerator += opts.dinkelbach_log_numerator ? std::log2(1.0 + sinr)
                                                   : 1.0 + sinr;
        state.t(q) = sinr;
        state.z(q) = std::sqrt(sinr + 1.0) * cross(q, q) /
                     (std::numbers::ln2 * (row2 + sigma2));
      }
      state.omega = update_omega(numerator, state.bf.f_aux.squaredNorm(), pm,
                                 config);
      state.bf.f_aux =
          ldtfp_update_f(h_eff, state.bf, state.omega, state.t, state.z,
                         state.mu, config.p_max, pm, opts.bisection)
              .f;
      if (digital) {
        state.bf.f_bb = state.bf.f_aux;
      } else {
        state.bf.f_rf =
            update_f_rf(state.bf.f_aux, state.bf.f_bb, config.analog_structure);
        state.bf.f_bb =
            update_f_bb(state.bf.f_aux, state.bf.f_rf, config.analog_structure);
      }

      ee = aux_energy_efficiency(h_eff, state.bf.f_aux, sigma2, eta, p_c);
      rep.objective_trace.push_back(ee);
      rep.residual_trace.push_back(
          digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm());
      ++rep.inner_iterations;
      if (ee > best_ee) {
        best_ee = ee;
        best_bf = state.bf;
      }
      if (opts.record_surrogate)
        rep.surrogate_traces.back().push_back(
            ldtfp_surrogate(h_eff, state, sigma2, eta, p_c));
      if (opts.on_iteration) opts.on_iteration(state.bf, outer, inner);

      const bool settled = std::abs(ee - ee_inner_prev) <=
                           opts.ee_tol * std::max(std::abs(ee_inner_prev), 1e-12);
      ee_inner_prev = ee;
      if (settled) break;
    }

    residual = digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
    const bool ee_settled = std::abs(ee - ee_outer_prev) <=
                            opts.ee_tol * std::max(std::abs(ee), 1e-12);
    if (ee_settled && residual <= opts.residual_tol * std::sqrt(config.p_max)) {
      rep.converged = true;
      break;
    }
    ee_outer_prev = ee;
    if (!digital) state.mu *= opts.c2;
  }

  if (!rep.converged && best_ee > ee) {
    state.bf = best_bf;
    rep.final_penalty_residual =
        digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
  } else {
    rep.final_penalty_residual = residual;
  }
  const double pt = state.bf.product().squaredNorm();
  if (pt > config.p_max) state.bf.f_bb *= std::sqrt(config.p_max / pt);

  out.bf = state.bf;
  const double final_se =
      spectral_efficiency(sinr_per_user(h_eff, out.bf.product(), sigma2));
  rep.final_objective = energy_efficiency(
      final_se, total_power(out.bf.product().squaredNorm(), config, pm));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return out;
}

}  // namespace trihybrid
