// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <numbers>

#include "trihybrid/metrics.hpp"
#include "trihybrid/numerics.hpp"

namespace trihybrid {

/// Alternating minimization state for the penalized WMMSE problem.
struct PddState {
  BeamformerSet bf;
  Eigen::VectorXcd u;
  Eigen::VectorXd w;
  double mu = 1.0;
};

struct SePddOptions {
  double mu_init = 1.0;
  double c1 = 0.5;          // penalty shrink factor, in (0,1)
  double se_tol = 1e-4;     // relative SE change, inner and outer
  int max_inner = 100;
  int max_outer = 15;
  double residual_tol = 1e-4;  // coupling residual target, times sqrt(P_max)
  bool finalize_equality = false;  // scale product to exactly P_max at the end
  bool record_surrogate = false;   // penalized objective per inner iteration
  BisectionSpec bisection{};
  std::function<void(const PddState&, int outer, int inner)> on_iteration;
};

/// MRT-style starting point: F matched to the channel at full power, analog
/// phases copied from the channel, diagonal digital scaling (Eqs. 26-29
/// pattern). Fully digital runs start from F with an identity analog stage.
inline BeamformerSet init_beamformers(const Eigen::MatrixXcd& h_eff,
                                      const SystemConfig& config) {
  const double h_norm = h_eff.norm();
  if (!(h_norm > 0.0)) throw DomainError("all-zero effective channel");
  const int n_t = static_cast<int>(h_eff.rows());
  const int k = static_cast<int>(h_eff.cols());

  BeamformerSet bf;
  bf.f_aux = (std::sqrt(config.p_max) / h_norm) * h_eff;

  switch (config.analog_structure) {
    case AnalogStructure::FullyConnected:
      bf.f_rf = h_eff.unaryExpr(
          [](Complex v) { return std::polar(1.0, std::arg(v)); });
      break;
    case AnalogStructure::PartiallyConnected: {
      const int n_s = config.n_s();
      bf.f_rf = Eigen::MatrixXcd::Zero(n_t, k);
      for (int b = 0; b < k; ++b)
        for (int i = 0; i < n_s; ++i)
          bf.f_rf(b * n_s + i, b) =
              std::polar(1.0, std::arg(h_eff(b * n_s + i, b)));
      break;
    }
    case AnalogStructure::FullyDigital:
      bf.f_rf = Eigen::MatrixXcd::Identity(n_t, n_t);
      bf.f_bb = bf.f_aux;
      return bf;
  }
  bf.f_bb = (std::sqrt(config.p_max) / bf.f_rf.norm()) *
            Eigen::MatrixXcd::Identity(k, k);
  return bf;
}

/// MMSE receive scalars: u_k = f_k^H h_k / (sum_i |h_k^H f_i|^2 + noise).
inline Eigen::VectorXcd update_u(const Eigen::MatrixXcd& h_eff,
                                 const Eigen::MatrixXcd& f_aux,
                                 double noise_power) {
  if (!(noise_power > 0.0)) throw DomainError("noise power must be positive");
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * f_aux;  // (u,i): h_u^H f_i
  Eigen::VectorXcd u(k);
  for (int q = 0; q < k; ++q)
    u(q) = std::conj(cross(q, q)) / (cross.row(q).squaredNorm() + noise_power);
  return u;
}

/// Per-user MSE e_k for given receive scalars and precoder columns.
inline Eigen::VectorXd mse_values(const Eigen::MatrixXcd& h_eff,
                                  const Eigen::MatrixXcd& f_aux,
                                  const Eigen::VectorXcd& u,
                                  double noise_power) {
  const int k = static_cast<int>(h_eff.cols());
  const Eigen::MatrixXcd cross = h_eff.adjoint() * f_aux;
  Eigen::VectorXd e(k);
  for (int q = 0; q < k; ++q)
    e(q) = std::norm(u(q)) * (cross.row(q).squaredNorm() + noise_power) + 1.0 -
           2.0 * (u(q) * cross(q, q)).real();
  return e;
}

/// WMMSE weights: w_k = 1 / (e_k ln 2).
inline Eigen::VectorXd update_w(const Eigen::VectorXd& e_values) {
  Eigen::VectorXd w(e_values.size());
  for (int k = 0; k < e_values.size(); ++k) {
    if (!(e_values(k) > 0.0)) throw DomainError("MSE values must be positive");
    w(k) = 1.0 / (e_values(k) * std::numbers::ln2);
  }
  return w;
}

struct FAuxUpdate {
  Eigen::MatrixXcd f;  // n_t x k
  double nu = 0.0;
};

/// Ball-constrained ridge solve for the auxiliary precoder. The normal
/// matrix decouples per column with a shared Hermitian part
/// M = sum_k w_k |u_k|^2 h_k h_k^H, so one eigendecomposition serves the
/// whole dual bisection.
inline FAuxUpdate update_f_aux(const Eigen::MatrixXcd& h_eff,
                               const BeamformerSet& bf,
                               const Eigen::VectorXcd& u,
                               const Eigen::VectorXd& w, double mu,
                               double p_max,
                               const BisectionSpec& bisection = {}) {
  if (!(mu > 0.0)) throw DomainError("penalty coefficient must be positive");
  const int n_t = static_cast<int>(h_eff.rows());
  const int k = static_cast<int>(h_eff.cols());
  const double half_inv_mu = 1.0 / (2.0 * mu);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_t, n_t);
  for (int q = 0; q < k; ++q)
    m.noalias() +=
        (w(q) * std::norm(u(q))) * (h_eff.col(q) * h_eff.col(q).adjoint());

  const Eigen::MatrixXcd anchor = bf.product();
  Eigen::MatrixXcd rhs(n_t, k);
  for (int q = 0; q < k; ++q)
    rhs.col(q) = w(q) * std::conj(u(q)) * h_eff.col(q) +
                 half_inv_mu * anchor.col(q);

  const RidgeBallSolution sol =
      solve_ridge_ball(m, rhs, half_inv_mu, p_max, bisection);
  return {sol.f, sol.nu};
}

/// Unpenalized WMMSE precoder update for the fully digital baseline: the
/// minimum-norm solution of the normal equations, shrunk onto the power ball
/// when it exceeds the budget.
inline FAuxUpdate update_f_digital(const Eigen::MatrixXcd& h_eff,
                                   const Eigen::VectorXcd& u,
                                   const Eigen::VectorXd& w, double p_max,
                                   const BisectionSpec& bisection = {}) {
  const int n_t = static_cast<int>(h_eff.rows());
  const int k = static_cast<int>(h_eff.cols());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_t, n_t);
  Eigen::MatrixXcd rhs(n_t, k);
  for (int q = 0; q < k; ++q) {
    m.noalias() +=
        (w(q) * std::norm(u(q))) * (h_eff.col(q) * h_eff.col(q).adjoint());
    rhs.col(q) = w(q) * std::conj(u(q)) * h_eff.col(q);
  }
  const RidgeBallSolution sol = solve_ridge_ball(m, rhs, 0.0, p_max, bisection);
  return {sol.f, sol.nu};
}

/// Constant-modulus analog update. Partially connected blocks are the exact
/// minimizers of the coupling distance; the fully connected rule is the
/// phase-projection heuristic.
inline Eigen::MatrixXcd update_f_rf(const Eigen::MatrixXcd& f_aux,
                                    const Eigen::MatrixXcd& f_bb,
                                    AnalogStructure structure) {
  const Eigen::MatrixXcd target = f_aux * f_bb.adjoint();
  const int n_t = static_cast<int>(f_aux.rows());
  const int k = static_cast<int>(f_bb.rows());
  switch (structure) {
    case AnalogStructure::FullyConnected:
      return target.unaryExpr(
          [](Complex v) { return std::polar(1.0, std::arg(v)); });
    case AnalogStructure::PartiallyConnected: {
      const int n_s = n_t / k;
      Eigen::MatrixXcd f_rf = Eigen::MatrixXcd::Zero(n_t, k);
      for (int b = 0; b < k; ++b)
        for (int i = 0; i < n_s; ++i)
          f_rf(b * n_s + i, b) =
              std::polar(1.0, std::arg(target(b * n_s + i, b)));
      return f_rf;
    }
    case AnalogStructure::FullyDigital:
      return Eigen::MatrixXcd::Identity(n_t, n_t);
  }
  throw ConfigError("unknown analog structure");
}

/// Digital update: least squares for the partially connected structure,
/// scaled orthogonal Procrustes for the fully connected one.
inline Eigen::MatrixXcd update_f_bb(const Eigen::MatrixXcd& f_aux,
                                    const Eigen::MatrixXcd& f_rf,
                                    AnalogStructure structure) {
  switch (structure) {
    case AnalogStructure::PartiallyConnected: {
      const Eigen::MatrixXcd gram = f_rf.adjoint() * f_rf;
      Eigen::LLT<Eigen::MatrixXcd> llt(gram);
      if (llt.info() != Eigen::Success)
        throw NumericError("rank-deficient analog matrix in LS update");
      return llt.solve(f_rf.adjoint() * f_aux);
    }
    case AnalogStructure::FullyConnected: {
      const SvdResult s = svd(f_aux.adjoint() * f_rf);
      Eigen::MatrixXcd f_bb = s.v * s.u.adjoint();
      const double product_norm = (f_rf * f_bb).norm();
      if (product_norm > 0.0) f_bb *= f_aux.norm() / product_norm;
      return f_bb;
    }
    case AnalogStructure::FullyDigital:
      return f_aux;
  }
  throw ConfigError("unknown analog structure");
}

/// Penalized WMMSE objective L1 = sum_k (w_k e_k - log2 w_k)
/// + ||F - F_RF F_BB||_F^2 / (2 mu). Decreases across exact block updates.
inline double penalized_objective_l1(const Eigen::MatrixXcd& h_eff,
                                     const PddState& state,
                                     double noise_power) {
  const Eigen::VectorXd e =
      mse_values(h_eff, state.bf.f_aux, state.u, noise_power);
  double value = 0.0;
  for (int k = 0; k < e.size(); ++k)
    value += state.w(k) * e(k) - std::log2(state.w(k));
  value += (state.bf.f_aux - state.bf.product()).squaredNorm() /
           (2.0 * state.mu);
  return value;
}

struct SeSolution {
  BeamformerSet bf;
  SolveReport report;
};

/// WMMSE-based penalty-dual-decomposition solver for sum-rate maximization at
/// a fixed RC selection. The inner loop alternates the five block updates to
/// SE convergence; the outer loop shrinks the penalty coefficient until the
/// coupling residual is below residual_tol * sqrt(P_max). Fully digital runs
/// skip the analog/digital split and the penalty entirely.
inline SeSolution solve_se(const Eigen::MatrixXcd& h_eff,
                           const SystemConfig& config,
                           const SePddOptions& opts = {}) {
  config.validate();
  if (h_eff.rows() != config.n_t || h_eff.cols() != config.k_users)
    throw DimensionError("effective channel must be N_T x K");
  if (!(opts.mu_init > 0.0) || !(opts.c1 > 0.0 && opts.c1 < 1.0) ||
      !(opts.se_tol > 0.0) || opts.max_inner < 1 || opts.max_outer < 1)
    throw ConfigError("invalid solver options");
  const auto t_start = std::chrono::steady_clock::now();
  const bool digital =
      config.analog_structure == AnalogStructure::FullyDigital;
  const double sigma2 = config.noise_power;

  PddState state;
  state.bf = init_beamformers(h_eff, config);
  state.mu = opts.mu_init;

  SeSolution out;
  SolveReport& rep = out.report;
  rep.converged = false;

  double se = 0.0;
  double se_inner_prev = -std::numeric_limits<double>::infinity();
  double se_outer_prev = -std::numeric_limits<double>::infinity();
  double residual = 0.0;
  double best_se = -std::numeric_limits<double>::infinity();
  BeamformerSet best_bf;

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    rep.outer_iterations = outer;
    if (opts.record_surrogate) rep.surrogate_traces.emplace_back();
    for (int inner = 1; inner <= opts.max_inner; ++inner) {
      state.u = update_u(h_eff, state.bf.f_aux, sigma2);
      state.w = update_w(mse_values(h_eff, state.bf.f_aux, state.u, sigma2));
      if (digital) {
        state.bf.f_aux =
            update_f_digital(h_eff, state.u, state.w, config.p_max,
                             opts.bisection)
                .f;
        state.bf.f_bb = state.bf.f_aux;
      } else {
        state.bf.f_aux = update_f_aux(h_eff, state.bf, state.u, state.w,
                                      state.mu, config.p_max, opts.bisection)
                             .f;
        state.bf.f_rf =
            update_f_rf(state.bf.f_aux, state.bf.f_bb, config.analog_structure);
        state.bf.f_bb =
            update_f_bb(state.bf.f_aux, state.bf.f_rf, config.analog_structure);
      }

      se = spectral_efficiency(sinr_per_user(h_eff, state.bf.f_aux, sigma2));
      rep.objective_trace.push_back(se);
      rep.residual_trace.push_back(
          digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm());
      ++rep.inner_iterations;
      if (se > best_se) {
        best_se = se;
        best_bf = state.bf;
      }
      if (opts.record_surrogate)
        rep.surrogate_traces.back().push_back(
            penalized_objective_l1(h_eff, state, sigma2));
      if (opts.on_iteration) opts.on_iteration(state, outer, inner);

      const bool settled =
          std::abs(se - se_inner_prev) <= opts.se_tol * std::max(1.0, std::abs(se_inner_prev));
      se_inner_prev = se;
      if (settled) break;
    }

    residual = digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
    const bool se_settled =
        std::abs(se - se_outer_prev) <= opts.se_tol * std::max(1.0, std::abs(se));
    if (se_settled && residual <= opts.residual_tol * std::sqrt(config.p_max)) {
      rep.converged = true;
      break;
    }
    se_outer_prev = se;
    state.mu *= opts.c1;
  }

  // A budget-exhausted run hands back its best iterate instead of the last.
  if (!rep.converged && best_se > se) {
    state.bf = best_bf;
    rep.final_penalty_residual =
        digital ? 0.0 : (state.bf.f_aux - state.bf.product()).norm();
  } else {
    rep.final_penalty_residual = residual;
  }

  // Feasibility repair on the reported product; uniform scaling of all
  // columns up to the budget never reduces the sum rate.
  const double pt = state.bf.product().squaredNorm();
  if (pt > 0.0 &&
      (pt > config.p_max || (opts.finalize_equality && pt < config.p_max)))
    state.bf.f_bb *= std::sqrt(config.p_max / pt);

  out.bf = state.bf;
  rep.final_objective =
      spectral_efficiency(sinr_per_user(h_eff, out.bf.product(), sigma2));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return out;
}

}  // namespace trihybrid
