// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trihybrid/rc_cod.hpp"

namespace trihybrid {

struct OracleReport {
  double best_value = 0.0;
  RcSelection best_selection;
  long evaluated_count = 0;
  std::vector<double> per_candidate_values;
};

/// Closed-form count of spacing-constrained selections:
/// C(N_EM - (N_T - 1)(D_min - 1), N_T).
inline long long count_feasible(const SystemConfig& config) {
  const long long slots =
      config.n_em - static_cast<long long>(config.n_t - 1) * (config.d_min() - 1);
  if (slots < config.n_t) return 0;
  long long count = 1;
  for (long long i = 1; i <= config.n_t; ++i)
    count = count * (slots - config.n_t + i) / i;
  return count;
}

/// Every feasible selection exactly once, in lexicographic index-set order.
/// Refuses configurations whose feasible set exceeds the cap.
inline std::vector<RcSelection> enumerate_feasible(const SystemConfig& config,
                                                   long long cap = 100000) {
  const long long total = count_feasible(config);
  if (total > cap)
    throw ConfigError("feasible set too large to enumerate");

  std::vector<RcSelection> all;
  all.reserve(static_cast<size_t>(total));
  std::vector<int> indices(static_cast<size_t>(config.n_t));
  const int d_min = config.d_min();

  const auto recurse = [&](auto&& self, int position, int first_allowed) -> void {
    if (position == config.n_t) {
      all.push_back(RcSelection::from_indices(indices, config.n_em));
      return;
    }
    const int remaining = config.n_t - position - 1;
    const int last_allowed = config.n_em - remaining * d_min;
    for (int n = first_allowed; n <= last_allowed; ++n) {
      indices[static_cast<size_t>(position)] = n;
      self(self, position + 1, n + d_min);
    }
  };
  recurse(recurse, 0, 1);
  return all;
}

/// Ground truth for the coordinate-descent search: the inner solver applied
/// to every feasible selection. Ties keep the lexicographically first.
inline OracleReport exhaustive_rc_opt(const ExtendedChannel& channel,
                                      const SystemConfig& config,
                                      const InnerSolver& solver,
                                      long long cap = 100000) {
  const std::vector<RcSelection> candidates = enumerate_feasible(config, cap);
  OracleReport report;
  report.per_candidate_values.reserve(candidates.size());
  bool first = true;
  for (const RcSelection& sel : candidates) {
    const InnerSolution sol = solver(apply_selection(channel, sel, config));
    report.per_candidate_values.push_back(sol.value);
    if (first || sol.value > report.best_value) {
      report.best_value = sol.value;
      report.best_selection = sel;
      first = false;
    }
  }
  report.evaluated_count = static_cast<long>(candidates.size());
  return report;
}

/// Central-difference Wirtinger gradient of a real functional over complex
/// vectors: entry i is (d/dRe + j d/dIm) / 2.
inline Eigen::VectorXcd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXcd&)>& objective,
    const Eigen::VectorXcd& point, double step = 1e-6) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  Eigen::VectorXcd grad(point.size());
  Eigen::VectorXcd probe = point;
  for (int i = 0; i < point.size(); ++i) {
    const Complex original = point(i);
    probe(i) = original + step;
    const double f_re_plus = objective(probe);
    probe(i) = original - step;
    const double f_re_minus = objective(probe);
    probe(i) = original + Complex(0.0, step);
    const double f_im_plus = objective(probe);
    probe(i) = original - Complex(0.0, step);
    const double f_im_minus = objective(probe);
    probe(i) = original;
    if (!std::isfinite(f_re_plus) || !std::isfinite(f_re_minus) ||
        !std::isfinite(f_im_plus) || !std::isfinite(f_im_minus))
      throw NumericError("objective not finite near the probe point");
    grad(i) = 0.5 * Complex((f_re_plus - f_re_minus) / (2.0 * step),
                            (f_im_plus - f_im_minus) / (2.0 * step));
  }
  return grad;
}

}  // namespace trihybrid
