// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "trihybrid/se_pdd.hpp"
#include "trihybrid/system_model.hpp"

namespace trihybrid {

/// Result of one inner beamforming solve at a candidate selection.
struct InnerSolution {
  double value = 0.0;  // SE or EE, the coordinate-descent objective
  BeamformerSet bf;
  SolveReport report;
};

/// Deterministic map from an effective channel to an inner solution.
using InnerSolver = std::function<InnerSolution(const Eigen::MatrixXcd&)>;

struct CodOptions {
  int max_sweeps = 5;  // full coordinate cycles before giving up
  std::optional<RcSelection> initial;  // default: gain-ranked candidates
};

struct CodResult {
  RcSelection selection;
  BeamformerSet bf;
  SolveReport report;
  std::vector<RcSelection> visited;  // incumbent after each iteration
};

/// Gain-ranked starting selection on the D_min candidate grid: pick the N_T
/// grid points with the largest summed channel magnitude. Ties go to the
/// lower index.
inline RcSelection init_selection(const ExtendedChannel& channel,
                                  const SystemConfig& config) {
  const int d_min = config.d_min();
  const int n_c = (config.n_em + d_min - 1) / d_min;
  if (n_c < config.n_t)
    throw ConfigError("candidate grid smaller than the port count");

  std::vector<std::pair<double, int>> gain_index;
  gain_index.reserve(static_cast<size_t>(n_c));
  for (int n = 0; n < n_c; ++n) {
    const int candidate = n * d_min + 1;
    const double gain =
        channel.h_bar.row(candidate - 1).cwiseAbs().sum();
    gain_index.emplace_back(gain, candidate);
  }
  std::sort(gain_index.begin(), gain_index.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<int> indices(static_cast<size_t>(config.n_t));
  for (int m = 0; m < config.n_t; ++m)
    indices[static_cast<size_t>(m)] = gain_index[static_cast<size_t>(m)].second;
  return RcSelection::from_indices(std::move(indices), config.n_em);
}

/// Testing set for coordinate m (1-based position in the sorted index set):
/// the incumbent first, then every feasible replacement of that index, in
/// candidate order.
inline std::vector<RcSelection> build_testing_set(const RcSelection& current,
                                                  int coordinate_m,
                                                  const SystemConfig& config) {
  if (coordinate_m < 1 || coordinate_m > config.n_t)
    throw DimensionError("coordinate index out of range [1, N_T]");
  if (!check_feasible(current, config).feasible)
    throw FeasibilityError("testing set requires a feasible incumbent");

  std::vector<RcSelection> testing;
  testing.push_back(current);
  const int replaced = current.index_set[static_cast<size_t>(coordinate_m - 1)];
  for (int n = 1; n <= config.n_em; ++n) {
    if (n == replaced) continue;  // reproduces the incumbent
    std::vector<int> indices = current.index_set;
    indices[static_cast<size_t>(coordinate_m - 1)] = n;
    // A replacement colliding with another selected index drops the port
    // count below N_T and is pruned with the rest.
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      continue;
    RcSelection candidate = RcSelection::from_indices(std::move(indices), config.n_em);
    if (check_feasible(candidate, config).feasible)
      testing.push_back(std::move(candidate));
  }
  return testing;
}

/// Cyclic coordinate descent over selected RC indices (the outer loop of the
/// tri-loop optimization). The incumbent's objective is cached, never
/// re-solved, so the trace is non-decreasing by construction; moves require
/// strict improvement. Stops once a full cycle leaves the selection unchanged.
inline CodResult run_cod(const ExtendedChannel& channel,
                         const SystemConfig& config, const InnerSolver& solver,
                         const CodOptions& opts = {}) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();

  RcSelection incumbent =
      opts.initial ? *opts.initial : init_selection(channel, config);
  if (!check_feasible(incumbent, config).feasible)
    throw FeasibilityError("initial selection is infeasible");

  InnerSolution best = solver(apply_selection(channel, incumbent, config));
  int evaluations = 1;

  CodResult out;
  out.report.converged = false;
  out.report.objective_trace.push_back(best.value);
  out.visited.push_back(incumbent);

  std::vector<std::vector<int>> history;  // index sets of r-hat per iteration
  history.push_back(incumbent.index_set);

  const int max_iters = opts.max_sweeps * config.n_t;
  for (int p = 1; p <= max_iters; ++p) {
    const int m = (p - 1) % config.n_t + 1;
    const std::vector<RcSelection> testing =
        build_testing_set(incumbent, m, config);
    for (size_t c = 1; c < testing.size(); ++c) {  // slot 0 is the incumbent
      InnerSolution candidate =
          solver(apply_selection(channel, testing[c], config));
      ++evaluations;
      if (candidate.value > best.value) {
        best = std::move(candidate);
        incumbent = testing[c];
      }
    }
    history.push_back(incumbent.index_set);
    out.report.objective_trace.push_back(best.value);
    out.visited.push_back(incumbent);
    out.report.outer_iterations = p;
    if (p >= config.n_t + 1 &&
        history[static_cast<size_t>(p)] ==
            history[static_cast<size_t>(p - config.n_t)]) {
      out.report.converged = true;
      break;
    }
  }

  out.selection = std::move(incumbent);
  // Both the coordinate loop and the winning inner solve must have settled.
  out.report.converged = out.report.converged && best.report.converged;
  out.bf = std::move(best.bf);
  out.report.inner_iterations = evaluations;
  out.report.final_objective = best.value;
  out.report.final_penalty_residual = best.report.final_penalty_residual;
  out.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t_start)
                                .count();
  return out;
}

}  // namespace trihybrid
