// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "trihybrid/types.hpp"

namespace trihybrid {

/// Normalized ULA response: entry m is exp(j*2*pi*d*m*sin(theta)/lambda)/sqrt(n).
inline Eigen::VectorXcd steering_vector(int n, double theta, double d,
                                        double wavelength = 1.0) {
  if (n < 1) throw DimensionError("steering vector needs n >= 1");
  Eigen::VectorXcd a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double phase_step = 2.0 * std::numbers::pi * d * std::sin(theta) / wavelength;
  for (int m = 0; m < n; ++m)
    a(m) = std::polar(scale, phase_step * static_cast<double>(m));
  return a;
}

namespace detail {

// Uniform double in [0,1) from the top 53 bits of a mt19937_64 draw.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller; hand-rolled so the draw sequence is identical on every
// platform for a given seed.
inline Complex standard_complex_gaussian(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0,1]
  const double u2 = uniform01(gen);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  // Unit total variance: each part N(0, 1/2).
  return Complex(radius * std::cos(angle), radius * std::sin(angle)) / std::sqrt(2.0);
}

}  // namespace detail

/// Draws a multipath channel over all RC candidate points. Path gains are
/// CN(0,1), departure angles uniform on (-pi/2, pi/2); every user gets
/// l_paths paths. Bit-for-bit reproducible per seed.
inline ExtendedChannel generate_extended_channel(const SystemConfig& config,
                                                 int l_paths,
                                                 std::uint64_t rng_seed) {
  if (l_paths < 1) throw ConfigError("need at least one path per user");
  std::mt19937_64 gen(rng_seed);

  ExtendedChannel ch;
  ch.h_bar = Eigen::MatrixXcd::Zero(config.n_em, config.k_users);
  ch.paths.resize(static_cast<size_t>(config.k_users));

  const double column_scale =
      std::sqrt(static_cast<double>(config.n_em) / static_cast<double>(l_paths));
  for (int k = 0; k < config.k_users; ++k) {
    auto& user_paths = ch.paths[static_cast<size_t>(k)];
    user_paths.reserve(static_cast<size_t>(l_paths));
    for (int l = 0; l < l_paths; ++l) {
      const Complex gain = detail::standard_complex_gaussian(gen);
      const double angle = (detail::uniform01(gen) - 0.5) * std::numbers::pi;
      user_paths.push_back({gain, angle});
      ch.h_bar.col(k) += column_scale * gain *
                         steering_vector(config.n_em, angle, config.d_p,
                                         config.wavelength);
    }
  }
  return ch;
}

/// Rebuilds a channel column from its stored path list (test oracle hook).
inline Eigen::VectorXcd channel_column_from_paths(const ExtendedChannel& ch,
                                                  int user, double d_p,
                                                  double wavelength = 1.0) {
  const auto& paths = ch.paths.at(static_cast<size_t>(user));
  Eigen::VectorXcd col = Eigen::VectorXcd::Zero(ch.n_em());
  const double scale = std::sqrt(static_cast<double>(ch.n_em()) /
                                 static_cast<double>(paths.size()));
  for (const auto& p : paths)
    col += scale * p.gain * steering_vector(ch.n_em(), p.angle, d_p, wavelength);
  return col;
}

enum class FeasibilityViolation { None, Binary, PortCount, Spacing };

struct Feasibility {
  bool feasible = false;
  FeasibilityViolation violation = FeasibilityViolation::None;
};

/// Checks the three selection constraints in order: binary entries, exactly
/// N_T ports, and minimum index spacing D_min between selected points.
inline Feasibility check_feasible(const std::vector<int>& r,
                                  const SystemConfig& config) {
  if (static_cast<int>(r.size()) != config.n_em)
    throw DimensionError("selection vector length must equal N_EM");
  for (int v : r)
    if (v != 0 && v != 1) return {false, FeasibilityViolation::Binary};
  int count = 0;
  for (int v : r) count += v;
  if (count != config.n_t) return {false, FeasibilityViolation::PortCount};
  const int d_min = config.d_min();
  int previous = -1;
  for (int n = 0; n < config.n_em; ++n) {
    if (r[static_cast<size_t>(n)] == 1) {
      if (previous >= 0 && n - previous < d_min)
        return {false, FeasibilityViolation::Spacing};
      previous = n;
    }
  }
  return {true, FeasibilityViolation::None};
}

inline Feasibility check_feasible(const RcSelection& sel,
                                  const SystemConfig& config) {
  return check_feasible(sel.r, config);
}

/// Gathers the selected rows of the extended channel: row m of the result is
/// row x_m of h_bar.
inline Eigen::MatrixXcd apply_selection(const ExtendedChannel& channel,
                                        const RcSelection& sel,
                                        const SystemConfig& config) {
  if (channel.n_em() != config.n_em)
    throw DimensionError("channel rows must equal N_EM");
  const Feasibility f = check_feasible(sel, config);
  if (!f.feasible) throw FeasibilityError("selection is infeasible");
  Eigen::MatrixXcd h_eff(config.n_t, channel.k_users());
  for (int m = 0; m < config.n_t; ++m)
    h_eff.row(m) = channel.h_bar.row(sel.index_set[static_cast<size_t>(m)] - 1);
  return h_eff;
}

/// Fixed-position baseline: N_T points on the half-wavelength grid
/// {1, 1+D_min, ..., 1+(N_T-1)*D_min}.
inline RcSelection fpa_baseline_selection(const SystemConfig& config) {
  const int d_min = config.d_min();
  const int last = 1 + (config.n_t - 1) * d_min;
  if (last > config.n_em)
    throw ConfigError("array too short for the fixed-position grid");
  std::vector<int> indices(static_cast<size_t>(config.n_t));
  for (int m = 0; m < config.n_t; ++m) indices[static_cast<size_t>(m)] = 1 + m * d_min;
  return RcSelection::from_indices(std::move(indices), config.n_em);
}

}  // namespace trihybrid
