// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "trihybrid/errors.hpp"

namespace trihybrid {

using Complex = std::complex<double>;

/// Analog network between RF chains and antenna ports.
enum class AnalogStructure {
  FullyConnected,     // one phase shifter per (port, chain) pair
  PartiallyConnected, // ports partitioned into per-chain blocks
  FullyDigital,       // no analog network, one chain per port
};

inline const char* to_string(AnalogStructure s) {
  switch (s) {
    case AnalogStructure::FullyConnected: return "FC";
    case AnalogStructure::PartiallyConnected: return "PC";
    case AnalogStructure::FullyDigital: return "FD";
  }
  return "?";
}

/// Array geometry and link-level constants. Lengths are in wavelengths
/// (wavelength normalized to 1), powers in linear milliwatts.
struct SystemConfig {
  int n_em = 80;      // selectable RC candidate points
  int n_t = 8;        // antenna ports (selected RCs)
  int n_rf = 4;       // RF chains
  int k_users = 4;    // single-antenna users
  double d_p = 0.1;   // candidate spacing, wavelengths
  double wavelength = 1.0;
  double noise_power = 10.0;  // mW
  double p_max = 1000.0;      // mW
  AnalogStructure analog_structure = AnalogStructure::FullyConnected;

  /// Minimum index spacing between selected RCs for >= lambda/2 separation.
  int d_min() const {
    return static_cast<int>(std::ceil(wavelength / (2.0 * d_p)));
  }

  /// Ports per RF chain in the partially connected structure.
  int n_s() const { return n_t / k_users; }

  void validate() const {
    if (n_em < 1 || n_t < 1 || n_rf < 1 || k_users < 1)
      throw ConfigError("all counts must be positive");
    if (!(k_users == n_rf && n_rf <= n_t && n_t <= n_em))
      throw ConfigError("required ordering K = N_RF <= N_T <= N_EM violated");
    if (!(d_p > 0.0) || !(wavelength > 0.0))
      throw ConfigError("spacing and wavelength must be positive");
    if (!(noise_power > 0.0)) throw ConfigError("noise power must be positive");
    if (!(p_max > 0.0)) throw ConfigError("power budget must be positive");
    if (analog_structure == AnalogStructure::PartiallyConnected &&
        n_t % k_users != 0)
      throw ConfigError("partially connected structure needs K | N_T");
  }
};

/// RF component power draw, linear milliwatts.
struct PowerModel {
  double eta_pa = 0.27;  // PA efficiency, in (0, 1]
  double p_lo = 22.5;    // local oscillator
  double p_rf = 31.6;    // per RF chain
  double p_dac = 128.0;  // per DAC (two per chain)
  double p_ps = 21.6;    // per phase shifter

  void validate() const {
    if (!(eta_pa > 0.0 && eta_pa <= 1.0))
      throw ConfigError("PA efficiency must lie in (0, 1]");
    if (!(p_lo > 0.0 && p_rf > 0.0 && p_dac > 0.0 && p_ps > 0.0))
      throw ConfigError("component powers must be positive");
  }
};

/// Binary RC selection with its 1-based index-set view. The two
/// representations are kept consistent at construction.
struct RcSelection {
  std::vector<int> r;          // 0/1 flags, length n_em
  std::vector<int> index_set;  // sorted selected indices, 1-based

  static RcSelection from_indices(std::vector<int> indices, int n_em) {
    RcSelection sel;
    std::sort(indices.begin(), indices.end());
    sel.r.assign(static_cast<size_t>(n_em), 0);
    for (int idx : indices) {
      if (idx < 1 || idx > n_em)
        throw DimensionError("selection index out of range [1, N_EM]");
      sel.r[static_cast<size_t>(idx - 1)] = 1;
    }
    sel.index_set = std::move(indices);
    return sel;
  }

  static RcSelection from_vector(std::vector<int> r_vec) {
    RcSelection sel;
    sel.index_set.reserve(r_vec.size());
    for (size_t n = 0; n < r_vec.size(); ++n) {
      if (r_vec[n] != 0 && r_vec[n] != 1)
        throw DomainError("selection vector entries must be 0 or 1");
      if (r_vec[n] == 1) sel.index_set.push_back(static_cast<int>(n + 1));
    }
    sel.r = std::move(r_vec);
    return sel;
  }

  bool operator==(const RcSelection& other) const {
    return index_set == other.index_set && r.size() == other.r.size();
  }
};

/// One propagation path of the Saleh-Valenzuela style model.
struct PathComponent {
  Complex gain;  // complex gain, CN(0,1) in generated channels
  double angle;  // angle of departure, radians
};

/// Dimension-extended channel over all RC candidate points.
struct ExtendedChannel {
  Eigen::MatrixXcd h_bar;  // n_em x k_users
  std::vector<std::vector<PathComponent>> paths;  // per user

  int n_em() const { return static_cast<int>(h_bar.rows()); }
  int k_users() const { return static_cast<int>(h_bar.cols()); }
};

/// Analog/digital beamformer pair plus the auxiliary full-dimension target
/// used by the penalty decomposition. For the fully digital structure f_rf
/// is the n_t x n_t identity and f_bb carries the full n_t x k precoder.
struct BeamformerSet {
  Eigen::MatrixXcd f_rf;
  Eigen::MatrixXcd f_bb;
  Eigen::MatrixXcd f_aux;

  Eigen::MatrixXcd product() const { return f_rf * f_bb; }
};

/// Convergence record shared by all iterative solvers.
struct SolveReport {
  std::vector<double> objective_trace;  // SE or EE per inner iteration
  std::vector<double> residual_trace;   // coupling distance per inner iteration
  double final_objective = 0.0;
  double final_penalty_residual = 0.0;
  int inner_iterations = 0;
  int outer_iterations = 0;
  bool converged = true;
  double wall_time_ms = 0.0;
  // Penalized-surrogate values per inner iteration, one vector per outer
  // round (recorded only on request).
  std::vector<std::vector<double>> surrogate_traces;
};

/// dBm <-> linear milliwatt conversions (CLI boundary only).
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace trihybrid
