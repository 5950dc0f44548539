// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trihybrid/types.hpp"

namespace trihybrid {

/// Per-user SINR for precoder columns f_i against channel columns h_k:
/// gamma_k = |h_k^H f_k|^2 / (sum_{i != k} |h_k^H f_i|^2 + noise).
inline Eigen::VectorXd sinr_per_user(const Eigen::MatrixXcd& h_eff,
                                     const Eigen::MatrixXcd& precoder,
                                     double noise_power) {
  if (h_eff.rows() != precoder.rows() || h_eff.cols() != precoder.cols())
    throw DimensionError("channel and precoder shapes must match");
  if (!(noise_power > 0.0)) throw DomainError("noise power must be positive");
  const int k = static_cast<int>(h_eff.cols());
  // Row k of cross holds h_k^H f_i for all i.
  const Eigen::MatrixXcd cross = h_eff.adjoint() * precoder;
  Eigen::VectorXd sinr(k);
  for (int u = 0; u < k; ++u) {
    double signal = std::norm(cross(u, u));
    double interference = 0.0;
    for (int i = 0; i < k; ++i)
      if (i != u) interference += std::norm(cross(u, i));
    sinr(u) = signal / (interference + noise_power);
  }
  return sinr;
}

/// Sum rate in bits/s/Hz.
inline double spectral_efficiency(const Eigen::VectorXd& sinrs) {
  double se = 0.0;
  for (int k = 0; k < sinrs.size(); ++k) {
    if (sinrs(k) < 0.0) throw DomainError("SINR must be non-negative");
    se += std::log2(1.0 + sinrs(k));
  }
  return se;
}

/// Radiated power ||F_RF F_BB||_F^2 in mW.
inline double transmit_power(const BeamformerSet& bf) {
  return bf.product().squaredNorm();
}

namespace detail {

// Phase-shifter count per structure; the fully digital baseline has none.
inline int phase_shifter_count(const SystemConfig& config) {
  switch (config.analog_structure) {
    case AnalogStructure::FullyConnected: return config.n_t * config.n_rf;
    case AnalogStructure::PartiallyConnected: return config.n_t;
    case AnalogStructure::FullyDigital: return 0;
  }
  return 0;
}

// RF chain count entering the power model. The fully digital baseline
// drives every port with its own chain.
inline int rf_chain_count(const SystemConfig& config) {
  return config.analog_structure == AnalogStructure::FullyDigital ? config.n_t
                                                                  : config.n_rf;
}

}  // namespace detail

/// Static circuit power: P_LO + N_RF (P_RF + 2 P_DAC) + N_PS P_PS.
inline double circuit_power(const SystemConfig& config, const PowerModel& pm) {
  const double chains = static_cast<double>(detail::rf_chain_count(config));
  const double shifters = static_cast<double>(detail::phase_shifter_count(config));
  return pm.p_lo + chains * (pm.p_rf + 2.0 * pm.p_dac) + shifters * pm.p_ps;
}

/// Total consumption: PA-referred transmit power plus circuit power.
inline double total_power(double pt, const SystemConfig& config,
                          const PowerModel& pm) {
  if (pt < 0.0) throw DomainError("transmit power must be non-negative");
  return pt / pm.eta_pa + circuit_power(config, pm);
}

/// bits/Hz per mW of total consumption.
inline double energy_efficiency(double se, double p_total) {
  if (!(p_total > 0.0)) throw DomainError("total power must be positive");
  return se / p_total;
}

}  // namespace trihybrid
