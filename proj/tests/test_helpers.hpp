// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "trihybrid/trihybrid.hpp"

namespace test_helpers {

using trihybrid::Complex;

inline Complex gaussian(std::mt19937_64& gen) {
  return trihybrid::detail::standard_complex_gaussian(gen);
}

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gaussian(gen);
  return m;
}

inline Eigen::VectorXcd random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian(gen);
  return v;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * trihybrid::detail::uniform01(gen);
}

// Literal selector block S_k (n_t x n_t*K): zeros except an identity in
// block k. Used to build the stacked forms the solvers avoid materializing.
inline Eigen::MatrixXcd selector_block(int k, int n_t, int users) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n_t, n_t * users);
  s.block(0, k * n_t, n_t, n_t) = Eigen::MatrixXcd::Identity(n_t, n_t);
  return s;
}

// Literal stacked channel of user k: column i is S_i^H h_k.
inline Eigen::MatrixXcd stacked_channel(const Eigen::MatrixXcd& h_eff, int k) {
  const int n_t = static_cast<int>(h_eff.rows());
  const int users = static_cast<int>(h_eff.cols());
  Eigen::MatrixXcd ht = Eigen::MatrixXcd::Zero(n_t * users, users);
  for (int i = 0; i < users; ++i)
    ht.block(i * n_t, i, n_t, 1) = h_eff.col(k);
  return ht;
}

inline Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline trihybrid::SystemConfig small_config(
    int n_em, int n_t, int k, double p_max_mw = 1000.0,
    trihybrid::AnalogStructure s = trihybrid::AnalogStructure::FullyConnected) {
  trihybrid::SystemConfig c;
  c.n_em = n_em;
  c.n_t = n_t;
  c.n_rf = k;
  c.k_users = k;
  c.d_p = 0.1;
  c.noise_power = 10.0;
  c.p_max = p_max_mw;
  c.analog_structure = s;
  return c;
}

}  // namespace test_helpers
