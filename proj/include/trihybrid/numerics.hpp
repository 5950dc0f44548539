// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>

#include "trihybrid/types.hpp"

namespace trihybrid {

struct BisectionSpec {
  double lower = 0.0;
  double upper = 1.0;  // initial bracket guess, doubled until it encloses
  double tol = 1e-8;   // relative power tolerance
  int max_iters = 200;
  int max_doublings = 60;
};

/// Finds the dual variable nu >= 0 of a single quadratic power constraint.
/// eval_power must be non-increasing in nu. Returns 0 when the constraint is
/// already inactive (complementary slackness), otherwise the nu at which the
/// power meets p_max within tol * p_max.
inline double bisect_dual(const std::function<double(double)>& eval_power,
                          double p_max, const BisectionSpec& spec = {}) {
  if (!(spec.lower >= 0.0) || !(spec.tol > 0.0) || !(spec.lower < spec.upper))
    throw ConfigError("invalid bisection spec");
  if (eval_power(spec.lower) <= p_max) return spec.lower;

  double hi = spec.upper;
  int doublings = 0;
  while (eval_power(hi) > p_max) {
    if (++doublings > spec.max_doublings)
      throw ConvergenceError("bisection bracket expansion failed");
    hi *= 2.0;
  }
  double lo = spec.lower;
  double mid = hi;
  for (int it = 0; it < spec.max_iters; ++it) {
    mid = 0.5 * (lo + hi);
    const double p = eval_power(mid);
    if (std::abs(p - p_max) <= spec.tol * p_max) return mid;
    if (p > p_max)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

struct PgSolverSpec {
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  double grad_tol = 1e-6;
  int max_iters = 500;
};

struct PgResult {
  Eigen::VectorXcd x;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // objective at each accepted iterate
};

/// Projected-gradient ascent of a concave functional over the complex ball
/// ||x||^2 <= radius_sq. Gradients follow the Wirtinger convention (derivative
/// with respect to the conjugate variable). The objective may return -inf to
/// mark points outside its effective domain; such trial steps are rejected by
/// the backtracking line search. The objective never decreases across
/// accepted steps.
inline PgResult maximize_concave_ball(
    const std::function<double(const Eigen::VectorXcd&)>& objective,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& gradient,
    double radius_sq, const Eigen::VectorXcd& start,
    const PgSolverSpec& spec = {}) {
  if (!(radius_sq > 0.0)) throw ConfigError("ball radius must be positive");
  if (!(spec.step_init > 0.0) ||
      !(spec.backtrack_factor > 0.0 && spec.backtrack_factor < 1.0) ||
      !(spec.grad_tol > 0.0) || spec.max_iters < 1)
    throw ConfigError("invalid projected-gradient options");
  const double radius = std::sqrt(radius_sq);
  const auto project = [radius](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    const double norm = v.norm();
    return norm > radius ? Eigen::VectorXcd(v * (radius / norm)) : v;
  };

  PgResult res;
  res.x = project(start);
  res.objective = objective(res.x);
  if (!std::isfinite(res.objective))
    throw NumericError("objective not finite at the start point");
  res.trace.push_back(res.objective);

  constexpr double kArmijo = 1e-4;
  double step = spec.step_init;
  for (int it = 0; it < spec.max_iters; ++it) {
    res.iterations = it;
    const Eigen::VectorXcd g = gradient(res.x);
    if (!g.allFinite()) throw NumericError("gradient not finite");

    // Gradient mapping with unit probe step; reduces to ||g|| in the interior.
    const double pg_norm = (project(res.x + g) - res.x).norm();
    if (pg_norm <= spec.grad_tol * (1.0 + std::abs(res.objective))) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    double s = step;
    for (int bt = 0; bt < 80; ++bt) {
      const Eigen::VectorXcd trial = project(res.x + s * g);
      const double f_trial = objective(trial);
      if (std::isnan(f_trial)) throw NumericError("objective returned NaN");
      // Directional derivative along d is 2 Re(g^H d) under the Wirtinger
      // convention.
      const double ascent = 2.0 * (g.dot(trial - res.x)).real();
      if (std::isfinite(f_trial) && f_trial >= res.objective + kArmijo * ascent &&
          f_trial >= res.objective) {
        res.x = trial;
        res.objective = f_trial;
        res.trace.push_back(f_trial);
        step = std::min(s * 2.0, 1e12);
        accepted = true;
        break;
      }
      s *= spec.backtrack_factor;
    }
    if (!accepted) break;  // step underflow: no further progress possible
  }
  return res;
}

struct SvdResult {
  Eigen::MatrixXcd u;
  Eigen::VectorXd singular_values;  // non-negative, descending
  Eigen::MatrixXcd v;
};

/// Thin SVD: input = u * diag(singular_values) * v^H.
inline SvdResult svd(const Eigen::MatrixXcd& matrix) {
  if (!matrix.allFinite()) throw NumericError("SVD input must be finite");
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(
      matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

struct RidgeBallSolution {
  Eigen::MatrixXcd f;  // one solution column per rhs column
  double nu = 0.0;     // dual variable of the ball constraint
};

/// Solves (M + (base + nu) I) f_i = rhs_i per column with nu >= 0 picked by
/// bisect_dual so that sum_i ||f_i||^2 <= p_max. M must be Hermitian PSD.
/// With base == 0 the nu = 0 solution is the minimum-norm (pseudo-inverse)
/// one; rank-deficient directions are excluded consistently for every nu.
inline RidgeBallSolution solve_ridge_ball(const Eigen::MatrixXcd& m_hermitian,
                                          const Eigen::MatrixXcd& rhs,
                                          double base, double p_max,
                                          const BisectionSpec& spec = {}) {
  if (m_hermitian.rows() != m_hermitian.cols() ||
      m_hermitian.rows() != rhs.rows())
    throw DimensionError("ridge solve shape mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_hermitian);
  if (es.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed");
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXcd g = es.eigenvectors().adjoint() * rhs;

  // Modes dropped when the shifted spectrum could vanish (pseudo-inverse).
  Eigen::ArrayXd keep = Eigen::ArrayXd::Ones(lambda.size());
  if (base <= 0.0) {
    const double cutoff = 1e-12 * std::max(lambda.maxCoeff(), 1.0);
    for (int i = 0; i < lambda.size(); ++i)
      if (lambda(i) <= cutoff) keep(i) = 0.0;
  }

  const auto power_at = [&](double nu) {
    double total = 0.0;
    for (int i = 0; i < lambda.size(); ++i) {
      if (keep(i) == 0.0) continue;
      const double denom = lambda(i) + base + nu;
      total += g.row(i).squaredNorm() / (denom * denom);
    }
    return total;
  };

  RidgeBallSolution sol;
  sol.nu = bisect_dual(power_at, p_max, spec);
  Eigen::MatrixXcd scaled = g;
  for (int i = 0; i < lambda.size(); ++i) {
    if (keep(i) == 0.0)
      scaled.row(i).setZero();
    else
      scaled.row(i) /= (lambda(i) + base + sol.nu);
  }
  sol.f = es.eigenvectors() * scaled;
  return sol;
}

}  // namespace trihybrid
