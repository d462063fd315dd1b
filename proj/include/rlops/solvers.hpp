// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlops/core.hpp"
#include "rlops/lift.hpp"
#include "rlops/mult_counter.hpp"
#include "rlops/operator.hpp"

namespace rlops {

struct SolverConfig {
  /// Iterations to run (records are kept for k = 0..max_iters).
  int max_iters = 50;

  /// Landweber step size. When absent it is estimated with
  /// estimate_step_size. Convergence requires 0 < alpha < 2 / sigma_max^2.
  std::optional<double> step_size;

  /// Early-stop threshold on the normal-equations residual norm
  /// ||A*(b - A x)||; 0 disables early stopping.
  double residual_tolerance = 0.0;
};

struct StepSizeEstimate {
  double alpha = 1.0;    ///< 1.9 / sigma_sq
  double sigma_sq = 0.0; ///< power-iteration estimate of sigma_max^2, +5% margin
  bool zero_operator = false;
};

/// Power iteration on x -> A*(A(x)) under the real inner product: 100
/// iterations or relative eigenvalue change below 1e-8, whichever first.
/// The estimate is inflated by a 5% safety margin and the returned step is
/// alpha = 1.9 / sigma_sq. A zero operator is flagged and gets alpha = 1
/// (any step is a fixed point there). Deterministic: the start vector comes
/// from a fixed internal seed.
StepSizeEstimate estimate_step_size(const RealLinearOp& op);
StepSizeEstimate estimate_step_size(const LiftedMap& map);

struct IterationRecord {
  int k = 0;
  double cost = 0.0;                 ///< ||A(x_k) - b||^2, reported, never charged
  std::uint64_t cum_real_mults = 0;  ///< counter total after this iteration
  double elapsed_seconds = 0.0;      ///< cumulative algorithm time (metric work excluded)
  CVec x;                            ///< complex-domain iterate (lifted runs unlift first)
};

struct SolverTrace {
  std::vector<IterationRecord> records; ///< records[k] for k = 0..iterations run
  bool stopped_early = false;
  std::string stop_reason;

  [[nodiscard]] const CVec& solution() const { return records.back().x; }
};

/// ||A(x) - b||^2. Charges the apply plus 2M for the squared norm.
double cost(const RealLinearOp& op, const CVec& b, const CVec& x, MultCounter& counter);

/// Lifted-coordinates counterpart of cost(); same value and same charges.
double lifted_cost(const LiftedMap& map, const RVec& b_lifted, const RVec& x_lifted,
                   MultCounter& counter);

// Fixed-step gradient descent x <- x + alpha A*(b - A x), natively complex
// and on the lifted system. With exact arithmetic the two produce the same
// iterates.
SolverTrace landweber(const RealLinearOp& op, const CVec& b, const CVec& x0,
                      const SolverConfig& config, MultCounter& counter);
SolverTrace landweber_lifted(const LiftedMap& map, const RVec& b_lifted, const RVec& x0_lifted,
                             const SolverConfig& config, MultCounter& counter);

// Conjugate gradient on the normal equations. The complex variant replaces
// every inner product with real_inner; with exact arithmetic it converges
// in at most 2N iterations, matching the lifted run iterate for iterate.
SolverTrace conjugate_gradient(const RealLinearOp& op, const CVec& b, const CVec& x0,
                               const SolverConfig& config, MultCounter& counter);
SolverTrace conjugate_gradient_lifted(const LiftedMap& map, const RVec& b_lifted,
                                      const RVec& x0_lifted, const SolverConfig& config,
                                      MultCounter& counter);

// Golub-Kahan bidiagonalization least-squares solver, with all inner
// products taken under the real inner product in the complex variant.
// Breakdown of a normalization scalar is treated as convergence.
SolverTrace lsqr(const RealLinearOp& op, const CVec& b, const CVec& x0,
                 const SolverConfig& config, MultCounter& counter);
SolverTrace lsqr_lifted(const LiftedMap& map, const RVec& b_lifted, const RVec& x0_lifted,
                        const SolverConfig& config, MultCounter& counter);

} // namespace rlops
