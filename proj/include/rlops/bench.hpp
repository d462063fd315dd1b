// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlops/core.hpp"
#include "rlops/solvers.hpp"

namespace rlops::bench {

/// The four ways of evaluating the same stacked least-squares problem.
enum class Approach {
  RealMatrix,     ///< precomputed dense lifted matrix
  ComplexMatrix,  ///< precomputed complex (F, G) pair
  RealFuncall,    ///< lifted matvec emulated with constituent function calls
  ComplexFuncall, ///< complex operator tree over blackbox constituents
};

enum class SolverKind { Landweber, CG, LSQR };

const char* approach_name(Approach a);
const char* solver_name(SolverKind s);
Approach approach_from_name(const std::string& name);
SolverKind solver_from_name(const std::string& name);

/// A random instance of min_x ||A x - b||^2 + lambda ||C x - D conj(E x)||^2
/// with i.i.d. standard Gaussian real and imaginary parts everywhere and
/// b = A x_true + noise (exactly). Regeneration from the same seed is
/// bit-identical.
struct BenchProblem {
  CMat A; ///< M1 x N
  CMat C; ///< M2 x N
  CMat D; ///< M2 x P
  CMat E; ///< P x N
  CVec x_true; ///< N
  CVec noise;  ///< M1
  CVec b;      ///< M1, = A x_true + noise
  double lambda = 0.0;
  std::uint64_t seed = 0;
  Index n = 0, m1 = 0, m2 = 0, p = 0;
};

BenchProblem generate_problem(std::uint64_t seed, Index n, Index m1, Index m2, Index p,
                              double lambda);

/// Dense closed-form minimizer (gram-solve of the lifted system), for
/// validation only. Throws with a condition estimate when the gram matrix
/// is numerically singular.
CVec oracle_solve(const LiftedMatrix& lifted, const RVec& b_lifted);
CVec oracle_solve(const RealLinearOp& op, const CVec& b);
CVec oracle_solve(const BenchProblem& problem);

struct MetricsRow {
  std::string approach;
  std::string solver;
  int iteration = 0;
  std::uint64_t cum_real_mults = 0;
  double cost = 0.0;
  double elapsed_seconds = 0.0;
  /// ||p - q|| / ||(p+q)/2|| against the real-matrix iterate at the same
  /// iteration; 0 for the reference itself, NaN when the reference approach
  /// was not part of the run.
  double rel_diff = 0.0;
};

struct BenchOptions {
  std::vector<Approach> approaches = {Approach::RealMatrix, Approach::ComplexMatrix,
                                      Approach::RealFuncall, Approach::ComplexFuncall};
  std::vector<SolverKind> solvers = {SolverKind::Landweber, SolverKind::CG, SolverKind::LSQR};
  int iters_landweber = 50;
  int iters_krylov = 15;
  /// Extra timed repeats per (approach, solver); their per-iteration times
  /// are averaged into elapsed_seconds. 0 keeps the metric pass's own times.
  int timing_repeats = 3;
};

/// Run every requested (approach, solver) pair on the problem and collect
/// one row per iteration (including iteration 0). Metric passes run first;
/// timed repeats run afterwards, serially. All approaches share one
/// Landweber step size, estimated once from the problem.
std::vector<MetricsRow> run_benchmark(const BenchProblem& problem, const BenchOptions& options);

struct ValidationRow {
  std::string approach;
  std::string solver;
  double rel_deviation = 0.0; ///< final iterate vs the dense closed form
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  /// Largest CG/LSQR deviation; 0 when no Krylov solver was selected.
  double max_krylov_deviation = 0.0;
  /// max_krylov_deviation <= 1e-4. Landweber rows are informational only
  /// (a first-order method needs far more iterations to tighten).
  bool krylov_within_threshold = true;
};

/// Solve the dense closed form and compare every selected pair's final
/// iterate against it (metric-only passes; timing_repeats is ignored).
ValidationReport validate_against_oracle(const BenchProblem& problem,
                                         const BenchOptions& options);

/// CSV with header approach,solver,iteration,cum_real_mults,cost,
/// elapsed_seconds,rel_diff; floats carry 17 significant digits; rows are
/// sorted by (approach, solver, iteration). Throws on I/O failure.
void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path);

} // namespace rlops::bench
