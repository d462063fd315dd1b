// SPDX-License-Identifier: Apache-2.0

#include "rlops/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <tuple>

#include "rlops/builtins.hpp"
#include "rlops/lift.hpp"

namespace rlops::bench {

const char* approach_name(Approach a) {
  switch (a) {
    case Approach::RealMatrix: return "real-matrix";
    case Approach::ComplexMatrix: return "complex-matrix";
    case Approach::RealFuncall: return "real-funcall";
    case Approach::ComplexFuncall: return "complex-funcall";
  }
  throw std::invalid_argument("unknown approach");
}

const char* solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::Landweber: return "landweber";
    case SolverKind::CG: return "cg";
    case SolverKind::LSQR: return "lsqr";
  }
  throw std::invalid_argument("unknown solver");
}

Approach approach_from_name(const std::string& name) {
  if (name == "real-matrix") return Approach::RealMatrix;
  if (name == "complex-matrix") return Approach::ComplexMatrix;
  if (name == "real-funcall") return Approach::RealFuncall;
  if (name == "complex-funcall") return Approach::ComplexFuncall;
  throw std::invalid_argument("unknown approach: " + name);
}

SolverKind solver_from_name(const std::string& name) {
  if (name == "landweber") return SolverKind::Landweber;
  if (name == "cg") return SolverKind::CG;
  if (name == "lsqr") return SolverKind::LSQR;
  throw std::invalid_argument("unknown solver: " + name);
}

namespace {

// Gaussian variates via a fixed Box-Muller transform over mt19937_64, so a
// seed regenerates the exact same problem on any platform.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();       // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

CMat random_matrix(GaussianStream& g, Index rows, Index cols) {
  CMat out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(g.next(), g.next());
  return out;
}

CVec random_vector(GaussianStream& g, Index n) {
  CVec out(n);
  for (Index i = 0; i < n; ++i) out[i] = Complex(g.next(), g.next());
  return out;
}

} // namespace

BenchProblem generate_problem(std::uint64_t seed, Index n, Index m1, Index m2, Index p,
                              double lambda) {
  detail::require(n > 0 && m1 > 0 && m2 > 0 && p > 0,
                  "generate_problem: dimensions must be positive");
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "generate_problem: lambda must be positive");

  GaussianStream g(seed);
  BenchProblem prob;
  prob.seed = seed;
  prob.n = n;
  prob.m1 = m1;
  prob.m2 = m2;
  prob.p = p;
  prob.lambda = lambda;
  prob.A = random_matrix(g, m1, n);
  prob.C = random_matrix(g, m2, n);
  prob.D = random_matrix(g, m2, p);
  prob.E = random_matrix(g, p, n);
  prob.x_true = random_vector(g, n);
  prob.noise = random_vector(g, m1);
  prob.b = prob.A * prob.x_true + prob.noise;
  return prob;
}

CVec oracle_solve(const LiftedMatrix& lifted, const RVec& b_lifted) {
  detail::require(b_lifted.size() == lifted.lifted_rows(), "oracle_solve: data length mismatch");
  const RMat& at = lifted.matrix();
  const RMat gram = at.transpose() * at;

  Eigen::SelfAdjointEigenSolver<RMat> eig(gram);
  detail::require(eig.info() == Eigen::Success, "oracle_solve: eigendecomposition failed");
  const double lambda_max = eig.eigenvalues().maxCoeff();
  const double lambda_min = eig.eigenvalues().minCoeff();
  if (!(lambda_min > lambda_max * 1e-14)) {
    const double cond =
        lambda_min > 0.0 ? lambda_max / lambda_min : std::numeric_limits<double>::infinity();
    throw std::runtime_error("oracle_solve: singular gram matrix (condition estimate " +
                             std::to_string(cond) + ")");
  }
  const RVec rhs = at.transpose() * b_lifted;
  const RVec solution = eig.eigenvectors() *
                        (eig.eigenvectors().transpose() * rhs).cwiseQuotient(eig.eigenvalues());
  return unlift_vector(solution);
}

CVec oracle_solve(const RealLinearOp& op, const CVec& b) {
  return oracle_solve(lift_operator(op), lift_vector(b));
}

namespace {

CVec stacked_data(const BenchProblem& prob) {
  CVec b_sys = CVec::Zero(prob.m1 + prob.m2);
  b_sys.head(prob.m1) = prob.b;
  return b_sys;
}

std::uint64_t dense_charge(Index rows, Index cols) {
  return 4ull * static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols);
}

// Blackbox views of a stored matrix: only the callables are handed out, the
// way an externally supplied operator would arrive.
RealLinearOp wrap_blackbox(const std::shared_ptr<const CMat>& mat) {
  const Index rows = mat->rows();
  const Index cols = mat->cols();
  return blackbox_op(
      rows, cols, [mat](const CVec& x) { return CVec(*mat * x); },
      [mat](const CVec& y) { return CVec(mat->adjoint() * y); }, dense_charge(rows, cols),
      dense_charge(rows, cols));
}

struct ProblemOperators {
  std::unique_ptr<LiftedMatrix> real_matrix;
  RealLinearOp complex_matrix;
  std::unique_ptr<NaiveFuncallMap> real_funcall;
  RealLinearOp complex_funcall;
};

bool wants(const std::vector<Approach>& list, Approach a) {
  return std::find(list.begin(), list.end(), a) != list.end();
}

bool wants(const std::vector<SolverKind>& list, SolverKind s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

ProblemOperators build_operators(const BenchProblem& prob, const std::vector<Approach>& which) {
  ProblemOperators ops;
  const double root = std::sqrt(prob.lambda);

  if (wants(which, Approach::RealMatrix))
    ops.real_matrix = std::make_unique<LiftedMatrix>(
        conjugate_penalty_lifted(prob.A, prob.C, prob.D, prob.E, prob.lambda));

  if (wants(which, Approach::ComplexMatrix)) {
    // Precomputed pair: F = [A; sqrt(l) C], G = [0; -sqrt(l) conj(D) E].
    CMat f(prob.m1 + prob.m2, prob.n);
    f.topRows(prob.m1) = prob.A;
    f.bottomRows(prob.m2) = root * prob.C;
    CMat g = CMat::Zero(prob.m1 + prob.m2, prob.n);
    g.bottomRows(prob.m2) = -root * (prob.D.conjugate() * prob.E);
    ops.complex_matrix = matrix_op(std::move(f), std::move(g));
  }

  if (wants(which, Approach::RealFuncall) || wants(which, Approach::ComplexFuncall)) {
    auto a = std::make_shared<const CMat>(prob.A);
    auto c = std::make_shared<const CMat>(prob.C);
    auto d = std::make_shared<const CMat>(prob.D);
    auto e = std::make_shared<const CMat>(prob.E);
    RealLinearOp bb_a = wrap_blackbox(a);
    RealLinearOp bb_c = wrap_blackbox(c);
    RealLinearOp bb_d = wrap_blackbox(d);
    RealLinearOp bb_e = wrap_blackbox(e);
    if (wants(which, Approach::RealFuncall))
      ops.real_funcall = std::make_unique<NaiveFuncallMap>(
          NaiveFuncallMap::conjugate_penalty(bb_a, bb_c, bb_d, bb_e, prob.lambda));
    if (wants(which, Approach::ComplexFuncall))
      ops.complex_funcall = conjugate_penalty_system(bb_a, bb_c, bb_d, bb_e, prob.lambda);
  }
  return ops;
}

SolverTrace run_one(const ProblemOperators& ops, Approach approach, SolverKind solver,
                    const BenchProblem& prob, const CVec& b_sys, const RVec& b_lifted,
                    const SolverConfig& config) {
  MultCounter counter;
  const CVec x0 = CVec::Zero(prob.n);
  const RVec x0_lifted = RVec::Zero(2 * prob.n);

  switch (approach) {
    case Approach::RealMatrix:
      switch (solver) {
        case SolverKind::Landweber:
          return landweber_lifted(*ops.real_matrix, b_lifted, x0_lifted, config, counter);
        case SolverKind::CG:
          return conjugate_gradient_lifted(*ops.real_matrix, b_lifted, x0_lifted, config, counter);
        case SolverKind::LSQR:
          return lsqr_lifted(*ops.real_matrix, b_lifted, x0_lifted, config, counter);
      }
      break;
    case Approach::RealFuncall:
      switch (solver) {
        case SolverKind::Landweber:
          return landweber_lifted(*ops.real_funcall, b_lifted, x0_lifted, config, counter);
        case SolverKind::CG:
          return conjugate_gradient_lifted(*ops.real_funcall, b_lifted, x0_lifted, config,
                                           counter);
        case SolverKind::LSQR:
          return lsqr_lifted(*ops.real_funcall, b_lifted, x0_lifted, config, counter);
      }
      break;
    case Approach::ComplexMatrix:
    case Approach::ComplexFuncall: {
      const RealLinearOp& op =
          approach == Approach::ComplexMatrix ? ops.complex_matrix : ops.complex_funcall;
      switch (solver) {
        case SolverKind::Landweber: return landweber(op, b_sys, x0, config, counter);
        case SolverKind::CG: return conjugate_gradient(op, b_sys, x0, config, counter);
        case SolverKind::LSQR: return lsqr(op, b_sys, x0, config, counter);
      }
      break;
    }
  }
  throw std::invalid_argument("run_benchmark: unknown approach/solver");
}

} // namespace

CVec oracle_solve(const BenchProblem& problem) {
  const LiftedMatrix lifted =
      conjugate_penalty_lifted(problem.A, problem.C, problem.D, problem.E, problem.lambda);
  return oracle_solve(lifted, lift_vector(stacked_data(problem)));
}

namespace {

struct BenchRun {
  ProblemOperators ops;
  CVec b_sys;
  RVec b_lifted;
  SolverConfig landweber_config;
  SolverConfig krylov_config;
  std::map<std::pair<int, int>, SolverTrace> traces;

  const SolverConfig& config_for(SolverKind s) const {
    return s == SolverKind::Landweber ? landweber_config : krylov_config;
  }
  const SolverTrace& trace(Approach a, SolverKind s) const {
    return traces.at({static_cast<int>(a), static_cast<int>(s)});
  }
};

// Metric-only pass over every requested (approach, solver) pair.
BenchRun run_metric_passes(const BenchProblem& problem, const BenchOptions& options) {
  detail::require(!options.approaches.empty(), "run_benchmark: no approaches selected");
  detail::require(!options.solvers.empty(), "run_benchmark: no solvers selected");
  detail::require(options.iters_landweber >= 0 && options.iters_krylov >= 0,
                  "run_benchmark: negative iteration count");

  BenchRun run;
  run.ops = build_operators(problem, options.approaches);
  run.b_sys = stacked_data(problem);
  run.b_lifted = lift_vector(run.b_sys);

  // One step size for every approach: the iterate-level equivalence only
  // holds when all four run the identical recurrence. Estimated from the
  // cheap funcall representation to avoid materializing anything large.
  run.landweber_config.max_iters = options.iters_landweber;
  if (wants(options.solvers, SolverKind::Landweber)) {
    auto a = std::make_shared<const CMat>(problem.A);
    auto c = std::make_shared<const CMat>(problem.C);
    auto d = std::make_shared<const CMat>(problem.D);
    auto e = std::make_shared<const CMat>(problem.E);
    const RealLinearOp estimator = conjugate_penalty_system(
        wrap_blackbox(a), wrap_blackbox(c), wrap_blackbox(d), wrap_blackbox(e), problem.lambda);
    run.landweber_config.step_size = estimate_step_size(estimator).alpha;
  }
  run.krylov_config.max_iters = options.iters_krylov;

  for (Approach a : options.approaches)
    for (SolverKind s : options.solvers)
      run.traces[{static_cast<int>(a), static_cast<int>(s)}] =
          run_one(run.ops, a, s, problem, run.b_sys, run.b_lifted, run.config_for(s));
  return run;
}

} // namespace

std::vector<MetricsRow> run_benchmark(const BenchProblem& problem, const BenchOptions& options) {
  detail::require(options.timing_repeats >= 0, "run_benchmark: negative repeat count");
  BenchRun run = run_metric_passes(problem, options);
  const ProblemOperators& ops = run.ops;
  const CVec& b_sys = run.b_sys;
  const RVec& b_lifted = run.b_lifted;
  std::map<std::pair<int, int>, SolverTrace>& traces = run.traces;
  auto config_for = [&](SolverKind s) { return run.config_for(s); };

  // Timed repeats afterwards, serially; only their times are kept.
  std::map<std::pair<int, int>, std::vector<double>> avg_elapsed;
  for (Approach a : options.approaches) {
    for (SolverKind s : options.solvers) {
      const auto key = std::make_pair(static_cast<int>(a), static_cast<int>(s));
      const SolverTrace& base = traces[key];
      std::vector<double> sums(base.records.size(), 0.0);
      if (options.timing_repeats > 0) {
        for (int rep = 0; rep < options.timing_repeats; ++rep) {
          const SolverTrace timed = run_one(ops, a, s, problem, b_sys, b_lifted, config_for(s));
          for (std::size_t k = 0; k < sums.size() && k < timed.records.size(); ++k)
            sums[k] += timed.records[k].elapsed_seconds;
        }
        for (double& v : sums) v /= options.timing_repeats;
      } else {
        for (std::size_t k = 0; k < sums.size(); ++k) sums[k] = base.records[k].elapsed_seconds;
      }
      avg_elapsed[key] = std::move(sums);
    }
  }

  const bool have_reference = wants(options.approaches, Approach::RealMatrix);
  std::vector<MetricsRow> rows;
  for (Approach a : options.approaches) {
    for (SolverKind s : options.solvers) {
      const auto key = std::make_pair(static_cast<int>(a), static_cast<int>(s));
      const SolverTrace& trace = traces[key];
      const SolverTrace* reference =
          have_reference ? &traces[{static_cast<int>(Approach::RealMatrix), static_cast<int>(s)}]
                         : nullptr;
      for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const IterationRecord& rec = trace.records[k];
        MetricsRow row;
        row.approach = approach_name(a);
        row.solver = solver_name(s);
        row.iteration = rec.k;
        row.cum_real_mults = rec.cum_real_mults;
        row.cost = rec.cost;
        row.elapsed_seconds = avg_elapsed[key][k];
        if (reference != nullptr && k < reference->records.size())
          row.rel_diff = relative_l2_diff(rec.x, reference->records[k].x);
        else
          row.rel_diff = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

ValidationReport validate_against_oracle(const BenchProblem& problem,
                                         const BenchOptions& options) {
  constexpr double kKrylovThreshold = 1e-4;
  const CVec reference = oracle_solve(problem);
  const BenchRun run = run_metric_passes(problem, options);

  ValidationReport report;
  for (Approach a : options.approaches) {
    for (SolverKind s : options.solvers) {
      const double dev = relative_l2_diff(run.trace(a, s).solution(), reference);
      report.rows.push_back({approach_name(a), solver_name(s), dev});
      if (s != SolverKind::Landweber)
        report.max_krylov_deviation = std::max(report.max_krylov_deviation, dev);
    }
  }
  report.krylov_within_threshold = report.max_krylov_deviation <= kKrylovThreshold;
  return report;
}

void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::vector<MetricsRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const MetricsRow& a, const MetricsRow& b) {
    return std::tie(a.approach, a.solver, a.iteration) < std::tie(b.approach, b.solver, b.iteration);
  });

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_metrics: cannot open " + path);

  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };

  out << "approach,solver,iteration,cum_real_mults,cost,elapsed_seconds,rel_diff\n";
  for (const MetricsRow& row : sorted) {
    out << row.approach << ',' << row.solver << ',' << row.iteration << ',' << row.cum_real_mults
        << ',' << fmt(row.cost) << ',' << fmt(row.elapsed_seconds) << ',' << fmt(row.rel_diff)
        << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write_metrics: write failed for " + path);
}

} // namespace rlops::bench
