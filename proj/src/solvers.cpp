// SPDX-License-Identifier: Apache-2.0

#include "rlops/solvers.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "rlops/lift.hpp"

namespace rlops {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t vec_charge(Index n) { return 2ull * static_cast<std::uint64_t>(n); }

constexpr double kBreakdownFloor = 1e-300;

// Power iteration shared by both step-size overloads. `normal` evaluates
// x -> A*(A x)) without charging anyone.
template <typename Vec, typename NormalFn, typename InnerFn, typename SeedFn>
StepSizeEstimate power_estimate(NormalFn&& normal, InnerFn&& inner, SeedFn&& seed_vector) {
  constexpr int max_iters = 100;
  constexpr double rel_change_tol = 1e-8;

  Vec v = seed_vector();
  const double v0_norm = std::sqrt(inner(v, v));
  v /= v0_norm;

  double nu = 0.0;
  double nu_prev = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vec w = normal(v);
    nu = inner(v, w);
    const double w_norm = std::sqrt(inner(w, w));
    if (w_norm <= kBreakdownFloor) {
      StepSizeEstimate est;
      est.alpha = 1.0;
      est.sigma_sq = 0.0;
      est.zero_operator = true;
      return est;
    }
    v = w / w_norm;
    if (it > 0 && std::abs(nu - nu_prev) <= rel_change_tol * std::abs(nu)) break;
    nu_prev = nu;
  }

  StepSizeEstimate est;
  est.sigma_sq = 1.05 * nu; // 5% safety margin on the dominant eigenvalue
  est.alpha = 1.9 / est.sigma_sq;
  est.zero_operator = false;
  return est;
}

CVec random_complex_seed(Index n) {
  std::mt19937_64 eng(0x2545f4914f6cdd1dull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(gauss(eng), gauss(eng));
  return v;
}

RVec random_real_seed(Index n) {
  std::mt19937_64 eng(0x2545f4914f6cdd1dull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(eng);
  return v;
}

double resolve_step_size(const SolverConfig& config, const std::function<StepSizeEstimate()>& fallback) {
  if (config.step_size) {
    detail::require(*config.step_size > 0.0 && std::isfinite(*config.step_size),
                    "landweber: step size must be positive");
    return *config.step_size;
  }
  return fallback().alpha;
}

} // namespace

StepSizeEstimate estimate_step_size(const RealLinearOp& op) {
  detail::require(op.valid(), "estimate_step_size: empty operator");
  MultCounter scratch;
  auto normal = [&](const CVec& v) { return op.adjoint(op.apply(v, scratch), scratch); };
  auto inner = [](const CVec& a, const CVec& b) { return real_inner(a, b); };
  auto seed = [&] { return random_complex_seed(op.cols()); };
  return power_estimate<CVec>(normal, inner, seed);
}

StepSizeEstimate estimate_step_size(const LiftedMap& map) {
  MultCounter scratch;
  auto normal = [&](const RVec& v) { return map.adjoint(map.apply(v, scratch), scratch); };
  auto inner = [](const RVec& a, const RVec& b) { return a.dot(b); };
  auto seed = [&] { return random_real_seed(map.lifted_cols()); };
  return power_estimate<RVec>(normal, inner, seed);
}

double cost(const RealLinearOp& op, const CVec& b, const CVec& x, MultCounter& counter) {
  detail::require(b.size() == op.rows(), "cost: data length mismatch");
  CVec r = op.apply(x, counter) - b;
  counter.charge(vec_charge(op.rows()));
  return real_inner(r, r);
}

double lifted_cost(const LiftedMap& map, const RVec& b_lifted, const RVec& x_lifted,
                   MultCounter& counter) {
  detail::require(b_lifted.size() == map.lifted_rows(), "lifted_cost: data length mismatch");
  RVec r = map.apply(x_lifted, counter) - b_lifted;
  counter.charge(vec_charge(map.complex_rows()));
  return r.squaredNorm();
}

// ---------------------------------------------------------------------------
// Landweber
// ---------------------------------------------------------------------------

SolverTrace landweber(const RealLinearOp& op, const CVec& b, const CVec& x0,
                      const SolverConfig& config, MultCounter& counter) {
  detail::require(op.valid(), "landweber: empty operator");
  detail::require(b.size() == op.rows() && x0.size() == op.cols(),
                  "landweber: dimension mismatch");
  detail::require(config.max_iters >= 0, "landweber: negative iteration count");
  const double alpha =
      resolve_step_size(config, [&] { return estimate_step_size(op); });

  SolverTrace trace;
  const Index n = op.cols();
  CVec x = x0;
  double elapsed = 0.0;

  auto record = [&](int k) {
    MultCounter metric;
    trace.records.push_back({k, cost(op, b, x, metric), counter.total(), elapsed, x});
  };

  record(0);
  for (int k = 0; k < config.max_iters; ++k) {
    const auto t0 = Clock::now();
    CVec r = b - op.apply(x, counter);
    CVec d = op.adjoint(r, counter);
    double direction_norm = -1.0;
    if (config.residual_tolerance > 0.0) {
      direction_norm = std::sqrt(real_inner(d, d));
      counter.charge(vec_charge(n));
    }
    x += alpha * d;
    counter.charge(vec_charge(n));
    elapsed += seconds_since(t0);
    record(k + 1);
    if (direction_norm >= 0.0 && direction_norm <= config.residual_tolerance) {
      trace.stopped_early = true;
      trace.stop_reason = "normal-equations residual below tolerance";
      break;
    }
  }
  return trace;
}

SolverTrace landweber_lifted(const LiftedMap& map, const RVec& b_lifted, const RVec& x0_lifted,
                             const SolverConfig& config, MultCounter& counter) {
  detail::require(b_lifted.size() == map.lifted_rows() && x0_lifted.size() == map.lifted_cols(),
                  "landweber_lifted: dimension mismatch");
  detail::require(config.max_iters >= 0, "landweber_lifted: negative iteration count");
  const double alpha =
      resolve_step_size(config, [&] { return estimate_step_size(map); });

  SolverTrace trace;
  const Index n = map.complex_cols();
  RVec x = x0_lifted;
  double elapsed = 0.0;

  auto record = [&](int k) {
    MultCounter metric;
    trace.records.push_back(
        {k, lifted_cost(map, b_lifted, x, metric), counter.total(), elapsed, unlift_vector(x)});
  };

  record(0);
  for (int k = 0; k < config.max_iters; ++k) {
    const auto t0 = Clock::now();
    RVec r = b_lifted - map.apply(x, counter);
    RVec d = map.adjoint(r, counter);
    double direction_norm = -1.0;
    if (config.residual_tolerance > 0.0) {
      direction_norm = d.norm();
      counter.charge(vec_charge(n));
    }
    x += alpha * d;
    counter.charge(vec_charge(n));
    elapsed += seconds_since(t0);
    record(k + 1);
    if (direction_norm >= 0.0 && direction_norm <= config.residual_tolerance) {
      trace.stopped_early = true;
      trace.stop_reason = "normal-equations residual below tolerance";
      break;
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Conjugate gradient on the normal equations
// ---------------------------------------------------------------------------

namespace {

// One CG implementation parameterized over the vector algebra so the
// complex-native and lifted variants are literally the same recurrence.
template <typename Vec, typename Ops>
SolverTrace cg_impl(const Ops& ops, const Vec& b, const Vec& x0, const SolverConfig& config,
                    MultCounter& counter) {
  detail::require(config.max_iters >= 0, "conjugate_gradient: negative iteration count");
  SolverTrace trace;
  double elapsed = 0.0;
  Vec x = x0;

  auto record = [&](int k) {
    trace.records.push_back({k, ops.metric_cost(x), counter.total(), elapsed, ops.snapshot(x)});
  };

  const auto t_setup = Clock::now();
  Vec r = ops.adjoint(ops.residual(b, x, counter), counter);
  Vec p = r;
  double rr = ops.inner(r, r);
  counter.charge(vec_charge(ops.n));
  elapsed += seconds_since(t_setup);

  record(0);
  for (int k = 0; k < config.max_iters; ++k) {
    if (rr == 0.0) {
      trace.stopped_early = true;
      trace.stop_reason = "normal-equations residual is exactly zero";
      break;
    }
    const auto t0 = Clock::now();
    Vec z = ops.adjoint(ops.apply(p, counter), counter);
    const double pz = ops.inner(p, z);
    counter.charge(vec_charge(ops.n));
    if (pz <= 0.0) {
      const double pp = ops.inner(p, p);
      if (pz < -1e-10 * pp)
        throw std::runtime_error("conjugate_gradient: numerical breakdown (p^H A*A p <= 0)");
      trace.stopped_early = true;
      trace.stop_reason = "search direction annihilated by the operator";
      break;
    }
    const double alpha_k = rr / pz;
    x += alpha_k * p;
    counter.charge(vec_charge(ops.n));
    r -= alpha_k * z;
    counter.charge(vec_charge(ops.n));
    const double rr_next = ops.inner(r, r);
    counter.charge(vec_charge(ops.n));
    const double beta_k = rr_next / rr;
    p = r + beta_k * p;
    counter.charge(vec_charge(ops.n));
    rr = rr_next;
    elapsed += seconds_since(t0);
    record(k + 1);
    if (config.residual_tolerance > 0.0 && std::sqrt(rr) <= config.residual_tolerance) {
      trace.stopped_early = true;
      trace.stop_reason = "normal-equations residual below tolerance";
      break;
    }
  }
  return trace;
}

struct ComplexCgOps {
  const RealLinearOp& op;
  const CVec& b_ref;
  Index n;

  CVec residual(const CVec& b, const CVec& x, MultCounter& c) const {
    return b - op.apply(x, c);
  }
  CVec apply(const CVec& v, MultCounter& c) const { return op.apply(v, c); }
  CVec adjoint(const CVec& v, MultCounter& c) const { return op.adjoint(v, c); }
  double inner(const CVec& a, const CVec& b2) const { return real_inner(a, b2); }
  double metric_cost(const CVec& x) const {
    MultCounter metric;
    return cost(op, b_ref, x, metric);
  }
  CVec snapshot(const CVec& x) const { return x; }
};

struct LiftedCgOps {
  const LiftedMap& map;
  const RVec& b_ref;
  Index n;

  RVec residual(const RVec& b, const RVec& x, MultCounter& c) const {
    return b - map.apply(x, c);
  }
  RVec apply(const RVec& v, MultCounter& c) const { return map.apply(v, c); }
  RVec adjoint(const RVec& v, MultCounter& c) const { return map.adjoint(v, c); }
  double inner(const RVec& a, const RVec& b2) const { return a.dot(b2); }
  double metric_cost(const RVec& x) const {
    MultCounter metric;
    return lifted_cost(map, b_ref, x, metric);
  }
  CVec snapshot(const RVec& x) const { return unlift_vector(x); }
};

} // namespace

SolverTrace conjugate_gradient(const RealLinearOp& op, const CVec& b, const CVec& x0,
                               const SolverConfig& config, MultCounter& counter) {
  detail::require(op.valid(), "conjugate_gradient: empty operator");
  detail::require(b.size() == op.rows() && x0.size() == op.cols(),
                  "conjugate_gradient: dimension mismatch");
  ComplexCgOps ops{op, b, op.cols()};
  return cg_impl<CVec>(ops, b, x0, config, counter);
}

SolverTrace conjugate_gradient_lifted(const LiftedMap& map, const RVec& b_lifted,
                                      const RVec& x0_lifted, const SolverConfig& config,
                                      MultCounter& counter) {
  detail::require(b_lifted.size() == map.lifted_rows() && x0_lifted.size() == map.lifted_cols(),
                  "conjugate_gradient_lifted: dimension mismatch");
  LiftedCgOps ops{map, b_lifted, map.complex_cols()};
  return cg_impl<RVec>(ops, b_lifted, x0_lifted, config, counter);
}

// ---------------------------------------------------------------------------
// LSQR
// ---------------------------------------------------------------------------

namespace {

template <typename Vec, typename Ops>
SolverTrace lsqr_impl(const Ops& ops, const Vec& b, const Vec& x0, const SolverConfig& config,
                      MultCounter& counter) {
  detail::require(config.max_iters >= 0, "lsqr: negative iteration count");
  SolverTrace trace;
  double elapsed = 0.0;
  Vec x = x0;

  auto record = [&](int k) {
    trace.records.push_back({k, ops.metric_cost(x), counter.total(), elapsed, ops.snapshot(x)});
  };

  // Golub-Kahan setup: beta u = b - A x0, alpha v = A* u.
  const auto t_setup = Clock::now();
  Vec u = ops.residual(b, x, counter);
  double beta = std::sqrt(ops.inner(u, u));
  counter.charge(vec_charge(ops.m));
  bool degenerate = false;
  double alpha = 0.0;
  Vec v, w;
  if (beta <= kBreakdownFloor) {
    degenerate = true; // x0 already reproduces the data exactly
  } else {
    u /= beta;
    counter.charge(vec_charge(ops.m));
    v = ops.adjoint(u, counter);
    alpha = std::sqrt(ops.inner(v, v));
    counter.charge(vec_charge(ops.n));
    if (alpha <= kBreakdownFloor) {
      degenerate = true; // residual is orthogonal to the range: x0 optimal
    } else {
      v /= alpha;
      counter.charge(vec_charge(ops.n));
      w = v;
    }
  }
  elapsed += seconds_since(t_setup);

  record(0);
  if (degenerate) {
    trace.stopped_early = true;
    trace.stop_reason = "initial iterate is already optimal";
    return trace;
  }

  double phi_bar = beta;
  double rho_bar = alpha;
  for (int k = 0; k < config.max_iters; ++k) {
    const auto t0 = Clock::now();
    // Continue the bidiagonalization.
    u = ops.apply(v, counter) - alpha * u;
    counter.charge(vec_charge(ops.m));
    beta = std::sqrt(ops.inner(u, u));
    counter.charge(vec_charge(ops.m));
    if (beta <= kBreakdownFloor) {
      trace.stopped_early = true;
      trace.stop_reason = "bidiagonalization breakdown (beta underflow)";
      elapsed += seconds_since(t0);
      break;
    }
    u /= beta;
    counter.charge(vec_charge(ops.m));
    v = ops.adjoint(u, counter) - beta * v;
    counter.charge(vec_charge(ops.n));
    alpha = std::sqrt(ops.inner(v, v));
    counter.charge(vec_charge(ops.n));
    if (alpha <= kBreakdownFloor) {
      trace.stopped_early = true;
      trace.stop_reason = "bidiagonalization breakdown (alpha underflow)";
      elapsed += seconds_since(t0);
      break;
    }
    v /= alpha;
    counter.charge(vec_charge(ops.n));

    // Next plane rotation.
    const double rho = std::hypot(rho_bar, beta);
    const double c = rho_bar / rho;
    const double s = beta / rho;
    const double theta = s * alpha;
    rho_bar = -c * alpha;
    const double phi = c * phi_bar;
    phi_bar = s * phi_bar;

    x += (phi / rho) * w;
    counter.charge(vec_charge(ops.n));
    w = v - (theta / rho) * w;
    counter.charge(vec_charge(ops.n));
    elapsed += seconds_since(t0);
    record(k + 1);

    // |phi_bar * alpha * c| estimates ||A*(b - A x)||.
    if (config.residual_tolerance > 0.0 &&
        std::abs(phi_bar * alpha * c) <= config.residual_tolerance) {
      trace.stopped_early = true;
      trace.stop_reason = "normal-equations residual below tolerance";
      break;
    }
  }
  return trace;
}

struct ComplexLsqrOps {
  const RealLinearOp& op;
  const CVec& b_ref;
  Index m;
  Index n;

  CVec residual(const CVec& b, const CVec& x, MultCounter& c) const {
    return b - op.apply(x, c);
  }
  CVec apply(const CVec& vv, MultCounter& c) const { return op.apply(vv, c); }
  CVec adjoint(const CVec& vv, MultCounter& c) const { return op.adjoint(vv, c); }
  double inner(const CVec& a, const CVec& b2) const { return real_inner(a, b2); }
  double metric_cost(const CVec& x) const {
    MultCounter metric;
    return cost(op, b_ref, x, metric);
  }
  CVec snapshot(const CVec& x) const { return x; }
};

struct LiftedLsqrOps {
  const LiftedMap& map;
  const RVec& b_ref;
  Index m;
  Index n;

  RVec residual(const RVec& b, const RVec& x, MultCounter& c) const {
    return b - map.apply(x, c);
  }
  RVec apply(const RVec& vv, MultCounter& c) const { return map.apply(vv, c); }
  RVec adjoint(const RVec& vv, MultCounter& c) const { return map.adjoint(vv, c); }
  double inner(const RVec& a, const RVec& b2) const { return a.dot(b2); }
  double metric_cost(const RVec& x) const {
    MultCounter metric;
    return lifted_cost(map, b_ref, x, metric);
  }
  CVec snapshot(const RVec& x) const { return unlift_vector(x); }
};

} // namespace

SolverTrace lsqr(const RealLinearOp& op, const CVec& b, const CVec& x0, const SolverConfig& config,
                 MultCounter& counter) {
  detail::require(op.valid(), "lsqr: empty operator");
  detail::require(b.size() == op.rows() && x0.size() == op.cols(), "lsqr: dimension mismatch");
  ComplexLsqrOps ops{op, b, op.rows(), op.cols()};
  return lsqr_impl<CVec>(ops, b, x0, config, counter);
}

SolverTrace lsqr_lifted(const LiftedMap& map, const RVec& b_lifted, const RVec& x0_lifted,
                        const SolverConfig& config, MultCounter& counter) {
  detail::require(b_lifted.size() == map.lifted_rows() && x0_lifted.size() == map.lifted_cols(),
                  "lsqr_lifted: dimension mismatch");
  LiftedLsqrOps ops{map, b_lifted, map.complex_rows(), map.complex_cols()};
  return lsqr_impl<RVec>(ops, b_lifted, x0_lifted, config, counter);
}

} // namespace rlops
