// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "rlops/core.hpp"
#include "rlops/mult_counter.hpp"
#include "rlops/operator.hpp"

namespace rlops {

/// Pack x in C^N as [real(x); imag(x)] in R^{2N}. Exact (bitwise) and free.
RVec lift_vector(const CVec& x);

/// Inverse of lift_vector. Throws on odd-length input.
CVec unlift_vector(const RVec& lifted);

/// A real-linear map acting on lifted coordinates: R^{2N} -> R^{2M}.
/// Implementations are immutable after construction and shareable across
/// threads; the counter is the caller's.
class LiftedMap {
public:
  virtual ~LiftedMap() = default;

  [[nodiscard]] Index complex_rows() const { return m_; }
  [[nodiscard]] Index complex_cols() const { return n_; }
  [[nodiscard]] Index lifted_rows() const { return 2 * m_; }
  [[nodiscard]] Index lifted_cols() const { return 2 * n_; }

  virtual RVec apply(const RVec& x, MultCounter& counter) const = 0;
  virtual RVec adjoint(const RVec& y, MultCounter& counter) const = 0;

  RVec apply(const RVec& x) const;
  RVec adjoint(const RVec& y) const;

protected:
  LiftedMap(Index m, Index n);

  Index m_ = 0; ///< complex row count M (real rows are 2M)
  Index n_ = 0; ///< complex column count N
};

/// Dense real matrix
///   [ re F + re G   -im F - im G ]
///   [ im F - im G    re F - re G ]  in R^{2M x 2N},
/// whose action on lifted vectors reproduces the complex operator exactly:
/// At * lift(m) = lift(A(m)) and At^T * lift(n) = lift(A*(n)).
class LiftedMatrix final : public LiftedMap {
public:
  LiftedMatrix(RMat entries, Index m, Index n);

  [[nodiscard]] const RMat& matrix() const { return mat_; }

  /// Charges 2M * 2N real multiplications.
  RVec apply(const RVec& x, MultCounter& counter) const override;
  RVec adjoint(const RVec& y, MultCounter& counter) const override;

  using LiftedMap::adjoint;
  using LiftedMap::apply;

private:
  RMat mat_;
};

/// Build the lifted matrix from a stored (F, G) pair.
LiftedMatrix lift_operator(const MatrixFormData& form);

/// Build the lifted matrix of any operator, materializing first if needed.
LiftedMatrix lift_operator(const RealLinearOp& op);

/// Direct block assembly of the lifted matrix for the stacked system
/// [ A x ; sqrt(lambda) (C x - D conj(E x)) ], bypassing the generic (F, G)
/// route entirely. Row blocks are, top to bottom:
///   [ re A, -im A ], [ H11, H12 ], [ im A, re A ], [ H21, H22 ]
/// with
///   H11 = sqrt(lambda) (re C - re D re E - im D im E)
///   H12 = sqrt(lambda) (-im C + re D im E - im D re E)
///   H21 = sqrt(lambda) (im C - im D re E + re D im E)
///   H22 = sqrt(lambda) (re C + im D im E + re D re E).
/// Agrees with lift_operator(conjugate_penalty_system(...)) entrywise; the
/// two constructions are independent, which makes the comparison a strong
/// cross-check.
LiftedMatrix conjugate_penalty_lifted(const CMat& a, const CMat& c, const CMat& d,
                                      const CMat& e, double lambda);

/// Matrix-free emulation of the lifted matvec using only complex-valued
/// function calls on real/imaginary probes, the way a straightforward
/// port of the lifted system to blackbox operators would do it. No result
/// reuse: every real block of the lifted matrix gets its own constituent
/// call, so charges deliberately exceed the single-call complex route.
///
/// Only the constituent calls are charged; per-block scalings are not.
class NaiveFuncallMap final : public LiftedMap {
public:
  /// Generic form for a single operator: 4 calls per apply and 4 adjoint
  /// calls per adjoint.
  static NaiveFuncallMap from_operator(RealLinearOp op);

  /// Conjugate-penalty structure built from the four constituent operators:
  /// 4 calls to A, 4 to C, 8 to D, and 8 to E per lifted apply (and the same
  /// counts of adjoint calls per lifted adjoint).
  static NaiveFuncallMap conjugate_penalty(RealLinearOp a, RealLinearOp c, RealLinearOp d,
                                           RealLinearOp e, double lambda);

  RVec apply(const RVec& x, MultCounter& counter) const override;
  RVec adjoint(const RVec& y, MultCounter& counter) const override;

  using LiftedMap::adjoint;
  using LiftedMap::apply;

private:
  NaiveFuncallMap(Index m, Index n);

  bool penalty_form_ = false;
  RealLinearOp single_;
  RealLinearOp a_, c_, d_, e_;
  double sqrt_lambda_ = 0.0;
  Index m1_ = 0, m2_ = 0, p_ = 0;
};

} // namespace rlops
