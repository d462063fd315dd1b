// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "rlops/core.hpp"
#include "rlops/mult_counter.hpp"

namespace rlops {

namespace detail {
class OpNode;
}

/// Explicit (F, G) pair for the action A(x) = F x + conj(G x).
///
/// An empty (0x0) matrix declares that part identically zero; applies skip
/// it and charge nothing for it. A stored all-zero matrix, in contrast, is
/// structurally present and charged like any other.
struct MatrixFormData {
  CMat F; ///< linear part, M x N or empty
  CMat G; ///< antilinear part, M x N or empty

  [[nodiscard]] bool has_linear() const { return F.size() != 0; }
  [[nodiscard]] bool has_antilinear() const { return G.size() != 0; }
  [[nodiscard]] Index rows() const { return has_linear() ? F.rows() : G.rows(); }
  [[nodiscard]] Index cols() const { return has_linear() ? F.cols() : G.cols(); }
};

/// A real-linear operator C^N -> C^M: additive, and homogeneous for real
/// scalars. Every such operator acts as A(x) = F x + conj(G x) for a unique
/// matrix pair, but may be represented as a stored pair, a pair of user
/// callables, or an expression tree over other operators. Adjoints of
/// expressions are evaluated structurally (composition reverses, sums
/// distribute), so blackbox leaves never need to be materialized.
///
/// Operators are immutable after construction and cheap to copy (nodes are
/// shared); concurrent reads are safe. The only mutable state anywhere is
/// the MultCounter passed into apply/adjoint.
class RealLinearOp {
public:
  RealLinearOp() = default;

  explicit RealLinearOp(std::shared_ptr<const detail::OpNode> node);

  [[nodiscard]] bool valid() const { return node_ != nullptr; }
  [[nodiscard]] Index rows() const { return rows_; }
  [[nodiscard]] Index cols() const { return cols_; }

  /// Evaluate A(x). Throws std::invalid_argument on dimension mismatch or
  /// non-finite input. Charges the counter per the accounting convention.
  CVec apply(const CVec& x, MultCounter& counter) const;
  CVec apply(const CVec& x) const;

  /// Evaluate the adjoint A*(y) = F^H y + G^H conj(y).
  CVec adjoint(const CVec& y, MultCounter& counter) const;
  CVec adjoint(const CVec& y) const;

  [[nodiscard]] const std::shared_ptr<const detail::OpNode>& node() const { return node_; }

private:
  std::shared_ptr<const detail::OpNode> node_;
  Index rows_ = 0;
  Index cols_ = 0;
};

using ApplyFn = std::function<CVec(const CVec&)>;

/// Operator backed by a stored matrix pair: A(x) = F x + conj(G x).
/// An empty matrix declares that part zero; both empty is rejected, as are
/// degenerate (zero-row or zero-column) shapes.
RealLinearOp matrix_op(CMat F, CMat G);
RealLinearOp matrix_op(MatrixFormData form);

/// Purely linear operator A(x) = F x.
RealLinearOp linear_op(CMat F);

/// Purely antilinear operator A(x) = conj(G x).
RealLinearOp antilinear_op(CMat G);

/// Operator backed by user callables. `mult_charge_apply` /
/// `mult_charge_adjoint` are the real-multiplication counts charged per
/// call (for a dense complex M x N matvec, 4*M*N).
///
/// Construction probes the pair on 8 deterministic pseudo-random inputs and
/// rejects callables that violate additivity, real homogeneity, or the
/// real-inner-product adjoint identity beyond 1e-10 relative.
RealLinearOp blackbox_op(Index rows, Index cols, ApplyFn apply_fn, ApplyFn adjoint_fn,
                         std::uint64_t mult_charge_apply, std::uint64_t mult_charge_adjoint);

/// Lazy sum node; operands must agree in shape.
RealLinearOp add(RealLinearOp a, RealLinearOp b);

/// Lazy composition node outer(inner(x)); requires inner.rows == outer.cols.
RealLinearOp compose(RealLinearOp outer, RealLinearOp inner);

/// Scaling by a complex factor c: x -> c * op(x). The adjoint routes the
/// conjugated factor through the operand, (c A)*(y) = A*(conj(c) y).
/// Factors +-1 and +-i charge nothing, purely real or purely imaginary
/// factors charge 2 per entry, general complex factors 4 per entry.
RealLinearOp scale(Complex factor, RealLinearOp op);

/// Row-concatenation of blocks sharing a common domain. The adjoint splits
/// its argument and sums the block adjoints.
RealLinearOp stack(std::vector<RealLinearOp> blocks);

/// The adjoint as an operator in its own right (apply and adjoint swapped).
RealLinearOp adjoint_of(RealLinearOp op);

/// Component-wise eager sum: returns a stored-matrix operator with
/// F = F1 + F2, G = G1 + G2. Non-matrix operands are materialized first.
RealLinearOp add_eager(const RealLinearOp& a, const RealLinearOp& b);

/// Eager composition via the closed form F = F2 F1 + conj(G2) G1 and
/// G = conj(F2) G1 + G2 F1 (2 = outer, 1 = inner). Non-matrix operands are
/// materialized first.
RealLinearOp compose_eager(const RealLinearOp& outer, const RealLinearOp& inner);

/// Unique decomposition of `op` into a linear part L (L(ix) = i L(x)) and
/// an antilinear part T (T(ix) = -i T(x)) with op = L + T, via
/// L(x) = (A(x) - i A(ix))/2 and T(x) = (A(x) + i A(ix))/2.
/// Matrix-backed operators split exactly into their stored parts; anything
/// else (blackboxes included) pays 2 underlying applies per evaluation.
std::pair<RealLinearOp, RealLinearOp> split_linear_antilinear(RealLinearOp op);

/// True when the operator is a stored-matrix leaf.
bool is_matrix_form(const RealLinearOp& op);

/// Recover the unique (F, G) pair. Matrix leaves are copied; everything
/// else is probed column by column with e_j and i e_j (2 * cols applies).
/// Recovered parts that are exactly zero come back as declared-zero (empty).
MatrixFormData materialize(const RealLinearOp& op);

/// Stored pair of `op`, materializing only when it is not already a matrix
/// leaf.
MatrixFormData matrix_form(const RealLinearOp& op);

} // namespace rlops
