// SPDX-License-Identifier: Apache-2.0

#include "rlops/builtins.hpp"

#include <cmath>

#include "op_nodes.hpp"

namespace rlops {

RealLinearOp identity(Index n) {
  return RealLinearOp(std::make_shared<detail::IdentityNode>(n));
}

RealLinearOp conjugation(Index n) {
  return RealLinearOp(std::make_shared<detail::ConjNode>(n));
}

RealLinearOp real_part(Index n) {
  return RealLinearOp(std::make_shared<detail::RealPartNode>(n));
}

RealLinearOp imag_part(Index n) {
  return RealLinearOp(std::make_shared<detail::ImagPartNode>(n));
}

RealLinearOp scaled_identity(Index n, Complex factor) { return scale(factor, identity(n)); }

RealLinearOp phase_penalty_system(RealLinearOp a, RealLinearOp b, double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "phase_penalty_system: lambda must be positive");
  detail::require(a.valid() && b.valid(), "phase_penalty_system: empty operand");
  detail::require(a.cols() == b.cols(), "phase_penalty_system: A and B must share the domain");
  const double root = std::sqrt(lambda);
  RealLinearOp penalty = scale(root, compose(imag_part(b.rows()), std::move(b)));
  return stack({std::move(a), std::move(penalty)});
}

RealLinearOp phase_penalty_system(const CMat& a, const CMat& b, double lambda) {
  return phase_penalty_system(linear_op(a), linear_op(b), lambda);
}

RealLinearOp conjugate_penalty_system(RealLinearOp a, RealLinearOp c, RealLinearOp d,
                                      RealLinearOp e, double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "conjugate_penalty_system: lambda must be positive");
  detail::require(a.valid() && c.valid() && d.valid() && e.valid(),
                  "conjugate_penalty_system: empty operand");
  const Index n = a.cols();
  detail::require(c.cols() == n && e.cols() == n,
                  "conjugate_penalty_system: A, C, E must share the domain");
  detail::require(d.cols() == e.rows(), "conjugate_penalty_system: D and E are incompatible");
  detail::require(d.rows() == c.rows(), "conjugate_penalty_system: C and D must share rows");
  const double root = std::sqrt(lambda);
  RealLinearOp predicted = compose(std::move(d), compose(conjugation(e.rows()), std::move(e)));
  RealLinearOp penalty = add(scale(root, std::move(c)), scale(-root, std::move(predicted)));
  return stack({std::move(a), std::move(penalty)});
}

RealLinearOp conjugate_penalty_system(const CMat& a, const CMat& c, const CMat& d, const CMat& e,
                                      double lambda) {
  return conjugate_penalty_system(linear_op(a), linear_op(c), linear_op(d), linear_op(e), lambda);
}

} // namespace rlops
