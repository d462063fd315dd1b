// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rlops/operator.hpp"

namespace rlops {

/// Identity on C^n. Charges nothing.
RealLinearOp identity(Index n);

/// x -> conj(x). Antilinear; its own adjoint. Charges nothing.
RealLinearOp conjugation(Index n);

/// x -> real(x) (as a complex vector with zero imaginary part). Its own
/// adjoint.
RealLinearOp real_part(Index n);

/// x -> imag(x). Adjoint is y -> i * real(y).
RealLinearOp imag_part(Index n);

/// x -> factor * x.
RealLinearOp scaled_identity(Index n, Complex factor);

/// Stacked system [ A x ; sqrt(lambda) * imag(B x) ] for a data term plus an
/// imaginary-part penalty. The structural adjoint evaluates to
/// A*(y1) + sqrt(lambda) * i * B*(real(y2)). Requires lambda > 0.
RealLinearOp phase_penalty_system(RealLinearOp a, RealLinearOp b, double lambda);
RealLinearOp phase_penalty_system(const CMat& a, const CMat& b, double lambda);

/// Stacked system [ A x ; sqrt(lambda) * (C x - D conj(E x)) ] for a data
/// term plus a conjugate-prediction penalty. The structural adjoint
/// evaluates to A*(y1) + sqrt(lambda) * (C*(y2) - E^H conj(D^H y2)).
/// Requires lambda > 0 and shapes A: M1 x N, C: M2 x N, D: M2 x P, E: P x N.
RealLinearOp conjugate_penalty_system(RealLinearOp a, RealLinearOp c, RealLinearOp d,
                                      RealLinearOp e, double lambda);
RealLinearOp conjugate_penalty_system(const CMat& a, const CMat& c, const CMat& d,
                                      const CMat& e, double lambda);

} // namespace rlops
