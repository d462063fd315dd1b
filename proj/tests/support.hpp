// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "rlops/builtins.hpp"
#include "rlops/operator.hpp"

namespace rlops::testsupport {

inline CVec random_cvec(std::mt19937_64& eng, Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(gauss(eng), gauss(eng));
  return v;
}

inline RVec random_rvec(std::mt19937_64& eng, Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(eng);
  return v;
}

inline CMat random_cmat(std::mt19937_64& eng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(gauss(eng), gauss(eng));
  return m;
}

inline RealLinearOp random_matrix_leaf(std::mt19937_64& eng, Index rows, Index cols) {
  switch (eng() % 3) {
    case 0: return linear_op(random_cmat(eng, rows, cols));
    case 1: return antilinear_op(random_cmat(eng, rows, cols));
    default: return matrix_op(random_cmat(eng, rows, cols), random_cmat(eng, rows, cols));
  }
}

inline RealLinearOp random_blackbox_leaf(std::mt19937_64& eng, Index rows, Index cols) {
  auto f = std::make_shared<const CMat>(random_cmat(eng, rows, cols));
  auto g = std::make_shared<const CMat>(random_cmat(eng, rows, cols));
  return blackbox_op(
      rows, cols, [f, g](const CVec& x) { return CVec(*f * x + (*g * x).conjugate()); },
      [f, g](const CVec& y) { return CVec(f->adjoint() * y + g->adjoint() * y.conjugate()); },
      8ull * rows * cols, 8ull * rows * cols);
}

inline RealLinearOp random_square_builtin(std::mt19937_64& eng, Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  switch (eng() % 4) {
    case 0: return conjugation(n);
    case 1: return real_part(n);
    case 2: return imag_part(n);
    default: return scaled_identity(n, Complex(gauss(eng), gauss(eng)));
  }
}

inline RealLinearOp random_leaf(std::mt19937_64& eng, Index rows, Index cols) {
  const auto pick = eng() % 10;
  if (rows == cols && pick < 2) return random_square_builtin(eng, rows);
  if (pick < 5) return random_blackbox_leaf(eng, rows, cols);
  return random_matrix_leaf(eng, rows, cols);
}

/// Random operator expression of the requested shape: matrix and blackbox
/// leaves glued by sums, compositions, scalings, stacks, and adjoints.
inline RealLinearOp random_operator(std::mt19937_64& eng, Index rows, Index cols, int depth) {
  if (depth <= 0) return random_leaf(eng, rows, cols);
  std::normal_distribution<double> gauss(0.0, 1.0);
  switch (eng() % 6) {
    case 0:
      return add(random_operator(eng, rows, cols, depth - 1),
                 random_operator(eng, rows, cols, depth - 1));
    case 1: {
      const Index mid = 1 + static_cast<Index>(eng() % 12);
      return compose(random_operator(eng, rows, mid, depth - 1),
                     random_operator(eng, mid, cols, depth - 1));
    }
    case 2: {
      const Complex factor = (eng() % 2 == 0) ? Complex(gauss(eng), 0.0)
                                              : Complex(gauss(eng), gauss(eng));
      return scale(factor, random_operator(eng, rows, cols, depth - 1));
    }
    case 3: {
      if (rows < 2) return random_leaf(eng, rows, cols);
      const Index top = 1 + static_cast<Index>(eng() % (rows - 1));
      std::vector<RealLinearOp> blocks;
      blocks.push_back(random_operator(eng, top, cols, depth - 1));
      blocks.push_back(random_operator(eng, rows - top, cols, depth - 1));
      return stack(std::move(blocks));
    }
    case 4: return adjoint_of(random_operator(eng, cols, rows, depth - 1));
    default: return random_leaf(eng, rows, cols);
  }
}

} // namespace rlops::testsupport
