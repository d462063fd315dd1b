// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rlops {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline bool all_finite(const CVec& v) {
  return v.real().allFinite() && v.imag().allFinite();
}

inline bool all_finite(const CMat& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

} // namespace detail

/// real(p^H q): the inner product complex vectors inherit from their lifted
/// real counterparts. Self-products are plain squared norms; cross products
/// discard the imaginary component.
inline double real_inner(const CVec& p, const CVec& q) {
  detail::require(p.size() == q.size(), "real_inner: length mismatch");
  return p.real().dot(q.real()) + p.imag().dot(q.imag());
}

/// ||p - q||_2 / ||(p + q)/2||_2. Returns 0 when p == q, including the
/// all-zero case.
inline double relative_l2_diff(const CVec& p, const CVec& q) {
  detail::require(p.size() == q.size(), "relative_l2_diff: length mismatch");
  const double num = (p - q).norm();
  if (num == 0.0) return 0.0;
  return num / (0.5 * (p + q)).norm();
}

} // namespace rlops
