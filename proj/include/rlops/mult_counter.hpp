// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace rlops {

/// Running tally of real-valued scalar multiplications.
///
/// Convention: one complex*complex scalar multiplication counts as 4 real
/// multiplications, real*complex as 2, real*real as 1. Additions are never
/// counted. A dense complex M x N matrix-vector product therefore charges
/// 4*M*N, a dense real one M*N.
///
/// A counter only grows. Each solve owns its own counter; no internal
/// synchronization is provided.
class MultCounter {
public:
  void charge(std::uint64_t real_mults) noexcept { total_ += real_mults; }

  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }

private:
  std::uint64_t total_ = 0;
};

} // namespace rlops
