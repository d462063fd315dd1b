// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rlops/core.hpp"
#include "rlops/mult_counter.hpp"
#include "rlops/operator.hpp"

namespace rlops::detail {

class OpNode {
public:
  OpNode(Index rows, Index cols) : rows_(rows), cols_(cols) {
    require(rows > 0 && cols > 0, "operator: degenerate dimensions rejected");
  }
  virtual ~OpNode() = default;

  OpNode(const OpNode&) = delete;
  OpNode& operator=(const OpNode&) = delete;

  [[nodiscard]] Index rows() const { return rows_; }
  [[nodiscard]] Index cols() const { return cols_; }

  virtual CVec apply(const CVec& x, MultCounter& counter) const = 0;
  virtual CVec adjoint(const CVec& y, MultCounter& counter) const = 0;

private:
  Index rows_;
  Index cols_;
};

class MatrixNode final : public OpNode {
public:
  explicit MatrixNode(MatrixFormData form);

  [[nodiscard]] const MatrixFormData& form() const { return form_; }

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  MatrixFormData form_;
};

class BlackboxNode final : public OpNode {
public:
  BlackboxNode(Index rows, Index cols, ApplyFn apply_fn, ApplyFn adjoint_fn,
               std::uint64_t charge_apply, std::uint64_t charge_adjoint);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  ApplyFn apply_fn_;
  ApplyFn adjoint_fn_;
  std::uint64_t charge_apply_;
  std::uint64_t charge_adjoint_;
};

class SumNode final : public OpNode {
public:
  SumNode(RealLinearOp a, RealLinearOp b);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  RealLinearOp a_, b_;
};

class ComposeNode final : public OpNode {
public:
  ComposeNode(RealLinearOp outer, RealLinearOp inner);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  RealLinearOp outer_, inner_;
};

class ScaleNode final : public OpNode {
public:
  ScaleNode(Complex factor, RealLinearOp op);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  [[nodiscard]] std::uint64_t charge_per_entry() const;

  Complex factor_;
  RealLinearOp op_;
};

class StackNode final : public OpNode {
public:
  explicit StackNode(std::vector<RealLinearOp> blocks, Index rows, Index cols);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  std::vector<RealLinearOp> blocks_;
};

class AdjointNode final : public OpNode {
public:
  explicit AdjointNode(RealLinearOp op);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  RealLinearOp op_;
};

/// Linear or antilinear part of an operator, evaluated through the
/// two-probe formulas (A(x) -+ i A(ix))/2. Costs two underlying applies
/// plus 4 real multiplications per output entry for the combination.
class SplitPartNode final : public OpNode {
public:
  enum class Part { Linear, Antilinear };

  SplitPartNode(Part part, RealLinearOp op);

  CVec apply(const CVec& x, MultCounter& counter) const override;
  CVec adjoint(const CVec& y, MultCounter& counter) const override;

private:
  Part part_;
  RealLinearOp op_;
};

class IdentityNode final : public OpNode {
public:
  explicit IdentityNode(Index n) : OpNode(n, n) {}

  CVec apply(const CVec& x, MultCounter&) const override { return x; }
  CVec adjoint(const CVec& y, MultCounter&) const override { return y; }
};

class ConjNode final : public OpNode {
public:
  explicit ConjNode(Index n) : OpNode(n, n) {}

  CVec apply(const CVec& x, MultCounter&) const override { return x.conjugate(); }
  CVec adjoint(const CVec& y, MultCounter&) const override { return y.conjugate(); }
};

class RealPartNode final : public OpNode {
public:
  explicit RealPartNode(Index n) : OpNode(n, n) {}

  CVec apply(const CVec& x, MultCounter&) const override {
    return x.real().cast<Complex>();
  }
  CVec adjoint(const CVec& y, MultCounter&) const override {
    return y.real().cast<Complex>();
  }
};

class ImagPartNode final : public OpNode {
public:
  explicit ImagPartNode(Index n) : OpNode(n, n) {}

  CVec apply(const CVec& x, MultCounter&) const override {
    return x.imag().cast<Complex>();
  }
  // A*(y) = i * real(y)
  CVec adjoint(const CVec& y, MultCounter&) const override {
    CVec out = CVec::Zero(rows());
    out.imag() = y.real();
    return out;
  }
};

} // namespace rlops::detail
