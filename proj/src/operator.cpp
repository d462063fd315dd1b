// SPDX-License-Identifier: Apache-2.0

#include "rlops/operator.hpp"

#include <cmath>
#include <random>

#include "op_nodes.hpp"

namespace rlops {

namespace detail {

namespace {

std::uint64_t matvec_charge(Index m, Index n) {
  return 4ull * static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);
}

} // namespace

MatrixNode::MatrixNode(MatrixFormData form) : OpNode(form.rows(), form.cols()), form_(std::move(form)) {
  if (form_.has_linear() && form_.has_antilinear()) {
    require(form_.F.rows() == form_.G.rows() && form_.F.cols() == form_.G.cols(),
            "matrix_op: F and G must share dimensions");
  }
  require(!form_.has_linear() || all_finite(form_.F), "matrix_op: F has non-finite entries");
  require(!form_.has_antilinear() || all_finite(form_.G), "matrix_op: G has non-finite entries");
}

CVec MatrixNode::apply(const CVec& x, MultCounter& counter) const {
  CVec out = CVec::Zero(rows());
  if (form_.has_linear()) {
    out.noalias() += form_.F * x;
    counter.charge(matvec_charge(rows(), cols()));
  }
  if (form_.has_antilinear()) {
    out += (form_.G * x).conjugate();
    counter.charge(matvec_charge(rows(), cols()));
  }
  return out;
}

CVec MatrixNode::adjoint(const CVec& y, MultCounter& counter) const {
  CVec out = CVec::Zero(cols());
  if (form_.has_linear()) {
    out.noalias() += form_.F.adjoint() * y;
    counter.charge(matvec_charge(rows(), cols()));
  }
  if (form_.has_antilinear()) {
    out.noalias() += form_.G.adjoint() * y.conjugate();
    counter.charge(matvec_charge(rows(), cols()));
  }
  return out;
}

BlackboxNode::BlackboxNode(Index rows, Index cols, ApplyFn apply_fn, ApplyFn adjoint_fn,
                           std::uint64_t charge_apply, std::uint64_t charge_adjoint)
    : OpNode(rows, cols),
      apply_fn_(std::move(apply_fn)),
      adjoint_fn_(std::move(adjoint_fn)),
      charge_apply_(charge_apply),
      charge_adjoint_(charge_adjoint) {
  require(apply_fn_ != nullptr && adjoint_fn_ != nullptr, "blackbox_op: callables required");
}

CVec BlackboxNode::apply(const CVec& x, MultCounter& counter) const {
  CVec out = apply_fn_(x);
  if (out.size() != rows() || !all_finite(out))
    throw std::runtime_error("blackbox_op: apply callable returned bad output");
  counter.charge(charge_apply_);
  return out;
}

CVec BlackboxNode::adjoint(const CVec& y, MultCounter& counter) const {
  CVec out = adjoint_fn_(y);
  if (out.size() != cols() || !all_finite(out))
    throw std::runtime_error("blackbox_op: adjoint callable returned bad output");
  counter.charge(charge_adjoint_);
  return out;
}

SumNode::SumNode(RealLinearOp a, RealLinearOp b)
    : OpNode(a.rows(), a.cols()), a_(std::move(a)), b_(std::move(b)) {
  require(a_.rows() == b_.rows() && a_.cols() == b_.cols(),
          "add: operands must share dimensions");
}

CVec SumNode::apply(const CVec& x, MultCounter& counter) const {
  return a_.apply(x, counter) + b_.apply(x, counter);
}

CVec SumNode::adjoint(const CVec& y, MultCounter& counter) const {
  return a_.adjoint(y, counter) + b_.adjoint(y, counter);
}

ComposeNode::ComposeNode(RealLinearOp outer, RealLinearOp inner)
    : OpNode(outer.rows(), inner.cols()), outer_(std::move(outer)), inner_(std::move(inner)) {
  require(inner_.rows() == outer_.cols(), "compose: inner.rows must equal outer.cols");
}

CVec ComposeNode::apply(const CVec& x, MultCounter& counter) const {
  return outer_.apply(inner_.apply(x, counter), counter);
}

// (A2 o A1)* = A1* o A2*
CVec ComposeNode::adjoint(const CVec& y, MultCounter& counter) const {
  return inner_.adjoint(outer_.adjoint(y, counter), counter);
}

ScaleNode::ScaleNode(Complex factor, RealLinearOp op)
    : OpNode(op.rows(), op.cols()), factor_(factor), op_(std::move(op)) {
  require(std::isfinite(factor.real()) && std::isfinite(factor.imag()),
          "scale: non-finite factor");
}

std::uint64_t ScaleNode::charge_per_entry() const {
  const double re = factor_.real(), im = factor_.imag();
  const bool unit_re = (im == 0.0) && (re == 1.0 || re == -1.0);
  const bool unit_im = (re == 0.0) && (im == 1.0 || im == -1.0);
  if (unit_re || unit_im || factor_ == Complex(0.0, 0.0)) return 0;
  if (re == 0.0 || im == 0.0) return 2;
  return 4;
}

CVec ScaleNode::apply(const CVec& x, MultCounter& counter) const {
  CVec out = factor_ * op_.apply(x, counter);
  counter.charge(charge_per_entry() * static_cast<std::uint64_t>(rows()));
  return out;
}

// (c A)*(y) = A*(conj(c) y)
CVec ScaleNode::adjoint(const CVec& y, MultCounter& counter) const {
  CVec scaled = std::conj(factor_) * y;
  counter.charge(charge_per_entry() * static_cast<std::uint64_t>(rows()));
  return op_.adjoint(scaled, counter);
}

StackNode::StackNode(std::vector<RealLinearOp> blocks, Index rows, Index cols)
    : OpNode(rows, cols), blocks_(std::move(blocks)) {}

CVec StackNode::apply(const CVec& x, MultCounter& counter) const {
  CVec out(rows());
  Index at = 0;
  for (const auto& block : blocks_) {
    out.segment(at, block.rows()) = block.apply(x, counter);
    at += block.rows();
  }
  return out;
}

CVec StackNode::adjoint(const CVec& y, MultCounter& counter) const {
  CVec out = CVec::Zero(cols());
  Index at = 0;
  for (const auto& block : blocks_) {
    out += block.adjoint(y.segment(at, block.rows()), counter);
    at += block.rows();
  }
  return out;
}

AdjointNode::AdjointNode(RealLinearOp op) : OpNode(op.cols(), op.rows()), op_(std::move(op)) {}

CVec AdjointNode::apply(const CVec& x, MultCounter& counter) const {
  return op_.adjoint(x, counter);
}

CVec AdjointNode::adjoint(const CVec& y, MultCounter& counter) const {
  return op_.apply(y, counter);
}

SplitPartNode::SplitPartNode(Part part, RealLinearOp op)
    : OpNode(op.rows(), op.cols()), part_(part), op_(std::move(op)) {}

namespace {

// (a -+ i b)/2 with the sign picking the linear (-) or antilinear (+) part.
CVec combine_probes(const CVec& a, const CVec& b, SplitPartNode::Part part) {
  const Complex half_i(0.0, 0.5);
  if (part == SplitPartNode::Part::Linear) return 0.5 * a - half_i * b;
  return 0.5 * a + half_i * b;
}

} // namespace

CVec SplitPartNode::apply(const CVec& x, MultCounter& counter) const {
  const Complex i(0.0, 1.0);
  CVec a = op_.apply(x, counter);
  CVec b = op_.apply(i * x, counter);
  counter.charge(4ull * static_cast<std::uint64_t>(rows()));
  return combine_probes(a, b, part_);
}

// The linear part of A* is the adjoint of the linear part of A, and
// likewise for the antilinear parts, so the same probe formulas apply.
CVec SplitPartNode::adjoint(const CVec& y, MultCounter& counter) const {
  const Complex i(0.0, 1.0);
  CVec a = op_.adjoint(y, counter);
  CVec b = op_.adjoint(i * y, counter);
  counter.charge(4ull * static_cast<std::uint64_t>(cols()));
  return combine_probes(a, b, part_);
}

} // namespace detail

RealLinearOp::RealLinearOp(std::shared_ptr<const detail::OpNode> node) : node_(std::move(node)) {
  detail::require(node_ != nullptr, "operator: null node");
  rows_ = node_->rows();
  cols_ = node_->cols();
}

CVec RealLinearOp::apply(const CVec& x, MultCounter& counter) const {
  detail::require(valid(), "operator: empty");
  detail::require(x.size() == cols_, "apply: dimension mismatch");
  detail::require(detail::all_finite(x), "apply: non-finite input");
  return node_->apply(x, counter);
}

CVec RealLinearOp::apply(const CVec& x) const {
  MultCounter scratch;
  return apply(x, scratch);
}

CVec RealLinearOp::adjoint(const CVec& y, MultCounter& counter) const {
  detail::require(valid(), "operator: empty");
  detail::require(y.size() == rows_, "adjoint: dimension mismatch");
  detail::require(detail::all_finite(y), "adjoint: non-finite input");
  return node_->adjoint(y, counter);
}

CVec RealLinearOp::adjoint(const CVec& y) const {
  MultCounter scratch;
  return adjoint(y, scratch);
}

RealLinearOp matrix_op(CMat F, CMat G) {
  return matrix_op(MatrixFormData{std::move(F), std::move(G)});
}

RealLinearOp matrix_op(MatrixFormData form) {
  detail::require(form.has_linear() || form.has_antilinear(),
                  "matrix_op: at least one of F, G must be present");
  return RealLinearOp(std::make_shared<detail::MatrixNode>(std::move(form)));
}

RealLinearOp linear_op(CMat F) { return matrix_op(MatrixFormData{std::move(F), CMat()}); }

RealLinearOp antilinear_op(CMat G) { return matrix_op(MatrixFormData{CMat(), std::move(G)}); }

namespace {

// Construction-time screening of user callables: additivity, homogeneity
// for real scalars, and the adjoint identity under real_inner, on 8
// deterministic pseudo-random probes at 1e-10 relative.
void validate_blackbox(Index rows, Index cols, const ApplyFn& apply_fn, const ApplyFn& adjoint_fn) {
  constexpr double tol = 1e-10;
  constexpr int probes = 8;
  std::mt19937_64 eng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](Index n) {
    CVec v(n);
    for (Index i = 0; i < n; ++i) v[i] = Complex(gauss(eng), gauss(eng));
    return v;
  };

  for (int t = 0; t < probes; ++t) {
    const CVec x = draw(cols);
    const CVec y = draw(cols);
    const CVec w = draw(rows);
    const double alpha = 0.25 + 1.75 * std::abs(gauss(eng));

    const CVec ax = apply_fn(x);
    const CVec ay = apply_fn(y);
    const CVec aw = adjoint_fn(w);
    detail::require(ax.size() == rows && ay.size() == rows && aw.size() == cols,
                    "blackbox_op: callable output has wrong length");
    detail::require(detail::all_finite(ax) && detail::all_finite(ay) && detail::all_finite(aw),
                    "blackbox_op: callable output is non-finite");

    const double scale_add = ax.norm() + ay.norm() + 1e-300;
    detail::require((apply_fn(x + y) - ax - ay).norm() <= tol * scale_add,
                    "blackbox_op: apply callable violates additivity");

    const double scale_hom = alpha * ax.norm() + 1e-300;
    detail::require((apply_fn(alpha * x) - alpha * ax).norm() <= tol * scale_hom,
                    "blackbox_op: apply callable violates real homogeneity");

    const double lhs = real_inner(ax, w);
    const double rhs = real_inner(x, aw);
    const double scale_adj = ax.norm() * w.norm() + x.norm() * aw.norm() + 1e-300;
    detail::require(std::abs(lhs - rhs) <= tol * scale_adj,
                    "blackbox_op: adjoint callable violates the adjoint identity");
  }
}

} // namespace

RealLinearOp blackbox_op(Index rows, Index cols, ApplyFn apply_fn, ApplyFn adjoint_fn,
                         std::uint64_t mult_charge_apply, std::uint64_t mult_charge_adjoint) {
  detail::require(rows > 0 && cols > 0, "blackbox_op: degenerate dimensions rejected");
  detail::require(apply_fn != nullptr && adjoint_fn != nullptr, "blackbox_op: callables required");
  validate_blackbox(rows, cols, apply_fn, adjoint_fn);
  return RealLinearOp(std::make_shared<detail::BlackboxNode>(
      rows, cols, std::move(apply_fn), std::move(adjoint_fn), mult_charge_apply,
      mult_charge_adjoint));
}

RealLinearOp add(RealLinearOp a, RealLinearOp b) {
  return RealLinearOp(std::make_shared<detail::SumNode>(std::move(a), std::move(b)));
}

RealLinearOp compose(RealLinearOp outer, RealLinearOp inner) {
  return RealLinearOp(std::make_shared<detail::ComposeNode>(std::move(outer), std::move(inner)));
}

RealLinearOp scale(Complex factor, RealLinearOp op) {
  return RealLinearOp(std::make_shared<detail::ScaleNode>(factor, std::move(op)));
}

RealLinearOp stack(std::vector<RealLinearOp> blocks) {
  detail::require(!blocks.empty(), "stack: needs at least one block");
  const Index cols = blocks.front().cols();
  Index rows = 0;
  for (const auto& block : blocks) {
    detail::require(block.valid(), "stack: empty block");
    detail::require(block.cols() == cols, "stack: blocks must share the domain");
    rows += block.rows();
  }
  return RealLinearOp(std::make_shared<detail::StackNode>(std::move(blocks), rows, cols));
}

RealLinearOp adjoint_of(RealLinearOp op) {
  detail::require(op.valid(), "adjoint_of: empty operator");
  return RealLinearOp(std::make_shared<detail::AdjointNode>(std::move(op)));
}

bool is_matrix_form(const RealLinearOp& op) {
  return op.valid() && dynamic_cast<const detail::MatrixNode*>(op.node().get()) != nullptr;
}

MatrixFormData materialize(const RealLinearOp& op) {
  detail::require(op.valid(), "materialize: empty operator");
  if (const auto* leaf = dynamic_cast<const detail::MatrixNode*>(op.node().get()))
    return leaf->form();

  const Index m = op.rows();
  const Index n = op.cols();
  const Complex i(0.0, 1.0);
  CMat F(m, n), G(m, n);
  MultCounter scratch;
  CVec e = CVec::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = Complex(1.0, 0.0);
    const CVec a = op.apply(e, scratch);
    e[j] = i;
    const CVec b = op.apply(e, scratch);
    e[j] = Complex(0.0, 0.0);
    // f_j = (A(e_j) - i A(i e_j))/2, conj(g_j) = (A(e_j) + i A(i e_j))/2
    F.col(j) = 0.5 * (a - i * b);
    G.col(j) = (0.5 * (a + i * b)).conjugate();
  }
  MatrixFormData out;
  if (!F.isZero(0.0)) out.F = std::move(F);
  if (!G.isZero(0.0)) out.G = std::move(G);
  if (!out.has_linear() && !out.has_antilinear()) out.F = CMat::Zero(m, n); // zero operator
  return out;
}

MatrixFormData matrix_form(const RealLinearOp& op) { return materialize(op); }

namespace {

CMat conj_or_empty(const CMat& m) { return m.size() == 0 ? CMat() : CMat(m.conjugate()); }

// a + b where either side may be declared-zero.
CMat add_parts(const CMat& a, const CMat& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  return a + b;
}

// a * b where either side may be declared-zero.
CMat mul_parts(const CMat& a, const CMat& b) {
  if (a.size() == 0 || b.size() == 0) return CMat();
  return a * b;
}

} // namespace

RealLinearOp add_eager(const RealLinearOp& a, const RealLinearOp& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(),
                  "add_eager: operands must share dimensions");
  MatrixFormData fa = matrix_form(a);
  MatrixFormData fb = matrix_form(b);
  MatrixFormData out{add_parts(fa.F, fb.F), add_parts(fa.G, fb.G)};
  if (!out.has_linear() && !out.has_antilinear()) out.F = CMat::Zero(a.rows(), a.cols());
  return matrix_op(std::move(out));
}

RealLinearOp compose_eager(const RealLinearOp& outer, const RealLinearOp& inner) {
  detail::require(inner.rows() == outer.cols(), "compose_eager: inner.rows must equal outer.cols");
  MatrixFormData fo = matrix_form(outer);
  MatrixFormData fi = matrix_form(inner);
  // F = F2 F1 + conj(G2) G1, G = conj(F2) G1 + G2 F1
  MatrixFormData out{add_parts(mul_parts(fo.F, fi.F), mul_parts(conj_or_empty(fo.G), fi.G)),
                     add_parts(mul_parts(conj_or_empty(fo.F), fi.G), mul_parts(fo.G, fi.F))};
  if (!out.has_linear() && !out.has_antilinear()) out.F = CMat::Zero(outer.rows(), inner.cols());
  return matrix_op(std::move(out));
}

std::pair<RealLinearOp, RealLinearOp> split_linear_antilinear(RealLinearOp op) {
  detail::require(op.valid(), "split_linear_antilinear: empty operator");
  if (const auto* leaf = dynamic_cast<const detail::MatrixNode*>(op.node().get())) {
    const MatrixFormData& form = leaf->form();
    const Index m = op.rows(), n = op.cols();
    RealLinearOp linear =
        form.has_linear() ? linear_op(form.F) : linear_op(CMat::Zero(m, n));
    RealLinearOp antilinear =
        form.has_antilinear() ? antilinear_op(form.G) : antilinear_op(CMat::Zero(m, n));
    return {std::move(linear), std::move(antilinear)};
  }
  RealLinearOp linear(
      std::make_shared<detail::SplitPartNode>(detail::SplitPartNode::Part::Linear, op));
  RealLinearOp antilinear(
      std::make_shared<detail::SplitPartNode>(detail::SplitPartNode::Part::Antilinear, op));
  return {std::move(linear), std::move(antilinear)};
}

} // namespace rlops
