// SPDX-License-Identifier: Apache-2.0

#include "rlops/lift.hpp"

#include <cmath>
#include <utility>

namespace rlops {

RVec lift_vector(const CVec& x) {
  RVec out(2 * x.size());
  out.head(x.size()) = x.real();
  out.tail(x.size()) = x.imag();
  return out;
}

CVec unlift_vector(const RVec& lifted) {
  detail::require(lifted.size() % 2 == 0, "unlift_vector: odd-length input");
  const Index n = lifted.size() / 2;
  CVec out(n);
  out.real() = lifted.head(n);
  out.imag() = lifted.tail(n);
  return out;
}

LiftedMap::LiftedMap(Index m, Index n) : m_(m), n_(n) {
  detail::require(m > 0 && n > 0, "lifted map: degenerate dimensions rejected");
}

RVec LiftedMap::apply(const RVec& x) const {
  MultCounter scratch;
  return apply(x, scratch);
}

RVec LiftedMap::adjoint(const RVec& y) const {
  MultCounter scratch;
  return adjoint(y, scratch);
}

LiftedMatrix::LiftedMatrix(RMat entries, Index m, Index n) : LiftedMap(m, n), mat_(std::move(entries)) {
  detail::require(mat_.rows() == 2 * m && mat_.cols() == 2 * n,
                  "LiftedMatrix: entries must be 2M x 2N");
  detail::require(mat_.allFinite(), "LiftedMatrix: non-finite entries");
}

RVec LiftedMatrix::apply(const RVec& x, MultCounter& counter) const {
  detail::require(x.size() == lifted_cols(), "LiftedMatrix::apply: dimension mismatch");
  detail::require(x.allFinite(), "LiftedMatrix::apply: non-finite input");
  counter.charge(static_cast<std::uint64_t>(lifted_rows()) *
                 static_cast<std::uint64_t>(lifted_cols()));
  return mat_ * x;
}

RVec LiftedMatrix::adjoint(const RVec& y, MultCounter& counter) const {
  detail::require(y.size() == lifted_rows(), "LiftedMatrix::adjoint: dimension mismatch");
  detail::require(y.allFinite(), "LiftedMatrix::adjoint: non-finite input");
  counter.charge(static_cast<std::uint64_t>(lifted_rows()) *
                 static_cast<std::uint64_t>(lifted_cols()));
  return mat_.transpose() * y;
}

LiftedMatrix lift_operator(const MatrixFormData& form) {
  const Index m = form.rows();
  const Index n = form.cols();
  const RMat zero = RMat::Zero(m, n);
  RMat re_f = form.has_linear() ? RMat(form.F.real()) : zero;
  RMat im_f = form.has_linear() ? RMat(form.F.imag()) : zero;
  RMat re_g = form.has_antilinear() ? RMat(form.G.real()) : zero;
  RMat im_g = form.has_antilinear() ? RMat(form.G.imag()) : zero;

  RMat lifted(2 * m, 2 * n);
  lifted.topLeftCorner(m, n) = re_f + re_g;
  lifted.topRightCorner(m, n) = -im_f - im_g;
  lifted.bottomLeftCorner(m, n) = im_f - im_g;
  lifted.bottomRightCorner(m, n) = re_f - re_g;
  return LiftedMatrix(std::move(lifted), m, n);
}

LiftedMatrix lift_operator(const RealLinearOp& op) { return lift_operator(matrix_form(op)); }

LiftedMatrix conjugate_penalty_lifted(const CMat& a, const CMat& c, const CMat& d, const CMat& e,
                                      double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "conjugate_penalty_lifted: lambda must be positive");
  const Index n = a.cols();
  const Index m1 = a.rows();
  const Index m2 = c.rows();
  const Index p = e.rows();
  detail::require(m1 > 0 && m2 > 0 && p > 0 && n > 0,
                  "conjugate_penalty_lifted: degenerate dimensions rejected");
  detail::require(c.cols() == n && e.cols() == n && d.rows() == m2 && d.cols() == p,
                  "conjugate_penalty_lifted: dimension mismatch");
  detail::require(detail::all_finite(a) && detail::all_finite(c) && detail::all_finite(d) &&
                      detail::all_finite(e),
                  "conjugate_penalty_lifted: non-finite entries");

  const double root = std::sqrt(lambda);
  const RMat re_a = a.real(), im_a = a.imag();
  const RMat re_c = c.real(), im_c = c.imag();
  const RMat re_d = d.real(), im_d = d.imag();
  const RMat re_e = e.real(), im_e = e.imag();

  const RMat h11 = root * re_c - root * re_d * re_e - root * im_d * im_e;
  const RMat h12 = -root * im_c + root * re_d * im_e - root * im_d * re_e;
  const RMat h21 = root * im_c - root * im_d * re_e + root * re_d * im_e;
  const RMat h22 = root * re_c + root * im_d * im_e + root * re_d * re_e;

  const Index m = m1 + m2;
  RMat lifted(2 * m, 2 * n);
  lifted.block(0, 0, m1, n) = re_a;
  lifted.block(0, n, m1, n) = -im_a;
  lifted.block(m1, 0, m2, n) = h11;
  lifted.block(m1, n, m2, n) = h12;
  lifted.block(m, 0, m1, n) = im_a;
  lifted.block(m, n, m1, n) = re_a;
  lifted.block(m + m1, 0, m2, n) = h21;
  lifted.block(m + m1, n, m2, n) = h22;
  return LiftedMatrix(std::move(lifted), m, n);
}

namespace {

CVec embed_real(const RVec& t) {
  CVec out = CVec::Zero(t.size());
  out.real() = t;
  return out;
}

CVec embed_imag(const RVec& t) {
  CVec out = CVec::Zero(t.size());
  out.imag() = t;
  return out;
}

} // namespace

NaiveFuncallMap::NaiveFuncallMap(Index m, Index n) : LiftedMap(m, n) {}

NaiveFuncallMap NaiveFuncallMap::from_operator(RealLinearOp op) {
  detail::require(op.valid(), "NaiveFuncallMap: empty operator");
  NaiveFuncallMap map(op.rows(), op.cols());
  map.single_ = std::move(op);
  return map;
}

NaiveFuncallMap NaiveFuncallMap::conjugate_penalty(RealLinearOp a, RealLinearOp c, RealLinearOp d,
                                                   RealLinearOp e, double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "NaiveFuncallMap: lambda must be positive");
  detail::require(a.valid() && c.valid() && d.valid() && e.valid(),
                  "NaiveFuncallMap: empty operand");
  const Index n = a.cols();
  detail::require(c.cols() == n && e.cols() == n && d.cols() == e.rows() && d.rows() == c.rows(),
                  "NaiveFuncallMap: dimension mismatch");
  NaiveFuncallMap map(a.rows() + c.rows(), n);
  map.penalty_form_ = true;
  map.m1_ = a.rows();
  map.m2_ = c.rows();
  map.p_ = e.rows();
  map.sqrt_lambda_ = std::sqrt(lambda);
  map.a_ = std::move(a);
  map.c_ = std::move(c);
  map.d_ = std::move(d);
  map.e_ = std::move(e);
  return map;
}

RVec NaiveFuncallMap::apply(const RVec& x, MultCounter& counter) const {
  detail::require(x.size() == lifted_cols(), "NaiveFuncallMap::apply: dimension mismatch");
  detail::require(x.allFinite(), "NaiveFuncallMap::apply: non-finite input");
  const Index n = n_;

  if (!penalty_form_) {
    // Four independent calls, one per real block of the lifted matrix.
    const CVec pr = embed_real(x.head(n));
    const CVec ps = embed_imag(x.tail(n)); // i * x_i
    RVec out(lifted_rows());
    out.head(m_) = single_.apply(pr, counter).real() + single_.apply(ps, counter).real();
    out.tail(m_) = single_.apply(pr, counter).imag() + single_.apply(ps, counter).imag();
    return out;
  }

  const CVec cr = embed_real(x.head(n));
  const CVec ci = embed_real(x.tail(n));

  // Row blocks from A: re(A) x_r - im(A) x_i and im(A) x_r + re(A) x_i,
  // each real block through its own call.
  const RVec block1 = RVec(a_.apply(cr, counter).real()) - RVec(a_.apply(ci, counter).imag());
  const RVec block3 = RVec(a_.apply(cr, counter).imag()) + RVec(a_.apply(ci, counter).real());

  // H11 x_r = sqrt(l) (re(C) x_r - re(D) re(E) x_r - im(D) im(E) x_r)
  RVec h11;
  {
    const RVec t1 = c_.apply(cr, counter).real();
    const RVec u = e_.apply(cr, counter).real();
    const RVec t2 = d_.apply(embed_real(u), counter).real();
    const RVec v = e_.apply(cr, counter).imag();
    const RVec t3 = d_.apply(embed_real(v), counter).imag();
    h11 = t1 - t2 - t3;
  }
  // H12 x_i = sqrt(l) (-im(C) x_i + re(D) im(E) x_i - im(D) re(E) x_i)
  RVec h12;
  {
    const RVec t1 = c_.apply(ci, counter).imag();
    const RVec u = e_.apply(ci, counter).imag();
    const RVec t2 = d_.apply(embed_real(u), counter).real();
    const RVec v = e_.apply(ci, counter).real();
    const RVec t3 = d_.apply(embed_real(v), counter).imag();
    h12 = -t1 + t2 - t3;
  }
  // H21 x_r = sqrt(l) (im(C) x_r - im(D) re(E) x_r + re(D) im(E) x_r)
  RVec h21;
  {
    const RVec t1 = c_.apply(cr, counter).imag();
    const RVec u = e_.apply(cr, counter).real();
    const RVec t2 = d_.apply(embed_real(u), counter).imag();
    const RVec v = e_.apply(cr, counter).imag();
    const RVec t3 = d_.apply(embed_real(v), counter).real();
    h21 = t1 - t2 + t3;
  }
  // H22 x_i = sqrt(l) (re(C) x_i + im(D) im(E) x_i + re(D) re(E) x_i)
  RVec h22;
  {
    const RVec t1 = c_.apply(ci, counter).real();
    const RVec u = e_.apply(ci, counter).imag();
    const RVec t2 = d_.apply(embed_real(u), counter).imag();
    const RVec v = e_.apply(ci, counter).real();
    const RVec t3 = d_.apply(embed_real(v), counter).real();
    h22 = t1 + t2 + t3;
  }

  RVec out(lifted_rows());
  out.segment(0, m1_) = block1;
  out.segment(m1_, m2_) = sqrt_lambda_ * (h11 + h12);
  out.segment(m_, m1_) = block3;
  out.segment(m_ + m1_, m2_) = sqrt_lambda_ * (h21 + h22);
  return out;
}

RVec NaiveFuncallMap::adjoint(const RVec& y, MultCounter& counter) const {
  detail::require(y.size() == lifted_rows(), "NaiveFuncallMap::adjoint: dimension mismatch");
  detail::require(y.allFinite(), "NaiveFuncallMap::adjoint: non-finite input");

  if (!penalty_form_) {
    const CVec pr = embed_real(y.head(m_));
    const CVec ps = embed_imag(y.tail(m_));
    RVec out(lifted_cols());
    out.head(n_) = single_.adjoint(pr, counter).real() + single_.adjoint(ps, counter).real();
    out.tail(n_) = single_.adjoint(pr, counter).imag() + single_.adjoint(ps, counter).imag();
    return out;
  }

  const RVec nr1 = y.segment(0, m1_);
  const RVec nr2 = y.segment(m1_, m2_);
  const RVec ni1 = y.segment(m_, m1_);
  const RVec ni2 = y.segment(m_ + m1_, m2_);
  const CVec cr1 = embed_real(nr1);
  const CVec cr2 = embed_real(nr2);
  const CVec ci1 = embed_real(ni1);
  const CVec ci2 = embed_real(ni2);

  // Transposed real blocks through the conjugate-transpose callables:
  // re(A)^T t = real(A^H t) and im(A)^T t = -imag(A^H t).
  const RVec a1 = a_.adjoint(cr1, counter).real();          // re(A)^T n_r1
  const RVec a2 = -RVec(a_.adjoint(ci1, counter).imag());   // im(A)^T n_i1
  const RVec a3 = a_.adjoint(cr1, counter).imag();          // -im(A)^T n_r1
  const RVec a4 = a_.adjoint(ci1, counter).real();          // re(A)^T n_i1

  auto re_dt = [&](const RVec& t) { return RVec(d_.adjoint(embed_real(t), counter).real()); };
  auto im_dt = [&](const RVec& t) { return RVec(-d_.adjoint(embed_real(t), counter).imag()); };
  auto re_et = [&](const RVec& t) { return RVec(e_.adjoint(embed_real(t), counter).real()); };
  auto im_et = [&](const RVec& t) { return RVec(-e_.adjoint(embed_real(t), counter).imag()); };

  // H11^T n_r2 = sqrt(l) (re(C)^T - re(E)^T re(D)^T - im(E)^T im(D)^T) n_r2
  const RVec h11t = RVec(c_.adjoint(cr2, counter).real()) - re_et(re_dt(nr2)) - im_et(im_dt(nr2));
  // H21^T n_i2 = sqrt(l) (im(C)^T - re(E)^T im(D)^T + im(E)^T re(D)^T) n_i2
  const RVec h21t =
      RVec(-c_.adjoint(ci2, counter).imag()) - re_et(im_dt(ni2)) + im_et(re_dt(ni2));
  // H12^T n_r2 = sqrt(l) (-im(C)^T + im(E)^T re(D)^T - re(E)^T im(D)^T) n_r2
  const RVec h12t =
      RVec(c_.adjoint(cr2, counter).imag()) + im_et(re_dt(nr2)) - re_et(im_dt(nr2));
  // H22^T n_i2 = sqrt(l) (re(C)^T + im(E)^T im(D)^T + re(E)^T re(D)^T) n_i2
  const RVec h22t = RVec(c_.adjoint(ci2, counter).real()) + im_et(im_dt(ni2)) + re_et(re_dt(ni2));

  RVec out(lifted_cols());
  out.head(n_) = a1 + a2 + sqrt_lambda_ * (h11t + h21t);
  out.tail(n_) = a3 + a4 + sqrt_lambda_ * (h12t + h22t);
  return out;
}

} // namespace rlops
