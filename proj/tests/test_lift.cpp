// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "rlops/builtins.hpp"
#include "rlops/lift.hpp"
#include "support.hpp"

using namespace rlops;
using testsupport::random_cmat;
using testsupport::random_cvec;
using testsupport::random_operator;
using testsupport::random_rvec;

namespace {

CVec cvec(std::initializer_list<Complex> entries) {
  CVec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const Complex& z : entries) v[i++] = z;
  return v;
}

CMat cmat1(Complex z) {
  CMat m(1, 1);
  m(0, 0) = z;
  return m;
}

} // namespace

TEST_CASE("lift/unlift: stacking order and exact round trips") {
  const RVec lifted = lift_vector(cvec({{1, 2}, {3, 0}}));
  RVec want(4);
  want << 1, 3, 2, 0;
  CHECK((lifted - want).norm() == 0.0);

  RVec packed(4);
  packed << 0, 0, 1, 1;
  const CVec back = unlift_vector(packed);
  CHECK((back - cvec({{0, 1}, {0, 1}})).norm() == 0.0);

  std::mt19937_64 eng(60);
  for (int t = 0; t < 100; ++t) {
    const CVec x = random_cvec(eng, 1 + eng() % 16);
    const CVec round = unlift_vector(lift_vector(x));
    REQUIRE(round.size() == x.size());
    for (Index i = 0; i < x.size(); ++i) {
      CHECK(round[i].real() == x[i].real());
      CHECK(round[i].imag() == x[i].imag());
    }
  }

  CHECK_THROWS_AS((void)unlift_vector(RVec::Zero(3)), std::invalid_argument);
}

TEST_CASE("lift_operator: small closed forms") {
  // multiplication by i is the quarter-turn rotation
  const LiftedMatrix roti = lift_operator(linear_op(cmat1({0, 1})));
  RMat want(2, 2);
  want << 0, -1, 1, 0;
  CHECK((roti.matrix() - want).norm() == 0.0);

  // conjugation is the reflection
  const LiftedMatrix refl = lift_operator(conjugation(1));
  want << 1, 0, 0, -1;
  CHECK((refl.matrix() - want).norm() == 0.0);

  // F = [1+2i], G = [3-i]
  const LiftedMatrix pair = lift_operator(matrix_op(cmat1({1, 2}), cmat1({3, -1})));
  want << 4, -1, 3, -2;
  CHECK((pair.matrix() - want).norm() == 0.0);
  // first column is the lifted image of x = 1
  RealLinearOp op = matrix_op(cmat1({1, 2}), cmat1({3, -1}));
  CHECK((pair.matrix().col(0) - lift_vector(op.apply(cvec({{1, 0}})))).norm() < 1e-15);
}

TEST_CASE("lifted action reproduces apply and adjoint exactly enough") {
  std::mt19937_64 eng(61);
  MultCounter c;
  for (int t = 0; t < 30; ++t) {
    const Index rows = 1 + eng() % 8;
    const Index cols = 1 + eng() % 8;
    RealLinearOp op = random_operator(eng, rows, cols, 2);
    const LiftedMatrix lifted = lift_operator(op);

    const CVec m = random_cvec(eng, cols);
    const CVec forward = op.apply(m, c);
    CHECK((lifted.apply(lift_vector(m), c) - lift_vector(forward)).norm() <=
          1e-12 * (forward.norm() + 1e-12));

    const CVec n = random_cvec(eng, rows);
    const CVec back = op.adjoint(n, c);
    CHECK((lifted.adjoint(lift_vector(n), c) - lift_vector(back)).norm() <=
          1e-12 * (back.norm() + 1e-12));
  }
}

TEST_CASE("lifted residual norm equals the complex cost") {
  std::mt19937_64 eng(62);
  MultCounter c;
  for (int t = 0; t < 10; ++t) {
    const Index rows = 2 + eng() % 6;
    const Index cols = 1 + eng() % 4;
    RealLinearOp op = random_operator(eng, rows, cols, 1);
    const LiftedMatrix lifted = lift_operator(op);
    const CVec x = random_cvec(eng, cols);
    const CVec b = random_cvec(eng, rows);

    const double complex_cost = (op.apply(x, c) - b).squaredNorm();
    const double lifted_residual =
        (lifted.apply(lift_vector(x), c) - lift_vector(b)).squaredNorm();
    CHECK(std::abs(complex_cost - lifted_residual) <= 1e-12 * (complex_cost + 1e-12));
  }
}

TEST_CASE("conjugate_penalty_lifted: hand-checked 1x1 blocks") {
  const CMat one = CMat::Ones(1, 1);
  const LiftedMatrix lifted = conjugate_penalty_lifted(one, one, one, one, 1.0);
  // H11 = 1 - 1 - 0 = 0, H12 = 0, H21 = 0, H22 = 1 + 0 + 1 = 2
  RMat want(4, 2);
  want << 1, 0, 0, 0, 0, 1, 0, 2;
  CHECK((lifted.matrix() - want).norm() == 0.0);
}

TEST_CASE("conjugate_penalty_lifted: D = 0 removes the prediction blocks") {
  std::mt19937_64 eng(63);
  const Index n = 3, m1 = 4, m2 = 3, p = 2;
  const double lambda = 0.25;
  const double root = std::sqrt(lambda);
  const CMat A = random_cmat(eng, m1, n);
  const CMat C = random_cmat(eng, m2, n);
  const CMat D = CMat::Zero(m2, p);
  const CMat E = random_cmat(eng, p, n);
  const LiftedMatrix lifted = conjugate_penalty_lifted(A, C, D, E, lambda);

  const RMat re_c = C.real(), im_c = C.imag();
  CHECK((lifted.matrix().block(m1, 0, m2, n) - root * re_c).norm() < 1e-15);
  CHECK((lifted.matrix().block(m1, n, m2, n) + root * im_c).norm() < 1e-15);
  CHECK((lifted.matrix().block(m1 + m2 + m1, 0, m2, n) - root * im_c).norm() < 1e-15);
  CHECK((lifted.matrix().block(m1 + m2 + m1, n, m2, n) - root * re_c).norm() < 1e-15);
}

TEST_CASE("conjugate_penalty_lifted agrees with the generic lift route") {
  std::mt19937_64 eng(64);
  for (int t = 0; t < 10; ++t) {
    const Index n = 1 + eng() % 5;
    const Index m1 = 1 + eng() % 5;
    const Index m2 = 1 + eng() % 5;
    const Index p = 1 + eng() % 5;
    const double lambda = 0.05 + 0.5 * static_cast<double>(eng() % 7);
    const CMat A = random_cmat(eng, m1, n);
    const CMat C = random_cmat(eng, m2, n);
    const CMat D = random_cmat(eng, m2, p);
    const CMat E = random_cmat(eng, p, n);

    const LiftedMatrix direct = conjugate_penalty_lifted(A, C, D, E, lambda);
    const LiftedMatrix generic = lift_operator(conjugate_penalty_system(A, C, D, E, lambda));
    const double scale = generic.matrix().cwiseAbs().maxCoeff() + 1e-12;
    CHECK((direct.matrix() - generic.matrix()).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  }
}

TEST_CASE("naive funcall lift: conjugation flips the imaginary block") {
  NaiveFuncallMap map = NaiveFuncallMap::from_operator(conjugation(3));
  std::mt19937_64 eng(65);
  MultCounter c;
  const RVec x = random_rvec(eng, 6);
  const RVec y = map.apply(x, c);
  CHECK((y.head(3) - x.head(3)).norm() == 0.0);
  CHECK((y.tail(3) + x.tail(3)).norm() == 0.0);
}

TEST_CASE("naive funcall lift: charges exactly the constituent calls") {
  std::mt19937_64 eng(66);
  const Index n = 4, m1 = 6, m2 = 5, p = 3;
  auto a = std::make_shared<const CMat>(random_cmat(eng, m1, n));
  auto cc = std::make_shared<const CMat>(random_cmat(eng, m2, n));
  auto d = std::make_shared<const CMat>(random_cmat(eng, m2, p));
  auto e = std::make_shared<const CMat>(random_cmat(eng, p, n));
  auto wrap = [](const std::shared_ptr<const CMat>& mat) {
    const Index rows = mat->rows(), cols = mat->cols();
    return blackbox_op(
        rows, cols, [mat](const CVec& x) { return CVec(*mat * x); },
        [mat](const CVec& y) { return CVec(mat->adjoint() * y); }, 4ull * rows * cols,
        4ull * rows * cols);
  };
  NaiveFuncallMap map =
      NaiveFuncallMap::conjugate_penalty(wrap(a), wrap(cc), wrap(d), wrap(e), 1e-2);

  MultCounter apply_counter;
  (void)map.apply(random_rvec(eng, 2 * n), apply_counter);
  const std::uint64_t per_a = 4ull * m1 * n;
  const std::uint64_t per_c = 4ull * m2 * n;
  const std::uint64_t per_d = 4ull * m2 * p;
  const std::uint64_t per_e = 4ull * p * n;
  // 4 calls to A, 4 to C, 8 to D, 8 to E
  CHECK(apply_counter.total() == 4 * per_a + 4 * per_c + 8 * per_d + 8 * per_e);

  MultCounter adjoint_counter;
  (void)map.adjoint(random_rvec(eng, 2 * (m1 + m2)), adjoint_counter);
  CHECK(adjoint_counter.total() == 4 * per_a + 4 * per_c + 8 * per_d + 8 * per_e);
}

TEST_CASE("naive funcall lift matches the dense lifted matrix") {
  std::mt19937_64 eng(67);
  MultCounter c;
  for (int t = 0; t < 6; ++t) {
    const Index n = 1 + eng() % 4;
    const Index m1 = 1 + eng() % 4;
    const Index m2 = 1 + eng() % 4;
    const Index p = 1 + eng() % 4;
    const double lambda = 0.3;
    const CMat A = random_cmat(eng, m1, n);
    const CMat C = random_cmat(eng, m2, n);
    const CMat D = random_cmat(eng, m2, p);
    const CMat E = random_cmat(eng, p, n);
    auto wrap = [](const CMat& mat) {
      auto held = std::make_shared<const CMat>(mat);
      return blackbox_op(
          held->rows(), held->cols(), [held](const CVec& x) { return CVec(*held * x); },
          [held](const CVec& y) { return CVec(held->adjoint() * y); }, 0, 0);
    };
    NaiveFuncallMap naive =
        NaiveFuncallMap::conjugate_penalty(wrap(A), wrap(C), wrap(D), wrap(E), lambda);
    const LiftedMatrix dense = conjugate_penalty_lifted(A, C, D, E, lambda);

    const RVec x = random_rvec(eng, 2 * n);
    const RVec via_dense = dense.apply(x, c);
    CHECK((naive.apply(x, c) - via_dense).norm() <= 1e-12 * (via_dense.norm() + 1e-12));

    const RVec y = random_rvec(eng, 2 * (m1 + m2));
    const RVec adj_dense = dense.adjoint(y, c);
    CHECK((naive.adjoint(y, c) - adj_dense).norm() <= 1e-12 * (adj_dense.norm() + 1e-12));
  }

  // generic single-operator form against its dense lift
  for (int t = 0; t < 6; ++t) {
    const Index rows = 1 + eng() % 5;
    const Index cols = 1 + eng() % 5;
    RealLinearOp op = random_operator(eng, rows, cols, 1);
    NaiveFuncallMap naive = NaiveFuncallMap::from_operator(op);
    const LiftedMatrix dense = lift_operator(op);
    const RVec x = random_rvec(eng, 2 * cols);
    const RVec want = dense.apply(x, c);
    CHECK((naive.apply(x, c) - want).norm() <= 1e-12 * (want.norm() + 1e-12));
    const RVec y = random_rvec(eng, 2 * rows);
    const RVec want_adj = dense.adjoint(y, c);
    CHECK((naive.adjoint(y, c) - want_adj).norm() <= 1e-12 * (want_adj.norm() + 1e-12));
  }
}

TEST_CASE("lifted map input validation") {
  std::mt19937_64 eng(68);
  const LiftedMatrix lifted = lift_operator(linear_op(random_cmat(eng, 3, 2)));
  MultCounter c;
  CHECK_THROWS_AS((void)lifted.apply(RVec::Zero(5), c), std::invalid_argument);
  CHECK_THROWS_AS((void)lifted.adjoint(RVec::Zero(5), c), std::invalid_argument);
  CHECK_THROWS_AS(conjugate_penalty_lifted(random_cmat(eng, 2, 2), random_cmat(eng, 2, 2),
                                           random_cmat(eng, 2, 2), random_cmat(eng, 2, 3), 1.0),
                  std::invalid_argument);
}
