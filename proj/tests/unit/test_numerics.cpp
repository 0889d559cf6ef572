#include <doctest.h>

#include "nclebesgue/numerics.hpp"
#include "support/ando.hpp"
#include "support/random.hpp"

using namespace ncl;
using namespace ncl::testing;

namespace {

const Tolerance tol;

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix pauli_x() { return m2(0, 1, 1, 0); }

bool loewner_leq(const Matrix& lo, const Matrix& hi) {
  return psd_check(hermitian_part(hi - lo), tol, std::max(op_norm(hi), 1.0)).psd;
}

}  // namespace

// ============================================================================
// Examples
// ============================================================================

TEST_CASE("hermitian_eig examples") {
  auto id = hermitian_eig(Matrix::Identity(2, 2), tol);
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));

  auto d = hermitian_eig(m2(3, 0, 0, -1), tol);
  CHECK(d.values(0) == doctest::Approx(3.0));
  CHECK(d.values(1) == doctest::Approx(-1.0));
  CHECK((d.vectors - Matrix::Identity(2, 2)).norm() < 1e-14);

  auto x = hermitian_eig(pauli_x(), tol);
  CHECK(x.values(0) == doctest::Approx(1.0));
  CHECK(x.values(1) == doctest::Approx(-1.0));

  try {
    hermitian_eig(m2(0, 1, 0, 0), tol);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("matrix_exp examples") {
  CHECK((matrix_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-15);
  const Matrix d = matrix_exp(m2(std::log(2.0), 0, 0, 0));
  CHECK((d - m2(2, 0, 0, 1)).norm() < 1e-14);
  const Matrix minus = matrix_exp(cplx(0, M_PI) * pauli_x());
  CHECK((minus + Matrix::Identity(2, 2)).norm() < 1e-14);
  // non-normal input goes through scaling and squaring
  const Matrix jordan = matrix_exp(m2(0, 1, 0, 0));
  CHECK((jordan - m2(1, 1, 0, 1)).norm() < 1e-14);
}

TEST_CASE("pseudo_inverse examples") {
  CHECK((pseudo_inverse(Matrix::Identity(2, 2), tol) - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((pseudo_inverse(m2(2, 0, 0, 0), tol) - m2(0.5, 0, 0, 0)).norm() < 1e-15);
  CHECK((pseudo_inverse(m2(1, 1, 1, 1), tol) - m2(1, 1, 1, 1) / 4.0).norm() < 1e-15);
}

TEST_CASE("psd_check examples") {
  CHECK(psd_check(Matrix::Identity(2, 2), tol).psd);
  CHECK_FALSE(psd_check(m2(1, 0, 0, -1), tol).psd);
  const PsdReport r = psd_check(m2(2, 1, 1, 2), tol);
  CHECK(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(1.0));
}

TEST_CASE("shorted_operator examples") {
  Subspace full(Matrix::Identity(2, 2), tol);
  Subspace e1(Matrix::Identity(2, 1), tol);
  CHECK((shorted_operator(Matrix::Identity(2, 2), full, tol) - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(shorted_operator(m2(1, 1, 1, 1), e1, tol).norm() < 1e-15);
  CHECK((shorted_operator(Matrix::Identity(2, 2), e1, tol) - m2(1, 0, 0, 0)).norm() < 1e-15);
}

TEST_CASE("parallel_sum examples") {
  const Matrix id = Matrix::Identity(2, 2);
  CHECK((parallel_sum(id, id, tol) - id / 2.0).norm() < 1e-15);
  CHECK(parallel_sum(id, Matrix::Zero(2, 2), tol).norm() < 1e-15);
  CHECK(parallel_sum(m2(1, 0, 0, 0), m2(0, 0, 0, 1), tol).norm() < 1e-15);
}

TEST_CASE("subspaces") {
  Subspace e1(Matrix::Identity(3, 1), tol);
  CHECK(e1.complement().dim() == 2);
  Vector v(3);
  v << 1, 2, 2;
  CHECK(e1.distance(v) == doctest::Approx(std::sqrt(8.0)));
  CHECK(Subspace(3).dim() == 0);
  CHECK(Subspace(3).complement().dim() == 3);
  CHECK_THROWS_AS(Subspace(Matrix::Constant(2, 1, 1.0), tol), Error);
  CHECK(null_space(m2(1, 1, 1, 1), tol).dim() == 1);
  CHECK(psd_range(m2(1, 1, 1, 1), tol).dim() == 1);
  CHECK(psd_range(Matrix::Zero(2, 2), tol).dim() == 0);
}

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-9, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{1.0, 1e-9, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{1e-9, -1.0, 1e-9}.validate()), Error);
}

// ============================================================================
// Properties
// ============================================================================

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(1, 16);
    const Matrix m = random_hermitian(n, rng);
    const EigenSystem es = hermitian_eig(m, tol);
    const Matrix back = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    CHECK((back - m).cwiseAbs().maxCoeff() <= 10 * tol.eq_abs);
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 10 * tol.eq_abs);
    for (Index k = 1; k < n; ++k) CHECK(es.values(k - 1) >= es.values(k));
  }
}

TEST_CASE("pseudo_inverse satisfies the Moore-Penrose conditions") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.integer(1, 8);
    const Index r = rng.integer(0, static_cast<int>(n));
    const Matrix a = gaussian(n, r, rng) * gaussian(r, n, rng);
    const Matrix p = pseudo_inverse(a, tol);
    const double s = std::max(1.0, op_norm(a) * op_norm(p));
    CHECK((a * p * a - a).norm() <= 1e-9 * s * std::max(1.0, op_norm(a)));
    CHECK((p * a * p - p).norm() <= 1e-9 * s * std::max(1.0, op_norm(p)));
    CHECK(hermitian_residual(a * p) <= 1e-9 * s);
    CHECK(hermitian_residual(p * a) <= 1e-9 * s);
  }
}

TEST_CASE("shorted_operator is idempotent, below g, and ranged in s") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(1, 8);
    const Matrix g = random_psd(n, rng.integer(0, static_cast<int>(n)), rng);
    const Index k = rng.integer(0, static_cast<int>(n));
    const Subspace s(random_unitary(n, rng).leftCols(k), tol);
    const Matrix sh = shorted_operator(g, s, tol);
    CHECK((shorted_operator(sh, s, tol) - sh).cwiseAbs().maxCoeff() <= 10 * tol.eq_abs);
    CHECK(psd_check(sh, tol).psd);
    CHECK(loewner_leq(sh, g));
    const Matrix outside = s.complement().projector();
    CHECK((outside * sh).norm() <= 10 * tol.eq_abs);
  }
}

TEST_CASE("parallel_sum is symmetric and below both arguments") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(1, 8);
    const Matrix a = random_psd(n, rng.integer(0, static_cast<int>(n)), rng);
    const Matrix b = random_psd(n, rng.integer(0, static_cast<int>(n)), rng);
    const Matrix ab = parallel_sum(a, b, tol);
    CHECK((ab - parallel_sum(b, a, tol)).cwiseAbs().maxCoeff() <= tol.eq_abs);
    CHECK(loewner_leq(ab, a));
    CHECK(loewner_leq(ab, b));
  }
}

TEST_CASE("Ando iteration converges to the Schur short") {
  Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.integer(1, 6);
    const Matrix a = random_psd(n, rng.integer(1, static_cast<int>(n)), rng);
    const Matrix b = random_psd(n, rng.integer(0, static_cast<int>(n)), rng, 0.1);
    const Matrix target = shorted_operator(a, psd_range(b, tol), tol);
    CHECK(ando_limit_error(a, b, target).best_error <= 1e-8);
  }
}

TEST_CASE("psd_sqrt squares back") {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.integer(1, 8);
    const Matrix p = random_psd(n, rng.integer(0, static_cast<int>(n)), rng);
    const Matrix r = psd_sqrt(p, tol);
    CHECK((r * r - p).norm() <= 1e-12);
    CHECK(psd_check(r, tol).psd);
  }
}
