#include <doctest.h>

#include "nclebesgue/algebra.hpp"
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

// Checks the stored invariants: orthonormal basis, unit, closure,
// structure constants, left multiplication and adjoint coordinates.
void check_invariants(const CStarAlgebra& alg) {
  const Index d = alg.dim();
  const double n = static_cast<double>(alg.ambient_dim());
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const cplx ip = (alg.basis(j).adjoint() * alg.basis(i)).trace() / n;
      CHECK(std::abs(ip - cplx(i == j ? 1.0 : 0.0)) <= 1e-10);
      const Matrix prod = alg.basis(i).adjoint() * alg.basis(j);
      Matrix rebuilt = Matrix::Zero(prod.rows(), prod.cols());
      for (Index k = 0; k < d; ++k) rebuilt += alg.structure(i, j, k) * alg.basis(k);
      CHECK((rebuilt - prod).norm() <= 1e-9 * std::max(1.0, prod.norm()));
      const Vector left = alg.left_mult(i).col(j);
      CHECK((alg.element(left) - alg.basis(i) * alg.basis(j)).norm() <= 1e-9 * std::max(1.0, prod.norm()));
    }
  }
  CHECK((alg.element(alg.unit_coords()) - Matrix::Identity(alg.ambient_dim(), alg.ambient_dim())).norm() <= 1e-10);
  Rng rng(99);
  const Vector a = random_coords(alg, rng);
  CHECK((alg.element(alg.adjoint(a)) - alg.element(a).adjoint()).norm() <= 1e-9 * std::max(1.0, a.norm()));
}

}  // namespace

// ============================================================================
// Examples
// ============================================================================

TEST_CASE("generate examples") {
  const std::vector<Matrix> id{Matrix::Identity(2, 2)};
  CHECK(generate(id, 2, tol)->dim() == 1);

  const std::vector<Matrix> diag{m2(1, 0, 0, 0)};
  const AlgebraPtr d = generate(diag, 2, tol);
  CHECK(d->dim() == 2);
  CHECK(same_span(*d, *diagonal_algebra(2, tol)));

  const std::vector<Matrix> xz{m2(0, 1, 1, 0), m2(1, 0, 0, -1)};
  const AlgebraPtr full = generate(xz, 2, tol);
  CHECK(full->dim() == 4);
  CHECK(full->contains(m2(0, cplx(0, -1), cplx(0, 1), 0)));

  const std::vector<Matrix> bad{Matrix::Identity(2, 3)};
  try {
    generate(bad, 2, tol);
    FAIL("expected NonSquareGenerator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquareGenerator);
  }
}

TEST_CASE("commutant examples") {
  CHECK(commutant(*full_matrix_algebra(2, tol))->dim() == 1);
  const AlgebraPtr diag = diagonal_algebra(2, tol);
  CHECK(same_span(*commutant(*diag), *diag));
  CHECK(commutant(*generate(std::vector<Matrix>{Matrix::Identity(3, 3)}, 3, tol))->dim() == 9);
}

TEST_CASE("double commutant examples") {
  const AlgebraPtr diag = diagonal_algebra(2, tol);
  CHECK(same_span(*double_commutant(*diag), *diag));
  const AlgebraPtr scalars = generate(std::vector<Matrix>{Matrix::Identity(2, 2)}, 2, tol);
  CHECK(double_commutant(*scalars)->dim() == 1);
  CHECK(double_commutant(*full_matrix_algebra(3, tol))->dim() == 9);
}

TEST_CASE("center examples") {
  CHECK(center(*full_matrix_algebra(2, tol))->dim() == 1);
  CHECK(center(*diagonal_algebra(2, tol))->dim() == 2);
  Rng rng(3);
  const BlockAlgebra blocks = block_algebra({{2, 1}, {2, 1}}, rng, false);
  CHECK(blocks.algebra->ambient_dim() == 4);
  CHECK(center(*blocks.algebra)->dim() == 2);
}

TEST_CASE("coordinates and membership") {
  const AlgebraPtr diag = diagonal_algebra(2, tol);
  CHECK((diag->coords(Matrix::Identity(2, 2)) - diag->unit_coords()).norm() < 1e-14);
  CHECK_FALSE(diag->contains(m2(0, 1, 1, 0)));
  const AlgebraPtr full = full_matrix_algebra(3, tol);
  Vector e2 = Vector::Zero(full->dim());
  e2(1) = 1.0;
  CHECK((full->coords(full->basis(1)) - e2).norm() < 1e-14);
}

TEST_CASE("from_orthonormal_basis rejects spans that are not algebras") {
  const double s = std::sqrt(2.0);
  std::vector<Matrix> basis{Matrix::Identity(2, 2), m2(0, s, 0, 0)};
  try {
    CStarAlgebra::from_orthonormal_basis(basis, tol);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
  }
}

// ============================================================================
// Properties
// ============================================================================

TEST_CASE("random block algebras satisfy the stored invariants") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const BlockAlgebra b = random_block_algebra(6, rng);
    check_invariants(*b.algebra);
    CHECK(center(*b.algebra)->dim() == static_cast<Index>(b.central.size()));
    const AlgebraPtr c = commutant(*b.algebra);
    check_invariants(*c);
    CHECK(same_span(*commutant(*c), *b.algebra));
  }
}

TEST_CASE("generated algebra matches the block structure it came from") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto blocks = random_blocks(6, rng);
    const BlockAlgebra b = block_algebra(blocks, rng);
    Index dim = 0, comm = 0;
    for (const Block& blk : blocks) {
      dim += blk.size * blk.size;
      comm += blk.multiplicity * blk.multiplicity;
    }
    CHECK(b.algebra->dim() == dim);
    CHECK(commutant(*b.algebra)->dim() == comm);
    // two random elements generate the whole algebra generically
    const std::vector<Matrix> gens{random_element(*b.algebra, rng), random_element(*b.algebra, rng)};
    const AlgebraPtr g = generate(gens, b.algebra->ambient_dim(), tol);
    CHECK(same_span(*g, *b.algebra));
  }
}
