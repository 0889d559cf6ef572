#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nclebesgue/numerics.hpp"

namespace ncl {

class CStarAlgebra;
using AlgebraPtr = std::shared_ptr<const CStarAlgebra>;

/// A unital self-adjoint subalgebra of M_n, stored through a basis that is
/// orthonormal for ⟨x, y⟩ = tr(y*x)/n. Immutable once built.
///
/// Coordinates are taken against that basis, so for a = Σ_k α_k b_k:
///   structure(k)(i, j) = c[i][j][k]  with  b_i* b_j = Σ_k c[i][j][k] b_k,
///   left_mult(i) · α = coords(b_i a),
///   adjoint_coords() · conj(α) = coords(a*).
class CStarAlgebra {
 public:
  /// Throws NotClosed if the span is not closed under products and adjoints
  /// or misses the identity.
  static AlgebraPtr from_orthonormal_basis(std::vector<Matrix> basis, const Tolerance& tol);

  /// Orthonormalizes `elements` and builds the algebra on their span.
  static AlgebraPtr from_span(std::span<const Matrix> elements, Index n, const Tolerance& tol);

  Index ambient_dim() const { return n_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const Tolerance& tolerance() const { return tol_; }

  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& basis(Index i) const { return basis_[static_cast<std::size_t>(i)]; }
  const Vector& unit_coords() const { return unit_; }

  const Matrix& structure(Index k) const { return structure_[static_cast<std::size_t>(k)]; }
  cplx structure(Index i, Index j, Index k) const { return structure(k)(i, j); }
  const Matrix& left_mult(Index i) const { return left_[static_cast<std::size_t>(i)]; }
  const Matrix& adjoint_coords() const { return adjoint_; }

  /// Orthogonal projection coordinates; exact for members of the algebra.
  Vector coords(const Matrix& a) const;
  Matrix element(const Vector& coords) const;
  Vector adjoint(const Vector& coords) const { return adjoint_ * coords.conjugate(); }

  /// Normalized Hilbert–Schmidt distance from `a` to the span.
  double residual(const Matrix& a) const;
  /// residual(a) ≤ eq_abs · ‖a‖ (normalized Hilbert–Schmidt norm).
  bool contains(const Matrix& a) const;

  /// Gram form G(i, j) = μ(b_i* b_j) of the functional with basis values v.
  Matrix gram_from_values(const Vector& values) const;

  /// Normalized trace inner product tr(y* x)/n.
  double hs_norm(const Matrix& a) const;

 private:
  CStarAlgebra() = default;

  Index n_ = 0;
  Tolerance tol_;
  std::vector<Matrix> basis_;
  Matrix stacked_;  // n² × d, column k = vec(b_k)
  Vector unit_;
  std::vector<Matrix> structure_;
  std::vector<Matrix> left_;
  Matrix adjoint_;
};

/// Smallest unital *-algebra containing the generators, by alternating
/// orthonormalization and pairwise products until the dimension settles.
AlgebraPtr generate(std::span<const Matrix> generators, Index n, const Tolerance& tol);

AlgebraPtr full_matrix_algebra(Index n, const Tolerance& tol);
AlgebraPtr diagonal_algebra(Index n, const Tolerance& tol);

/// {x ∈ M_n : x b = b x for all b in alg}.
AlgebraPtr commutant(const CStarAlgebra& alg);

/// commutant(commutant(alg)); throws BicommutantMismatch unless it spans
/// the same space as alg.
AlgebraPtr double_commutant(const CStarAlgebra& alg);

/// alg ∩ alg′.
AlgebraPtr center(const CStarAlgebra& alg);

/// True when the two algebras live in the same M_n and span the same space.
bool same_span(const CStarAlgebra& a, const CStarAlgebra& b);

}  // namespace ncl
