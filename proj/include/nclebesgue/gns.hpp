#pragma once

#include <vector>

#include "nclebesgue/functional.hpp"

namespace ncl {

/// GNS triple of a positive functional λ.
///
/// L²(λ) is realized as C^r with r = rank G_λ. For G_λ = U diag(e) U* the
/// quotient factor is Q = U_r diag(√e) (zero modes dropped), the class of
/// a ∈ A is Q* coords(a), and π_λ(b_i) = Q* L_i Q diag(1/e).
struct GnsData {
  AlgebraPtr algebra;
  Vector lambda_values;
  Index dim = 0;              ///< r
  Matrix quotient;            ///< Q, d × r
  RealVector gram_spectrum;   ///< kept eigenvalues e of G_λ
  std::vector<Matrix> rep;    ///< π_λ(b_i), r × r each
  Vector cyclic;              ///< ξ_λ = class of the unit
  AlgebraPtr linf;            ///< π_λ(A)'' in M_r; null when r = 0
  AlgebraPtr linf_commutant;  ///< π_λ(A)' in M_r; null when r = 0

  bool degenerate() const { return dim == 0; }
  /// π_λ(Σ α_k b_k).
  Matrix represent(const Vector& coords) const;
  /// Class of a ∈ A in L²(λ).
  Vector vector_of(const Vector& coords) const { return quotient.adjoint() * coords; }
  /// r² × d matrix whose column i is vec(π_λ(b_i)).
  Matrix stacked_rep() const;
};

struct GnsResiduals {
  double homomorphism = 0.0;  ///< max ‖π(b_i)π(b_j) − π(b_i b_j)‖ and the b_i* b_j variant
  double adjoint = 0.0;       ///< max ‖π(b_i*) − π(b_i)*‖
  double cyclicity = 0.0;     ///< r − rank{π(a)ξ} as a smallest singular value gap
  double state = 0.0;         ///< max |⟨π(b_i)ξ, ξ⟩ − λ(b_i)|
};

/// Throws NotPositive. λ = 0 yields a degenerate GnsData with r = 0.
GnsData gns(const PLF& lambda, const Tolerance& tol);

GnsResiduals gns_residuals(const GnsData& data);

/// μ′(π_λ(a)) = μ(a) as a functional on L^∞(λ). Throws IllDefined naming the
/// failing condition: N_λ ⊄ N_μ or ker π_λ ⊄ ker μ.
PLF transfer(const GnsData& data, const PLF& mu, const Tolerance& tol);

/// Minimal-norm a ∈ A with π_λ(a) = x, for x in L∞(λ). Throws NotRepresentable.
Matrix preimage(const GnsData& data, const Matrix& x, const Tolerance& tol);

/// Vectors ξ_k with μ̂(x) = Σ ⟨x ξ_k, ξ_k⟩ on L^∞(λ); Σ‖ξ_k‖² = ‖μ̂‖.
/// Throws NotRepresentable.
std::vector<Vector> normal_decomposition_basis(const GnsData& data, const PLF& mu_hat,
                                               const Tolerance& tol);

}  // namespace ncl
