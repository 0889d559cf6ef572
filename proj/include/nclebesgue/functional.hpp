#pragma once

#include <optional>

#include "nclebesgue/algebra.hpp"

namespace ncl {

/// A linear functional on a CStarAlgebra, stored by its values on the basis.
/// The Gram form G(i, j) = μ(b_i* b_j) is computed at construction.
class PLF {
 public:
  PLF(AlgebraPtr algebra, Vector values);
  static PLF zero(AlgebraPtr algebra);

  const CStarAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Vector& values() const { return values_; }
  const Matrix& gram() const { return gram_; }

  /// μ(Σ α_k b_k) = Σ α_k v_k.
  cplx on_coords(const Vector& coords) const { return (coords.transpose() * values_)(0); }
  /// μ(1). Positive functionals attain their norm here.
  double norm() const { return on_coords(algebra_->unit_coords()).real(); }
  /// The unique W in the algebra with μ(x) = tr(W x).
  Matrix density() const;

  PLF operator+(const PLF& other) const;
  PLF operator-(const PLF& other) const;
  PLF operator*(double s) const;

 private:
  AlgebraPtr algebra_;
  Vector values_;
  Matrix gram_;
};

inline PLF operator*(double s, const PLF& mu) { return mu * s; }

bool same_algebra(const CStarAlgebra& a, const CStarAlgebra& b);

/// v_k = tr(ρ b_k). Throws NotPSD unless ρ is PSD.
PLF plf_from_density(AlgebraPtr algebra, const Matrix& rho, const Tolerance& tol);

/// Throws NotInAlgebra when `a` is outside the algebra.
cplx evaluate(const PLF& mu, const Matrix& a);

bool is_positive(const PLF& mu, const Tolerance& tol);

/// N_μ in coordinates: the kernel of the Gram form. Throws NotPositive.
Subspace isotropic_ideal(const PLF& mu, const Tolerance& tol);

/// ν − μ is positive.
bool leq(const PLF& mu, const PLF& nu, const Tolerance& tol);

/// N_λ ⊆ N_μ.
bool ideal_contained(const PLF& lambda, const PLF& mu, const Tolerance& tol);

/// ‖λ‖ λ(a*a) − |λ(a)|², non-negative for positive λ.
double kadison_residual(const PLF& lambda, const Matrix& a);

struct FaithfulCompression {
  Matrix central_support;  ///< z: central projection with ker π_λ = (1 − z)A
  Matrix support;          ///< p ≤ z: smallest projection in A with λ(1 − p) = 0
  Matrix embedding;        ///< isometry V onto range(p)
  AlgebraPtr compressed;   ///< V* A V acting on range(p); null when λ = 0
  std::optional<PLF> compressed_state;
};

/// Central support of λ (from the kernel of its GNS representation) together
/// with the compression on which λ is faithful. Throws NotPositive, and
/// NoComplementUnit if the computed unit fails its projection checks.
FaithfulCompression faithful_central_projection(const PLF& lambda, const Tolerance& tol);

}  // namespace ncl
