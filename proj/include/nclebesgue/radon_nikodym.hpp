#pragma once

#include <vector>

#include "nclebesgue/gns.hpp"

namespace ncl {

/// D_λμ in π_λ(A)′ with μ(a) = ⟨π_λ(a) √D ξ_λ, √D ξ_λ⟩.
struct Derivative {
  Matrix d;                 ///< r × r, PSD
  Vector commutant_coords;  ///< coordinates of D in the commutant basis used by the solve
  AlgebraPtr commutant;     ///< that basis; null when r = 0
  Matrix sqrt_d;
  double norm_bound = 0.0;  ///< largest eigenvalue of D
  RealVector spectrum;      ///< eigenvalues of D, descending
  double solve_residual = 0.0;
};

/// Throws NotPositive, NotAbsolutelyContinuous, SolveSingular, NotRepresentable.
Derivative derivative(const PLF& mu, const PLF& lambda, const GnsData& data, const Tolerance& tol);

/// Same solve against an explicit commutant basis, with the moment equations
/// taken in the given order (used to cross-check uniqueness).
Derivative derivative_in_basis(const PLF& mu, const GnsData& data, AlgebraPtr commutant_basis,
                               const std::vector<Index>& equation_order, const Tolerance& tol);

/// a ↦ ⟨π_λ(a) √D ξ_λ, √D ξ_λ⟩ on the basis of A.
PLF reconstruct(const Derivative& deriv, const GnsData& data);

/// a ↦ ⟨π_λ(a) D ξ_λ, ξ_λ⟩; equal to reconstruct because D commutes with π_λ(A).
PLF reconstruct_linear(const Derivative& deriv, const GnsData& data);

struct DominationCheck {
  bool precondition = false;  ///< μ ≤ t λ
  bool bounded = false;       ///< ‖D‖ ≤ t + eq_abs
  double norm_bound = 0.0;
  double form_residual = 0.0;  ///< max |reconstruct − reconstruct_linear| on basis values
  bool passed() const { return precondition && bounded; }
};

DominationCheck bounded_domination_check(const Derivative& deriv, const GnsData& data, const PLF& mu,
                                         const PLF& lambda, double t, const Tolerance& tol);

/// ‖(1 + D₁)⁻¹ − (1 + D₂)⁻¹‖. Throws ShapeMismatch unless both act on the same space.
double resolvent_distance(const Derivative& d1, const Derivative& d2);

/// max_i ‖D π_λ(b_i) − π_λ(b_i) D‖.
double affiliation_residual(const Derivative& deriv, const GnsData& data);

}  // namespace ncl
