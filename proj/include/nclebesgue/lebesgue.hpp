#pragma once

#include <string>
#include <vector>

#include "nclebesgue/functional.hpp"

namespace ncl {

struct DecompositionDiagnostics {
  bool kernel_inclusion = false;   ///< N_λ ⊆ N_μ
  double parallel_sum_norm = 0.0;  ///< ‖G_{μ_s} : G_λ‖, zero for a singular remainder
  double short_residual = 0.0;     ///< ‖Gram(μ_ac values) − G_ac‖, the representability check
};

/// μ = μ_ac + μ_s relative to λ.
struct Decomposition {
  PLF mu_ac;
  PLF mu_s;
  PLF lambda;
  Matrix gram_ac;  ///< shorted Gram form of μ onto range(G_λ)
  DecompositionDiagnostics diagnostics;
};

/// Throws NotPositive, RepresentabilityBreach.
Decomposition decompose(const PLF& mu, const PLF& lambda, const Tolerance& tol);

struct AcVerdict {
  bool absolutely_continuous = false;
  /// Smallest t with G_μ ≤ t G_λ; only meaningful when absolutely continuous.
  double bound = 0.0;
};

AcVerdict is_absolutely_continuous(const PLF& mu, const PLF& lambda, const Tolerance& tol);

/// ‖G_μ : G_λ‖ ≤ eq_abs · max(‖G_μ‖, ‖G_λ‖).
bool is_singular(const PLF& mu, const PLF& lambda, const Tolerance& tol);

struct WitnessTerm {
  PLF mu;
  double bound;  ///< t_k with μ_k ≤ t_k λ
};

/// μ_k(a) = ⟨π_λ(a) D E_{[0, k s]} ξ_λ, ξ_λ⟩ for k = 1..n_terms with
/// s = ‖D‖ / n_terms, D the Radon–Nikodym derivative. Increasing, each term
/// dominated by k s λ, last term μ. Throws NotAbsolutelyContinuous.
std::vector<WitnessTerm> witness_sequence(const PLF& mu, const PLF& lambda, int n_terms, const Tolerance& tol);

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck& at(const std::string& name) const;
};

/// Additivity, monotonicity, hereditary, idempotence and basis-uniqueness
/// checks of the decomposition for the triple (μ, τ, λ).
PropertyReport property_suite(const PLF& mu, const PLF& tau, const PLF& lambda, const Tolerance& tol);

}  // namespace ncl
