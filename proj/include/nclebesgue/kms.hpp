#pragma once

#include <vector>

#include "nclebesgue/functional.hpp"

namespace ncl {

/// Conjugation dynamics σ_z(a) = e^{izh} a e^{−izh} on an algebra, together
/// with an inverse temperature. The KMS condition at β is read as
/// λ(ab) = λ(b σ_{iβ}(a)).
class Dynamics {
 public:
  /// h Hermitian and inside the algebra. Throws NotHermitian, NotInAlgebra.
  static Dynamics inner(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol);
  /// h Hermitian in M_n with [h, a] in the algebra for every a, so that
  /// conjugation still preserves it (used for modular dynamics).
  static Dynamics spatial(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol);

  const CStarAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Matrix& hamiltonian() const { return h_; }
  double beta() const { return beta_; }
  /// Spectrum of h, descending, with eigenvectors.
  const EigenSystem& spectrum() const { return eig_; }

  /// e^{izh} a e^{−izh}. Throws NotInAlgebra.
  Matrix sigma(cplx z, const Matrix& a) const;
  /// Same map without the membership check.
  Matrix sigma_unchecked(cplx z, const Matrix& a) const;

 private:
  Dynamics(AlgebraPtr algebra, Matrix h, double beta, EigenSystem eig)
      : algebra_(std::move(algebra)), h_(std::move(h)), beta_(beta), eig_(std::move(eig)) {}

  AlgebraPtr algebra_;
  Matrix h_;
  double beta_;
  EigenSystem eig_;
};

/// tr(a e^{−βh}) / tr(e^{−βh}). Throws NotHermitian, NotInAlgebra.
PLF gibbs(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol);

/// max over basis pairs of |λ(b_i b_j) − λ(b_j σ_{iβ}(b_i))|.
double kms_residual(const PLF& lambda, const Dynamics& dyn);

/// kms_residual ≤ eq_abs · ‖λ‖.
bool is_kms(const PLF& lambda, const Dynamics& dyn, const Tolerance& tol);

/// max over t and basis a of |λ(σ_t(a)) − λ(a)|.
double time_invariance_residual(const PLF& lambda, const Dynamics& dyn, const std::vector<double>& t_samples);

/// Largest |λ(b) − gibbs(b)| over basis values.
double gibbs_distance(const PLF& lambda, const Dynamics& dyn, const Tolerance& tol);

struct DominationSample {
  double lhs = 0.0;        ///< |λ(x* y x)|
  double bound = 0.0;      ///< 2 ‖x‖² λ(y)
  double kms_bound = 0.0;  ///< ‖σ_{−iβ/2}(x)‖² λ(y)
};

/// Both sides of the domination estimate for x in the algebra and y ≥ 0.
DominationSample domination_sample(const PLF& lambda, const Dynamics& dyn, const Matrix& x, const Matrix& y);

// ============================================================================
// Modular theory
// ============================================================================

/// Tomita–Takesaki data of a cyclic separating vector η for M ⊆ M_N.
/// S(mη) = m*η is stored as S x = K conj(x); ∇ = S*S; S = J ∇^{1/2} with
/// J y = U conj(y).
struct ModularData {
  AlgebraPtr algebra;
  Vector eta;
  Matrix s_matrix;       ///< K
  Matrix nabla;          ///< ∇, positive definite
  Matrix j_unitary;      ///< U
  Matrix j_real;         ///< J on realified coordinates (re, im)
  Matrix hamiltonian;    ///< −log ∇: σ_t = Ad e^{ith} is KMS at β = 1

  Vector apply_s(const Vector& x) const { return s_matrix * x.conjugate(); }
  Vector apply_j(const Vector& y) const { return j_unitary * y.conjugate(); }
  /// ⟨· η, η⟩ on the algebra.
  PLF vector_state() const;
  Dynamics dynamics(const Tolerance& tol) const;
};

struct ModularResiduals {
  double s_relation = 0.0;   ///< max ‖S(b_i η) − b_i* η‖
  double polar = 0.0;        ///< ‖U*U − 1‖ + ‖J ∇^{1/2} − S‖
  double commutant = 0.0;    ///< max ‖[J b_i J, b_j]‖
  double invariance = 0.0;   ///< distance of ∇^{it} b ∇^{−it} from the algebra
  double kms = 0.0;          ///< kms_residual of the vector state at β = 1
};

/// Throws NotCyclic, NotSeparating.
ModularData modular_operator(AlgebraPtr algebra, const Vector& eta, const Tolerance& tol);

ModularResiduals modular_residuals(const ModularData& data, const Tolerance& tol);

}  // namespace ncl
