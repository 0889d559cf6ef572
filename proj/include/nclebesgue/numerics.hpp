#pragma once

// Dense complex linear algebra kernel. Every rank and positivity decision in
// the library is routed through the functions here so that one Tolerance
// value controls all of them.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "nclebesgue/errors.hpp"

namespace ncl {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerance {
  double rank_rel = 1e-9;   ///< relative eigenvalue / singular value cutoff
  double eq_abs = 1e-9;     ///< residual bound for equality assertions
  double psd_slack = 1e-9;  ///< allowed negative eigenvalue, relative to the norm

  /// Throws InvalidTolerance unless all fields are positive and rank_rel < 1.
  void validate() const;
};

/// An orthonormal set of column vectors in C^n.
class Subspace {
 public:
  explicit Subspace(Index ambient_dim);
  /// Columns must already be orthonormal (checked against `tol.eq_abs`).
  Subspace(Matrix columns, const Tolerance& tol);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }
  /// Orthonormal basis of the orthogonal complement.
  Subspace complement() const;
  /// Norm of the component of `v` orthogonal to the subspace.
  double distance(const Vector& v) const;

 private:
  Index ambient_;
  Matrix basis_;
};

/// Eigenvalues sorted descending with matching unit eigenvectors.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

double hermitian_residual(const Matrix& m);
bool is_square(const Matrix& m);

/// Spectral norm (largest singular value).
double op_norm(const Matrix& m);

struct Svd {
  RealVector values;  ///< descending
  Matrix u;
  Matrix v;
};

/// One-sided Jacobi SVD. Eigen 3.4.0's divide-and-conquer SVD returns wrong
/// singular values on some matrices with exactly repeated ones, which the
/// commutant constraints produce routinely. `options` takes Eigen::ComputeThinU etc.
Svd singular_value_decomposition(const Matrix& m, unsigned int options = 0);

/// Descending eigendecomposition of a Hermitian matrix. Each eigenvector is
/// rotated so that its first non-negligible component is real and positive.
/// Throws NotHermitian if ‖m − m*‖ exceeds tol.eq_abs · max(1, ‖m‖).
EigenSystem hermitian_eig(const Matrix& m, const Tolerance& tol);

/// f applied through the spectral decomposition of a Hermitian matrix.
Matrix hermitian_function(const Matrix& m, const std::function<cplx(double)>& f,
                          const Tolerance& tol);

Matrix matrix_exp(const Matrix& m);

/// Moore–Penrose inverse, singular values below rank_rel·σ_max dropped.
Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol);

struct PsdReport {
  bool psd = true;
  double min_eigenvalue = 0.0;
  double scale = 0.0;  ///< the norm the slack is measured against
};

/// min eigenvalue ≥ −psd_slack · ‖m‖.
PsdReport psd_check(const Matrix& m, const Tolerance& tol);
/// Same, with the slack measured against an explicit scale (used when `m`
/// is a difference of two larger matrices).
PsdReport psd_check(const Matrix& m, const Tolerance& tol, double scale);

/// PSD square root, negative rounding noise clipped to zero.
Matrix psd_sqrt(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the range of a PSD matrix (eigenvalues above
/// rank_rel · λ_max).
Subspace psd_range(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the kernel of an arbitrary matrix, via SVD. Singular
/// values up to rank_rel · max(σ_max, scale) count as zero; pass the expected
/// size of m as `scale` when m may vanish up to rounding.
Subspace null_space(const Matrix& m, const Tolerance& tol, double scale = 0.0);

/// Generalized Schur complement of g onto span(s): in block coordinates
/// s ⊕ s⊥ this is [[G11 − G12 G22⁺ G21, 0], [0, 0]].
Matrix shorted_operator(const Matrix& g, const Subspace& s, const Tolerance& tol);

/// a:b = a − a(a+b)⁺a.
Matrix parallel_sum(const Matrix& a, const Matrix& b, const Tolerance& tol);

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace ncl
