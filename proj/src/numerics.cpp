#include "nclebesgue/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace ncl {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " requires a square matrix, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
  }
}

void require_hermitian(const Matrix& m, const Tolerance& tol, const char* what) {
  const double res = hermitian_residual(m);
  const double scale = std::max(1.0, m.norm());
  if (res > tol.eq_abs * scale) {
    throw Error(ErrorCode::NotHermitian, std::string(what) + ": symmetry residual " +
                                             std::to_string(res));
  }
}

// Pseudo-inverse of a Hermitian matrix with an absolute eigenvalue cutoff.
Matrix hermitian_pinv(const Matrix& m, double cutoff, const Tolerance& tol) {
  const EigenSystem es = hermitian_eig(m, tol);
  Matrix inv = Matrix::Zero(m.rows(), m.cols());
  for (Index k = 0; k < es.values.size(); ++k) {
    if (std::abs(es.values(k)) > cutoff) {
      inv += (1.0 / es.values(k)) * es.vectors.col(k) * es.vectors.col(k).adjoint();
    }
  }
  return inv;
}

}  // namespace

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(rank_rel < 1.0) || !(eq_abs > 0.0) || !(psd_slack > 0.0) ||
      !std::isfinite(eq_abs) || !std::isfinite(psd_slack)) {
    throw Error(ErrorCode::InvalidTolerance,
                "tolerances must be positive and finite with rank_rel < 1");
  }
}

// ============================================================================
// Subspace
// ============================================================================

Subspace::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace::Subspace(Matrix columns, const Tolerance& tol)
    : ambient_(columns.rows()), basis_(std::move(columns)) {
  if (basis_.cols() == 0) return;
  const Matrix gram = basis_.adjoint() * basis_;
  const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > tol.eq_abs * 10) {
    throw Error(ErrorCode::ShapeMismatch,
                "subspace columns are not orthonormal (residual " + std::to_string(err) + ")");
  }
}

Subspace Subspace::complement() const {
  Subspace out(ambient_);
  if (dim() == 0) {
    out.basis_ = Matrix::Identity(ambient_, ambient_);
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(basis_);
  const Matrix q = qr.householderQ() * Matrix::Identity(ambient_, ambient_);
  out.basis_ = q.rightCols(ambient_ - dim());
  return out;
}

double Subspace::distance(const Vector& v) const {
  if (dim() == 0) return v.norm();
  return (v - basis_ * (basis_.adjoint() * v)).norm();
}

// ============================================================================
// Spectral tools
// ============================================================================

double hermitian_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).norm();
}

bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_value_decomposition(m).values(0);
}

Svd singular_value_decomposition(const Matrix& m, unsigned int options) {
  Eigen::JacobiSVD<Matrix> svd(m, options);
  Svd out;
  out.values = svd.singularValues();
  if (options & (Eigen::ComputeThinU | Eigen::ComputeFullU)) out.u = svd.matrixU();
  if (options & (Eigen::ComputeThinV | Eigen::ComputeFullV)) out.v = svd.matrixV();
  return out;
}

EigenSystem hermitian_eig(const Matrix& m, const Tolerance& tol) {
  require_square(m, "hermitian_eig");
  require_hermitian(m, tol, "hermitian_eig");
  const Index n = m.rows();
  EigenSystem out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  const RealVector& ev = solver.eigenvalues();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ev(a) > ev(b); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = ev(src);
    Vector v = solver.eigenvectors().col(src);
    for (Index i = 0; i < n; ++i) {
      const double mag = std::abs(v(i));
      if (mag > 1e-10) {
        v *= std::conj(v(i)) / mag;
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

Matrix hermitian_function(const Matrix& m, const std::function<cplx(double)>& f,
                          const Tolerance& tol) {
  const EigenSystem es = hermitian_eig(m, tol);
  Vector fv(es.values.size());
  for (Index k = 0; k < fv.size(); ++k) fv(k) = f(es.values(k));
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

Matrix matrix_exp(const Matrix& m) {
  require_square(m, "matrix_exp");
  if (m.size() == 0) return m;
  const double scale = std::max(1.0, m.norm());
  const Tolerance exact{1e-9, 1e-13, 1e-9};
  if ((m - m.adjoint()).norm() <= exact.eq_abs * scale) {
    return hermitian_function(
        m, [](double x) { return cplx(std::exp(x), 0.0); }, exact);
  }
  if ((m + m.adjoint()).norm() <= exact.eq_abs * scale) {
    const Matrix h = cplx(0.0, -1.0) * m;
    return hermitian_function(
        h, [](double x) { return std::polar(1.0, x); }, exact);
  }
  return m.exp();
}

Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  const Svd svd = singular_value_decomposition(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.values;
  const double cutoff = tol.rank_rel * (s.size() > 0 ? s(0) : 0.0);
  Vector inv(s.size());
  for (Index k = 0; k < s.size(); ++k) inv(k) = (s(k) > cutoff && s(k) > 0.0) ? 1.0 / s(k) : 0.0;
  return svd.v * inv.asDiagonal() * svd.u.adjoint();
}

namespace {

PsdReport psd_report(const EigenSystem& es, const Tolerance& tol, double scale) {
  PsdReport rep;
  rep.scale = scale;
  if (es.values.size() == 0) return rep;
  rep.min_eigenvalue = es.values(es.values.size() - 1);
  rep.psd = rep.min_eigenvalue >= -tol.psd_slack * scale;
  return rep;
}

}  // namespace

PsdReport psd_check(const Matrix& m, const Tolerance& tol) {
  const EigenSystem es = hermitian_eig(m, tol);
  if (es.values.size() == 0) return {};
  const double norm = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  return psd_report(es, tol, norm);
}

PsdReport psd_check(const Matrix& m, const Tolerance& tol, double scale) {
  return psd_report(hermitian_eig(m, tol), tol, scale);
}

Matrix psd_sqrt(const Matrix& m, const Tolerance& tol) {
  return hermitian_function(
      m, [](double x) { return cplx(x > 0.0 ? std::sqrt(x) : 0.0, 0.0); }, tol);
}

Subspace psd_range(const Matrix& m, const Tolerance& tol) {
  require_square(m, "psd_range");
  if (m.size() == 0) return Subspace(0);
  const EigenSystem es = hermitian_eig(m, tol);
  const double top = es.values(0);
  Index rank = 0;
  if (top > 0.0) {
    while (rank < es.values.size() && es.values(rank) > tol.rank_rel * top) ++rank;
  }
  return Subspace(es.vectors.leftCols(rank), tol);
}

Subspace null_space(const Matrix& m, const Tolerance& tol, double scale) {
  const Index cols = m.cols();
  if (cols == 0) return Subspace(0);
  if (m.rows() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    return Subspace(Matrix::Identity(cols, cols), tol);
  }
  const Svd svd = singular_value_decomposition(m, Eigen::ComputeFullV);
  const RealVector& s = svd.values;
  const double cutoff = tol.rank_rel * std::max(s(0), scale);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return Subspace(svd.v.rightCols(cols - rank), tol);
}

// ============================================================================
// Shorted operators and parallel sums
// ============================================================================

Matrix shorted_operator(const Matrix& g, const Subspace& s, const Tolerance& tol) {
  require_square(g, "shorted_operator");
  if (s.ambient_dim() != g.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "shorted_operator: subspace dimension mismatch");
  }
  const PsdReport rep = psd_check(g, tol);
  if (!rep.psd) {
    throw Error(ErrorCode::NotPSD,
                "shorted_operator: min eigenvalue " + std::to_string(rep.min_eigenvalue));
  }
  const Index n = g.rows();
  if (s.dim() == 0) return Matrix::Zero(n, n);
  const Matrix gh = hermitian_part(g);
  if (s.dim() == n) return gh;

  const Matrix& inside = s.basis();
  const Matrix outside = s.complement().basis();
  const Matrix g11 = inside.adjoint() * gh * inside;
  const Matrix g12 = inside.adjoint() * gh * outside;
  const Matrix g22 = outside.adjoint() * gh * outside;
  const Matrix g22_pinv = hermitian_pinv(hermitian_part(g22), tol.rank_rel * rep.scale, tol);
  // The Schur complement is PSD; rounding can leave tiny negative eigenvalues.
  const Matrix schur = hermitian_function(
      hermitian_part(g11 - g12 * g22_pinv * g12.adjoint()),
      [](double x) { return cplx(std::max(x, 0.0), 0.0); }, tol);
  return hermitian_part(inside * schur * inside.adjoint());
}

Matrix parallel_sum(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  require_square(a, "parallel_sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "parallel_sum: operands differ in shape");
  }
  for (const Matrix* m : {&a, &b}) {
    const PsdReport rep = psd_check(*m, tol);
    if (!rep.psd) {
      throw Error(ErrorCode::NotPSD,
                  "parallel_sum: min eigenvalue " + std::to_string(rep.min_eigenvalue));
    }
  }
  const Matrix sum = hermitian_part(a + b);
  const double scale = sum.size() ? op_norm(sum) : 0.0;
  const Matrix inv = hermitian_pinv(sum, tol.rank_rel * scale, tol);
  return hermitian_part(a - a * inv * a);
}

}  // namespace ncl
