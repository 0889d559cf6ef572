#include "nclebesgue/functional.hpp"

#include <cmath>
#include <string>

#include "nclebesgue/gns.hpp"

namespace ncl {

namespace {

void require_same_algebra(const PLF& a, const PLF& b, const char* what) {
  if (!same_algebra(a.algebra(), b.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": functionals live on different algebras");
  }
}

}  // namespace

// ============================================================================
// PLF
// ============================================================================

PLF::PLF(AlgebraPtr algebra, Vector values) : algebra_(std::move(algebra)), values_(std::move(values)) {
  if (!algebra_) throw Error(ErrorCode::ShapeMismatch, "PLF requires an algebra");
  if (values_.size() != algebra_->dim()) {
    throw Error(ErrorCode::ShapeMismatch, "PLF has " + std::to_string(values_.size()) +
                                              " values for an algebra of dimension " +
                                              std::to_string(algebra_->dim()));
  }
  if (!values_.allFinite()) throw Error(ErrorCode::ShapeMismatch, "PLF values must be finite");
  gram_ = algebra_->gram_from_values(values_);
}

PLF PLF::zero(AlgebraPtr algebra) {
  const Index d = algebra->dim();
  return PLF(std::move(algebra), Vector::Zero(d));
}

Matrix PLF::density() const {
  const Index n = algebra_->ambient_dim();
  Matrix w = Matrix::Zero(n, n);
  for (Index k = 0; k < values_.size(); ++k) w += values_(k) * algebra_->basis(k).adjoint();
  return w / static_cast<double>(n);
}

PLF PLF::operator+(const PLF& other) const {
  require_same_algebra(*this, other, "PLF sum");
  return PLF(algebra_, values_ + other.values_);
}

PLF PLF::operator-(const PLF& other) const {
  require_same_algebra(*this, other, "PLF difference");
  return PLF(algebra_, values_ - other.values_);
}

PLF PLF::operator*(double s) const { return PLF(algebra_, s * values_); }

bool same_algebra(const CStarAlgebra& a, const CStarAlgebra& b) {
  if (&a == &b) return true;
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (Index k = 0; k < a.dim(); ++k) {
    if ((a.basis(k) - b.basis(k)).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

// ============================================================================
// Operations
// ============================================================================

PLF plf_from_density(AlgebraPtr algebra, const Matrix& rho, const Tolerance& tol) {
  const Index n = algebra->ambient_dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "density must be n x n");
  }
  const PsdReport rep = psd_check(rho, tol);
  if (!rep.psd) {
    throw Error(ErrorCode::NotPSD, "density has eigenvalue " + std::to_string(rep.min_eigenvalue));
  }
  Vector v(algebra->dim());
  for (Index k = 0; k < v.size(); ++k) v(k) = (rho * algebra->basis(k)).trace();
  return PLF(std::move(algebra), std::move(v));
}

cplx evaluate(const PLF& mu, const Matrix& a) {
  const CStarAlgebra& alg = mu.algebra();
  if (a.rows() != alg.ambient_dim() || a.cols() != alg.ambient_dim() || !alg.contains(a)) {
    throw Error(ErrorCode::NotInAlgebra, "evaluate: element is not in the algebra");
  }
  return mu.on_coords(alg.coords(a));
}

bool is_positive(const PLF& mu, const Tolerance& tol) { return psd_check(mu.gram(), tol).psd; }

Subspace isotropic_ideal(const PLF& mu, const Tolerance& tol) {
  if (!is_positive(mu, tol)) throw Error(ErrorCode::NotPositive, "isotropic_ideal");
  const Subspace ideal = psd_range(mu.gram(), tol).complement();

  // Left-ideal check: b_i · N_μ ⊆ N_μ for every basis element.
  if (ideal.dim() == 0) return ideal;
  const CStarAlgebra& alg = mu.algebra();
  const double bound = 10.0 * std::max(tol.eq_abs, tol.rank_rel) * std::max(mu.gram().norm(), 1e-300) *
                       static_cast<double>(alg.ambient_dim());
  for (Index i = 0; i < alg.dim(); ++i) {
    const Matrix moved = alg.left_mult(i) * ideal.basis();
    const double leak = (moved.adjoint() * mu.gram() * moved).cwiseAbs().maxCoeff();
    if (leak > bound) throw Error(ErrorCode::NotClosed, "isotropic ideal is not a left ideal");
  }
  return ideal;
}

bool leq(const PLF& mu, const PLF& nu, const Tolerance& tol) {
  require_same_algebra(mu, nu, "leq");
  const double scale = std::max(mu.gram().norm(), nu.gram().norm());
  return psd_check(nu.gram() - mu.gram(), tol, scale).psd;
}

bool ideal_contained(const PLF& lambda, const PLF& mu, const Tolerance& tol) {
  require_same_algebra(lambda, mu, "ideal_contained");
  const Subspace kernel = psd_range(lambda.gram(), tol).complement();
  if (kernel.dim() == 0) return true;
  const Matrix restricted = kernel.basis().adjoint() * mu.gram() * kernel.basis();
  const double worst = restricted.diagonal().real().maxCoeff();
  return worst <= tol.eq_abs * mu.gram().norm();
}

double kadison_residual(const PLF& lambda, const Matrix& a) {
  const cplx la = evaluate(lambda, a);
  const double laa = evaluate(lambda, a.adjoint() * a).real();
  return lambda.norm() * laa - std::norm(la);
}

FaithfulCompression faithful_central_projection(const PLF& lambda, const Tolerance& tol) {
  if (!is_positive(lambda, tol)) throw Error(ErrorCode::NotPositive, "faithful_central_projection");
  const CStarAlgebra& alg = lambda.algebra();
  const Index n = alg.ambient_dim();
  FaithfulCompression out;

  const GnsData data = gns(lambda, tol);
  if (data.degenerate()) {
    out.central_support = Matrix::Zero(n, n);
    out.support = Matrix::Zero(n, n);
    out.embedding = Matrix::Zero(n, 0);
    return out;
  }

  // ker π_λ is a two-sided ideal; its trace-orthogonal complement is the
  // complementary ideal, whose unit is the projection of 1 onto it.
  const Subspace kernel = null_space(data.stacked_rep(), tol);
  const Vector& unit = alg.unit_coords();
  const Vector z_coords = unit - kernel.basis() * (kernel.basis().adjoint() * unit);
  const Matrix z = alg.element(z_coords);

  const double check = 10.0 * tol.eq_abs * std::sqrt(static_cast<double>(n));
  const bool projection = (z * z - z).norm() <= check && hermitian_residual(z) <= check;
  bool central = true;
  for (const Matrix& b : alg.basis()) central = central && (z * b - b * z).norm() <= check * b.norm();
  const Subspace complement = kernel.complement();
  bool unit_ok = true;
  for (Index m = 0; m < complement.dim(); ++m) {
    const Matrix a = alg.element(complement.basis().col(m));
    unit_ok = unit_ok && (z * a - a).norm() <= check * std::max(a.norm(), 1.0);
  }
  if (!projection || !central || !unit_ok) {
    throw Error(ErrorCode::NoComplementUnit, "complement ideal has no central unit");
  }
  out.central_support = hermitian_part(z);

  // Support projection: range of the trace density of λ inside A.
  const Subspace range = psd_range(hermitian_part(lambda.density()), tol);
  out.embedding = range.basis();
  out.support = range.projector();
  if (!alg.contains(out.support)) {
    throw Error(ErrorCode::NoComplementUnit, "support projection is not in the algebra");
  }

  const Matrix& v = out.embedding;
  std::vector<Matrix> pieces;
  pieces.reserve(static_cast<std::size_t>(alg.dim()));
  for (const Matrix& b : alg.basis()) pieces.push_back(v.adjoint() * b * v);
  out.compressed = CStarAlgebra::from_span(pieces, v.cols(), tol);
  Vector values(out.compressed->dim());
  for (Index m = 0; m < values.size(); ++m) {
    values(m) = evaluate(lambda, v * out.compressed->basis(m) * v.adjoint());
  }
  out.compressed_state.emplace(out.compressed, std::move(values));
  return out;
}

}  // namespace ncl
