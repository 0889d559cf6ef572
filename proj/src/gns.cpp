#include "nclebesgue/gns.hpp"

#include <cmath>
#include <string>

namespace ncl {

namespace {

Eigen::Map<const Vector> vec(const Matrix& a) { return {a.data(), a.size()}; }

}  // namespace

// ============================================================================
// GnsData
// ============================================================================

Matrix GnsData::represent(const Vector& coords) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < rep.size(); ++i) out += coords(static_cast<Index>(i)) * rep[i];
  return out;
}

Matrix GnsData::stacked_rep() const {
  Matrix p(dim * dim, static_cast<Index>(rep.size()));
  for (std::size_t i = 0; i < rep.size(); ++i) p.col(static_cast<Index>(i)) = vec(rep[i]);
  return p;
}

// ============================================================================
// Construction
// ============================================================================

GnsData gns(const PLF& lambda, const Tolerance& tol) {
  if (!is_positive(lambda, tol)) throw Error(ErrorCode::NotPositive, "gns: functional is not positive");
  const CStarAlgebra& alg = lambda.algebra();
  GnsData data;
  data.algebra = lambda.algebra_ptr();
  data.lambda_values = lambda.values();

  const EigenSystem es = hermitian_eig(lambda.gram(), tol);
  const double top = es.values.size() ? es.values(0) : 0.0;
  Index r = 0;
  if (top > 0.0) {
    while (r < es.values.size() && es.values(r) > tol.rank_rel * top) ++r;
  }
  data.dim = r;
  if (r == 0) {
    data.quotient = Matrix::Zero(alg.dim(), 0);
    return data;
  }

  data.gram_spectrum = es.values.head(r);
  const RealVector root = data.gram_spectrum.cwiseSqrt();
  data.quotient = es.vectors.leftCols(r) * root.asDiagonal();
  // Right inverse of Q*: Q diag(1/e).
  const Matrix lift = data.quotient * data.gram_spectrum.cwiseInverse().asDiagonal();

  data.rep.reserve(static_cast<std::size_t>(alg.dim()));
  for (Index i = 0; i < alg.dim(); ++i) data.rep.push_back(data.quotient.adjoint() * alg.left_mult(i) * lift);
  data.cyclic = data.vector_of(alg.unit_coords());
  const AlgebraPtr image = CStarAlgebra::from_span(data.rep, r, tol);
  data.linf_commutant = commutant(*image);
  data.linf = commutant(*data.linf_commutant);
  if (!same_span(*image, *data.linf)) {
    throw Error(ErrorCode::BicommutantMismatch, "gns: π_λ(A)'' has dimension " + std::to_string(data.linf->dim()) +
                                                    ", π_λ(A) has " + std::to_string(image->dim()));
  }
  return data;
}

GnsResiduals gns_residuals(const GnsData& data) {
  GnsResiduals out;
  if (data.degenerate()) return out;
  const CStarAlgebra& alg = *data.algebra;
  const Index d = alg.dim();

  for (Index i = 0; i < d; ++i) {
    const Matrix& pi = data.rep[static_cast<std::size_t>(i)];
    // b_i b_j = Σ_k L_i(k, j) b_k and b_i* b_j through the structure constants.
    for (Index j = 0; j < d; ++j) {
      const Matrix& pj = data.rep[static_cast<std::size_t>(j)];
      Matrix prod = Matrix::Zero(data.dim, data.dim);
      Matrix adj_prod = Matrix::Zero(data.dim, data.dim);
      for (Index k = 0; k < d; ++k) {
        prod += alg.left_mult(i)(k, j) * data.rep[static_cast<std::size_t>(k)];
        adj_prod += alg.structure(i, j, k) * data.rep[static_cast<std::size_t>(k)];
      }
      out.homomorphism = std::max(out.homomorphism, (pi * pj - prod).norm());
      out.homomorphism = std::max(out.homomorphism, (pi.adjoint() * pj - adj_prod).norm());
    }
    const Matrix star = data.represent(alg.adjoint_coords().col(i));
    out.adjoint = std::max(out.adjoint, (star - pi.adjoint()).norm());
    const cplx value = data.cyclic.dot(pi * data.cyclic);
    out.state = std::max(out.state, std::abs(value - data.lambda_values(i)));
  }

  // π(b_i)ξ must be the class of b_i, and those classes must span C^r.
  Matrix orbit(data.dim, d);
  for (Index i = 0; i < d; ++i) {
    orbit.col(i) = data.rep[static_cast<std::size_t>(i)] * data.cyclic;
    const Vector cls = data.quotient.adjoint().col(i);
    out.cyclicity = std::max(out.cyclicity, (orbit.col(i) - cls).norm());
  }
  const RealVector s = singular_value_decomposition(orbit).values;
  if (s.size() < data.dim || s(data.dim - 1) <= 1e-12 * s(0)) out.cyclicity = std::max(out.cyclicity, 1.0);
  return out;
}

// ============================================================================
// Transfer
// ============================================================================

PLF transfer(const GnsData& data, const PLF& mu, const Tolerance& tol) {
  if (!same_algebra(*data.algebra, mu.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, "transfer: μ lives on a different algebra");
  }
  if (data.degenerate()) {
    throw Error(ErrorCode::IllDefined, "transfer: L²(λ) is zero-dimensional");
  }
  const PLF lambda(data.algebra, data.lambda_values);
  if (!ideal_contained(lambda, mu, tol)) {
    throw Error(ErrorCode::IllDefined, "transfer: N_λ is not contained in N_μ");
  }

  const Matrix stacked = data.stacked_rep();
  const Subspace kernel = null_space(stacked, tol);
  const double scale = std::max(mu.values().norm(), 1e-300);
  for (Index m = 0; m < kernel.dim(); ++m) {
    const cplx leak = kernel.basis().col(m).transpose() * mu.values();
    if (std::abs(leak) > tol.eq_abs * scale && std::abs(leak) > 1e-14) {
      throw Error(ErrorCode::IllDefined, "transfer: ker π_λ is not contained in ker μ");
    }
  }

  const CStarAlgebra& linf = *data.linf;
  const Matrix pinv = pseudo_inverse(stacked, tol);
  Vector values(linf.dim());
  for (Index m = 0; m < linf.dim(); ++m) {
    const Vector target = vec(linf.basis(m));
    const Vector pre = pinv * target;
    if ((stacked * pre - target).norm() > 10.0 * tol.eq_abs * std::max(target.norm(), 1.0)) {
      throw Error(ErrorCode::NotRepresentable, "transfer: L∞(λ) element has no preimage");
    }
    values(m) = (pre.transpose() * mu.values())(0);
  }
  return PLF(data.linf, std::move(values));
}

Matrix preimage(const GnsData& data, const Matrix& x, const Tolerance& tol) {
  const CStarAlgebra& alg = *data.algebra;
  if (data.degenerate()) return Matrix::Zero(alg.ambient_dim(), alg.ambient_dim());
  if (x.rows() != data.dim || x.cols() != data.dim) throw Error(ErrorCode::ShapeMismatch, "preimage: size mismatch");
  const Matrix stacked = data.stacked_rep();
  const Vector target = vec(x);
  const Vector pre = pseudo_inverse(stacked, tol) * target;
  if ((stacked * pre - target).norm() > 10.0 * tol.eq_abs * std::max(target.norm(), 1.0)) {
    throw Error(ErrorCode::NotRepresentable, "preimage: operator is not in π_λ(A)");
  }
  return alg.element(pre);
}

std::vector<Vector> normal_decomposition_basis(const GnsData& data, const PLF& mu_hat,
                                               const Tolerance& tol) {
  if (data.degenerate()) return {};
  if (!same_algebra(*data.linf, mu_hat.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, "normal_decomposition_basis: functional is not on L∞(λ)");
  }
  const Matrix t = hermitian_part(mu_hat.density());
  const PsdReport rep = psd_check(t, tol);
  if (!rep.psd) {
    throw Error(ErrorCode::NotRepresentable,
                "normal_decomposition_basis: density has eigenvalue " + std::to_string(rep.min_eigenvalue));
  }
  const EigenSystem es = hermitian_eig(t, tol);
  std::vector<Vector> out;
  const double top = es.values.size() ? es.values(0) : 0.0;
  for (Index k = 0; k < es.values.size() && top > 0.0; ++k) {
    if (es.values(k) <= tol.rank_rel * top) break;
    out.push_back(std::sqrt(es.values(k)) * es.vectors.col(k));
  }

  const CStarAlgebra& linf = mu_hat.algebra();
  double worst = 0.0;
  for (Index m = 0; m < linf.dim(); ++m) {
    cplx sum = 0.0;
    for (const Vector& x : out) sum += x.dot(linf.basis(m) * x);
    worst = std::max(worst, std::abs(sum - mu_hat.values()(m)));
  }
  if (worst > 10.0 * tol.eq_abs * std::max(mu_hat.values().norm(), 1.0)) {
    throw Error(ErrorCode::NotRepresentable,
                "normal_decomposition_basis: residual " + std::to_string(worst));
  }
  return out;
}

}  // namespace ncl
