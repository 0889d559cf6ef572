#include "nclebesgue/algebra.hpp"

#include <cmath>
#include <random>
#include <string>

namespace ncl {

namespace {

Eigen::Map<const Vector> vec(const Matrix& a) { return {a.data(), a.size()}; }

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

cplx inner(const Matrix& x, const Matrix& y, Index n) {
  // tr(y* x) / n
  return (y.conjugate().cwiseProduct(x)).sum() / static_cast<double>(n);
}

// Appends the part of `x` orthogonal to `basis`, normalized, when it is not
// negligible at the rank cutoff. Two passes of classical Gram–Schmidt.
bool extend_basis(std::vector<Matrix>& basis, const Matrix& x, Index n, double rank_rel) {
  const double norm2 = std::real(inner(x, x, n));
  if (!(norm2 > 0.0)) return false;
  Matrix r = x;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Matrix& b : basis) r -= inner(r, b, n) * b;
  }
  const double rnorm2 = std::real(inner(r, r, n));
  if (rnorm2 <= rank_rel * rank_rel * norm2) return false;
  basis.push_back(r / std::sqrt(rnorm2));
  return true;
}

Matrix random_hermitian_element(const CStarAlgebra& alg, std::mt19937_64& rng) {
  Vector c(alg.dim());
  for (Index k = 0; k < c.size(); ++k) c(k) = cplx(2 * uniform(rng) - 1, 2 * uniform(rng) - 1);
  const Matrix x = alg.element(c);
  Matrix h = hermitian_part(x);
  const double norm = h.norm();
  if (norm > 0.0) h /= norm;
  return h;
}

double commutator_error(const Matrix& x, const Matrix& b) { return (x * b - b * x).norm(); }

// Candidate elements pass when they commute with every basis element.
bool commutes_with_all(const std::vector<Matrix>& candidates, const CStarAlgebra& alg) {
  const double eq = alg.tolerance().eq_abs;
  for (const Matrix& x : candidates) {
    for (const Matrix& b : alg.basis()) {
      if (commutator_error(x, b) > 10.0 * eq * x.norm() * b.norm()) return false;
    }
  }
  return true;
}

// Groups indices of descending eigenvalues whose consecutive gaps are below `gap`.
std::vector<std::vector<Index>> eigen_clusters(const RealVector& values, double gap) {
  std::vector<std::vector<Index>> out;
  for (Index k = 0; k < values.size(); ++k) {
    if (out.empty() || values(k - 1) - values(k) > gap) out.emplace_back();
    out.back().push_back(k);
  }
  return out;
}

}  // namespace

// ============================================================================
// CStarAlgebra
// ============================================================================

AlgebraPtr CStarAlgebra::from_orthonormal_basis(std::vector<Matrix> basis, const Tolerance& tol) {
  tol.validate();
  if (basis.empty()) throw Error(ErrorCode::NotClosed, "empty basis");
  const Index n = basis.front().rows();
  const Index d = static_cast<Index>(basis.size());
  for (const Matrix& b : basis) {
    if (b.rows() != n || b.cols() != n) {
      throw Error(ErrorCode::NonSquareGenerator, "basis elements must all be n x n");
    }
    if (!b.allFinite()) throw Error(ErrorCode::ShapeMismatch, "basis element has non-finite entries");
  }

  std::shared_ptr<CStarAlgebra> alg(new CStarAlgebra());
  alg->n_ = n;
  alg->tol_ = tol;
  alg->basis_ = std::move(basis);
  alg->stacked_.resize(n * n, d);
  for (Index k = 0; k < d; ++k) alg->stacked_.col(k) = vec(alg->basis_[static_cast<std::size_t>(k)]);

  const Matrix gram = alg->stacked_.adjoint() * alg->stacked_ / static_cast<double>(n);
  const double ortho = (gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (ortho > 10.0 * tol.eq_abs) {
    throw Error(ErrorCode::NotClosed, "basis is not orthonormal (residual " + std::to_string(ortho) + ")");
  }

  // Horizontal stack [b_0 | b_1 | ...]; column block j of m * wide is vec(m b_j).
  Matrix wide(n, n * d);
  for (Index j = 0; j < d; ++j) wide.middleCols(j * n, n) = alg->basis(j);
  const double inv_n = 1.0 / static_cast<double>(n);

  auto coords_of_products = [&](const Matrix& m, const char* what) {
    const Matrix prod = m * wide;
    Eigen::Map<const Matrix> cols(prod.data(), n * n, d);
    Matrix c = alg->stacked_.adjoint() * cols * inv_n;
    const Matrix resid = cols - alg->stacked_ * c;
    // Measured against ‖m‖‖b_j‖ rather than ‖m b_j‖: products of orthogonal
    // blocks vanish only up to rounding in the factors.
    const double scale = m.norm() * std::sqrt(static_cast<double>(n));
    for (Index j = 0; j < d; ++j) {
      if (resid.col(j).norm() > tol.eq_abs * scale) {
        throw Error(ErrorCode::NotClosed, std::string("span not closed under ") + what);
      }
    }
    return c;
  };

  alg->structure_.assign(static_cast<std::size_t>(d), Matrix::Zero(d, d));
  alg->left_.resize(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const Matrix& bi = alg->basis(i);
    alg->left_[static_cast<std::size_t>(i)] = coords_of_products(bi, "products");
    const Matrix adj_products = coords_of_products(bi.adjoint(), "adjoint products");
    for (Index k = 0; k < d; ++k) alg->structure_[static_cast<std::size_t>(k)].row(i) = adj_products.row(k);
  }

  alg->adjoint_.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    const Matrix adj = alg->basis(i).adjoint();
    if (!alg->contains(adj)) throw Error(ErrorCode::NotClosed, "span not closed under adjoints");
    alg->adjoint_.col(i) = alg->coords(adj);
  }

  const Matrix id = Matrix::Identity(n, n);
  if (!alg->contains(id)) throw Error(ErrorCode::NotClosed, "identity is not in the span");
  alg->unit_ = alg->coords(id);
  return alg;
}

AlgebraPtr CStarAlgebra::from_span(std::span<const Matrix> elements, Index n, const Tolerance& tol) {
  tol.validate();
  // The elements can be far from orthogonal, so rank is read off an SVD
  // rather than a Gram–Schmidt sweep.
  Matrix stacked(n * n, static_cast<Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const Matrix& e = elements[k];
    if (e.rows() != n || e.cols() != n) {
      throw Error(ErrorCode::NonSquareGenerator, "span elements must be n x n");
    }
    stacked.col(static_cast<Index>(k)) = vec(e);
  }
  std::vector<Matrix> basis;
  if (stacked.cols() > 0) {
    const Svd svd = singular_value_decomposition(stacked, Eigen::ComputeThinU);
    const RealVector& s = svd.values;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (Index k = 0; k < s.size() && s(k) > tol.rank_rel * s(0); ++k) {
      const Vector col = svd.u.col(k) * root_n;
      basis.push_back(Eigen::Map<const Matrix>(col.data(), n, n));
    }
  }
  return from_orthonormal_basis(std::move(basis), tol);
}

Vector CStarAlgebra::coords(const Matrix& a) const {
  if (a.rows() != n_ || a.cols() != n_) {
    throw Error(ErrorCode::ShapeMismatch, "coords: expected an n x n matrix");
  }
  return stacked_.adjoint() * vec(a) / static_cast<double>(n_);
}

Matrix CStarAlgebra::element(const Vector& c) const {
  if (c.size() != dim()) throw Error(ErrorCode::ShapeMismatch, "element: coordinate length mismatch");
  const Vector flat = stacked_ * c;
  return Eigen::Map<const Matrix>(flat.data(), n_, n_);
}

double CStarAlgebra::residual(const Matrix& a) const {
  const Vector c = coords(a);
  return (vec(a) - stacked_ * c).norm() / std::sqrt(static_cast<double>(n_));
}

bool CStarAlgebra::contains(const Matrix& a) const {
  return residual(a) <= tol_.eq_abs * std::max(hs_norm(a), 1e-300) || residual(a) <= 1e-14;
}

double CStarAlgebra::hs_norm(const Matrix& a) const {
  return a.norm() / std::sqrt(static_cast<double>(n_));
}

Matrix CStarAlgebra::gram_from_values(const Vector& values) const {
  if (values.size() != dim()) throw Error(ErrorCode::ShapeMismatch, "gram: value vector length mismatch");
  Matrix g = Matrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) g += values(k) * structure(k);
  return g;
}

// ============================================================================
// Construction
// ============================================================================

AlgebraPtr generate(std::span<const Matrix> generators, Index n, const Tolerance& tol) {
  tol.validate();
  if (n <= 0) throw Error(ErrorCode::ShapeMismatch, "ambient dimension must be positive");
  std::vector<Matrix> basis;
  extend_basis(basis, Matrix::Identity(n, n), n, tol.rank_rel);
  for (const Matrix& g : generators) {
    if (g.rows() != n || g.cols() != n) {
      throw Error(ErrorCode::NonSquareGenerator, "generator is " + std::to_string(g.rows()) + "x" +
                                                     std::to_string(g.cols()) + ", expected " +
                                                     std::to_string(n) + "x" + std::to_string(n));
    }
    if (!g.allFinite()) throw Error(ErrorCode::ShapeMismatch, "generator has non-finite entries");
    extend_basis(basis, g, n, tol.rank_rel);
    extend_basis(basis, g.adjoint(), n, tol.rank_rel);
  }

  std::size_t checked = 0;
  while (true) {
    const std::size_t current = basis.size();
    for (std::size_t i = 0; i < current; ++i) {
      for (std::size_t j = 0; j < current; ++j) {
        if (i < checked && j < checked) continue;
        extend_basis(basis, basis[i] * basis[j], n, tol.rank_rel);
      }
    }
    checked = current;
    if (basis.size() == current) break;
    if (static_cast<Index>(basis.size()) > n * n) {
      throw Error(ErrorCode::NotClosed, "closure exceeded n^2 dimensions");
    }
  }
  return CStarAlgebra::from_orthonormal_basis(std::move(basis), tol);
}

AlgebraPtr full_matrix_algebra(Index n, const Tolerance& tol) {
  std::vector<Matrix> basis;
  const double s = std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = s;
      basis.push_back(std::move(e));
    }
  }
  return CStarAlgebra::from_orthonormal_basis(std::move(basis), tol);
}

AlgebraPtr diagonal_algebra(Index n, const Tolerance& tol) {
  std::vector<Matrix> basis;
  const double s = std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = s;
    basis.push_back(std::move(e));
  }
  return CStarAlgebra::from_orthonormal_basis(std::move(basis), tol);
}

// ============================================================================
// Commutants
// ============================================================================

// The commutant lies inside the block-diagonal matrices of a generic
// Hermitian element's eigenspaces, so unknowns are restricted to those
// blocks. Commutation is then imposed against a few more generic elements
// (which generate the algebra with probability one) and verified against the
// full basis; on a verification failure the full basis is used.
AlgebraPtr commutant(const CStarAlgebra& alg) {
  const Index n = alg.ambient_dim();
  const Tolerance& tol = alg.tolerance();
  std::mt19937_64 rng(0x5eedc0ffee1234ULL);

  const EigenSystem es = hermitian_eig(random_hermitian_element(alg, rng), tol);
  const Matrix& u = es.vectors;
  std::vector<std::pair<Index, Index>> unknowns;
  for (const auto& cluster : eigen_clusters(es.values, 1e-7)) {
    for (Index p : cluster)
      for (Index q : cluster) unknowns.emplace_back(p, q);
  }
  const Index nu = static_cast<Index>(unknowns.size());

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Matrix> tests;
    if (attempt < 2) {
      for (int k = 0; k < 2 + 2 * attempt; ++k) tests.push_back(random_hermitian_element(alg, rng));
    } else {
      tests = alg.basis();
    }
    Matrix constraints = Matrix::Zero(static_cast<Index>(tests.size()) * n * n, nu);
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const Matrix ht = u.adjoint() * tests[t] * u;
      const Index offset = static_cast<Index>(t) * n * n;
      for (Index c = 0; c < nu; ++c) {
        const auto [p, q] = unknowns[static_cast<std::size_t>(c)];
        // vec(E_pq h − h E_pq): row p receives h(q, :), column q loses h(:, p).
        Matrix m = Matrix::Zero(n, n);
        m.row(p) += ht.row(q);
        m.col(q) -= ht.col(p);
        constraints.block(offset, c, n * n, 1) = vec(m);
      }
    }
    // Test elements have unit norm, basis elements norm √n.
    const Subspace kernel = null_space(constraints, tol, std::sqrt(static_cast<double>(n)));
    std::vector<Matrix> candidates;
    const double s = std::sqrt(static_cast<double>(n));
    for (Index m = 0; m < kernel.dim(); ++m) {
      Matrix x = Matrix::Zero(n, n);
      for (Index c = 0; c < nu; ++c) {
        const auto [p, q] = unknowns[static_cast<std::size_t>(c)];
        x(p, q) = kernel.basis()(c, m);
      }
      candidates.push_back(s * (u * x * u.adjoint()));
    }
    if (attempt == 2 || commutes_with_all(candidates, alg)) {
      return CStarAlgebra::from_orthonormal_basis(std::move(candidates), tol);
    }
  }
  throw Error(ErrorCode::NotClosed, "commutant computation did not converge");
}

AlgebraPtr double_commutant(const CStarAlgebra& alg) {
  AlgebraPtr outer = commutant(*commutant(alg));
  if (!same_span(alg, *outer)) {
    throw Error(ErrorCode::BicommutantMismatch,
                "double commutant has dimension " + std::to_string(outer->dim()) +
                    ", algebra has " + std::to_string(alg.dim()));
  }
  return outer;
}

AlgebraPtr center(const CStarAlgebra& alg) {
  const Index n = alg.ambient_dim();
  const Index d = alg.dim();
  const Tolerance& tol = alg.tolerance();
  std::mt19937_64 rng(0xce47e5eedULL);

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Matrix> tests;
    if (attempt < 2) {
      for (int k = 0; k < 2 + 2 * attempt; ++k) tests.push_back(random_hermitian_element(alg, rng));
    } else {
      tests = alg.basis();
    }
    Matrix constraints(static_cast<Index>(tests.size()) * n * n, d);
    for (std::size_t t = 0; t < tests.size(); ++t) {
      for (Index k = 0; k < d; ++k) {
        const Matrix m = alg.basis(k) * tests[t] - tests[t] * alg.basis(k);
        constraints.block(static_cast<Index>(t) * n * n, k, n * n, 1) = vec(m);
      }
    }
    const Subspace kernel = null_space(constraints, tol, std::sqrt(static_cast<double>(n)));
    std::vector<Matrix> candidates;
    for (Index m = 0; m < kernel.dim(); ++m) candidates.push_back(alg.element(kernel.basis().col(m)));
    if (attempt == 2 || commutes_with_all(candidates, alg)) {
      return CStarAlgebra::from_orthonormal_basis(std::move(candidates), tol);
    }
  }
  throw Error(ErrorCode::NotClosed, "center computation did not converge");
}

bool same_span(const CStarAlgebra& a, const CStarAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const Matrix& x : b.basis()) {
    if (!a.contains(x)) return false;
  }
  return true;
}

}  // namespace ncl
