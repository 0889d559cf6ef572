#pragma once

// Random instances for tests: matrices, states, block algebras, KMS states.

#include <random>
#include <utility>
#include <vector>

#include "nclebesgue/kms.hpp"

namespace ncl::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return uniform() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

inline Matrix gaussian(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline Matrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

inline Matrix random_hermitian(Index n, Rng& rng) { return hermitian_part(gaussian(n, n, rng)); }

/// PSD with the given rank and eigenvalues in [lo, 1].
inline Matrix random_psd(Index n, Index rank, Rng& rng, double lo = 0.05) {
  const Matrix u = random_unitary(n, rng);
  RealVector e = RealVector::Zero(n);
  for (Index k = 0; k < rank; ++k) e(k) = rng.uniform(lo, 1.0);
  return hermitian_part(u * e.cast<cplx>().asDiagonal() * u.adjoint());
}

inline Matrix random_density(Index n, Index rank, Rng& rng) {
  Matrix rho = random_psd(n, rank, rng);
  return rho / rho.trace().real();
}

struct Block {
  Index size;          ///< k in M_k ⊗ 1_m
  Index multiplicity;  ///< m
};

/// ⊕ M_k ⊗ 1_m, optionally conjugated by a random unitary, with its
/// minimal central projections.
struct BlockAlgebra {
  AlgebraPtr algebra;
  std::vector<Matrix> central;
  Matrix rotation;
};

inline BlockAlgebra block_algebra(const std::vector<Block>& blocks, Rng& rng, bool rotate = true,
                                  const Tolerance& tol = Tolerance{}) {
  Index n = 0;
  for (const Block& b : blocks) n += b.size * b.multiplicity;
  const Matrix u = rotate ? random_unitary(n, rng) : Matrix::Identity(n, n);
  BlockAlgebra out;
  out.rotation = u;
  std::vector<Matrix> basis;
  Index offset = 0;
  for (const Block& b : blocks) {
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(b.multiplicity));
    Matrix z = Matrix::Zero(n, n);
    for (Index i = 0; i < b.size; ++i) {
      for (Index j = 0; j < b.size; ++j) {
        Matrix e = Matrix::Zero(n, n);
        for (Index r = 0; r < b.multiplicity; ++r) e(offset + i * b.multiplicity + r, offset + j * b.multiplicity + r) = scale;
        basis.push_back(u * e * u.adjoint());
      }
    }
    z.block(offset, offset, b.size * b.multiplicity, b.size * b.multiplicity).setIdentity();
    out.central.push_back(u * z * u.adjoint());
    offset += b.size * b.multiplicity;
  }
  out.algebra = CStarAlgebra::from_orthonormal_basis(std::move(basis), tol);
  return out;
}

/// A random block structure with ambient dimension at most max_n.
inline std::vector<Block> random_blocks(Index max_n, Rng& rng) {
  std::vector<Block> blocks;
  Index n = 0;
  const int count = rng.integer(1, 3);
  for (int c = 0; c < count; ++c) {
    const Index room = max_n - n;
    if (room < 1) break;
    const Index k = rng.integer(1, static_cast<int>(std::min<Index>(room, 3)));
    const Index m = rng.integer(1, static_cast<int>(std::max<Index>(1, std::min<Index>(room / k, 2))));
    blocks.push_back({k, m});
    n += k * m;
  }
  return blocks;
}

inline BlockAlgebra random_block_algebra(Index max_n, Rng& rng, const Tolerance& tol = Tolerance{}) {
  return block_algebra(random_blocks(max_n, rng), rng, true, tol);
}

inline Vector random_coords(const CStarAlgebra& alg, Rng& rng) {
  Vector c(alg.dim());
  for (Index k = 0; k < c.size(); ++k) c(k) = cplx(rng.normal(), rng.normal());
  return c;
}

inline Matrix random_element(const CStarAlgebra& alg, Rng& rng) { return alg.element(random_coords(alg, rng)); }

/// Hermitian element of the algebra with operator norm 1.
inline Matrix random_hamiltonian(const CStarAlgebra& alg, Rng& rng) {
  Matrix h = hermitian_part(random_element(alg, rng));
  return h / op_norm(h);
}

/// tr(ρ ·) for a random density of the given rank (0 picks one at random).
inline PLF random_state(const AlgebraPtr& alg, Rng& rng, Index rank = 0) {
  const Index n = alg->ambient_dim();
  if (rank == 0) rank = rng.integer(1, static_cast<int>(n));
  return plf_from_density(alg, random_density(n, rank, rng), Tolerance{});
}

/// tr(a z e^{−βh}) / tr(z e^{−βh}) for a central projection z; KMS for
/// the dynamics of h at β.
inline PLF central_gibbs(const AlgebraPtr& alg, const Matrix& h, double beta, const Matrix& z) {
  const Tolerance tol;
  const EigenSystem es = hermitian_eig(h, tol);
  const double ground = es.values(es.values.size() - 1);
  RealVector w(es.values.size());
  for (Index k = 0; k < w.size(); ++k) w(k) = std::exp(-beta * (es.values(k) - ground));
  Matrix rho = z * es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint() * z;
  rho = hermitian_part(rho / rho.trace().real());
  return plf_from_density(alg, rho, tol);
}

/// The support projection of a PLF's density.
inline Matrix support_projection(const PLF& lambda) {
  return psd_range(hermitian_part(lambda.density()), Tolerance{}).projector();
}

/// A state absolutely continuous with respect to λ: density p ρ p with p the
/// support projection of λ.
inline PLF random_ac_state(const PLF& lambda, Rng& rng, double mass = 1.0) {
  const Index n = lambda.algebra().ambient_dim();
  const Matrix p = support_projection(lambda);
  Matrix rho = p * random_density(n, n, rng) * p;
  rho = hermitian_part(mass * rho / rho.trace().real());
  return plf_from_density(lambda.algebra_ptr(), rho, Tolerance{});
}

inline double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace ncl::testing
