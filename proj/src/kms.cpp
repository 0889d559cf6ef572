#include "nclebesgue/kms.hpp"

#include <cmath>
#include <string>

namespace ncl {

namespace {

void require_hamiltonian(const Matrix& h, Index n, const Tolerance& tol) {
  if (h.rows() != n || h.cols() != n) throw Error(ErrorCode::ShapeMismatch, "hamiltonian must be n x n");
  if (hermitian_residual(h) > tol.eq_abs * std::max(1.0, h.norm())) {
    throw Error(ErrorCode::NotHermitian, "hamiltonian is not Hermitian");
  }
}

// tr(x y) without forming the product.
cplx trace_product(const Matrix& x, const Matrix& y) { return x.transpose().cwiseProduct(y).sum(); }

}  // namespace

// ============================================================================
// Dynamics
// ============================================================================

Dynamics Dynamics::inner(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol) {
  require_hamiltonian(h, algebra->ambient_dim(), tol);
  if (!algebra->contains(h)) throw Error(ErrorCode::NotInAlgebra, "hamiltonian is not in the algebra");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::ShapeMismatch, "beta must be finite and >= 0");
  const Matrix hh = hermitian_part(h);
  EigenSystem es = hermitian_eig(hh, tol);
  return Dynamics(std::move(algebra), hh, beta, std::move(es));
}

Dynamics Dynamics::spatial(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol) {
  require_hamiltonian(h, algebra->ambient_dim(), tol);
  if (!std::isfinite(beta)) throw Error(ErrorCode::ShapeMismatch, "beta must be finite");
  const Matrix hh = hermitian_part(h);
  for (const Matrix& b : algebra->basis()) {
    const Matrix c = hh * b - b * hh;
    if (algebra->residual(c) > 10.0 * tol.eq_abs * std::max(1.0, hh.norm()) * b.norm()) {
      throw Error(ErrorCode::NotInAlgebra, "conjugation by the hamiltonian leaves the algebra");
    }
  }
  EigenSystem es = hermitian_eig(hh, tol);
  return Dynamics(std::move(algebra), hh, beta, std::move(es));
}

Matrix Dynamics::sigma(cplx z, const Matrix& a) const {
  if (a.rows() != algebra_->ambient_dim() || a.cols() != algebra_->ambient_dim() || !algebra_->contains(a)) {
    throw Error(ErrorCode::NotInAlgebra, "sigma: element is not in the algebra");
  }
  return sigma_unchecked(z, a);
}

Matrix Dynamics::sigma_unchecked(cplx z, const Matrix& a) const {
  // Shifting h by a constant leaves the conjugation unchanged and keeps the
  // exponentials of imaginary-time arguments centred.
  const RealVector& e = eig_.values;
  const double mid = e.size() ? 0.5 * (e(0) + e(e.size() - 1)) : 0.0;
  const cplx iz(0.0, 1.0);
  Vector left(e.size());
  Vector right(e.size());
  for (Index k = 0; k < e.size(); ++k) {
    left(k) = std::exp(iz * z * (e(k) - mid));
    right(k) = std::exp(-iz * z * (e(k) - mid));
  }
  const Matrix& u = eig_.vectors;
  const Matrix inner = left.asDiagonal() * (u.adjoint() * a * u) * right.asDiagonal();
  return u * inner * u.adjoint();
}

// ============================================================================
// Gibbs and KMS
// ============================================================================

PLF gibbs(AlgebraPtr algebra, const Matrix& h, double beta, const Tolerance& tol) {
  const Dynamics dyn = Dynamics::inner(algebra, h, beta, tol);
  const EigenSystem& es = dyn.spectrum();
  const double ground = es.values(es.values.size() - 1);
  RealVector w(es.values.size());
  for (Index k = 0; k < w.size(); ++k) w(k) = std::exp(-beta * (es.values(k) - ground));
  w /= w.sum();
  const Matrix rho = es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return plf_from_density(std::move(algebra), hermitian_part(rho), tol);
}

double kms_residual(const PLF& lambda, const Dynamics& dyn) {
  const CStarAlgebra& alg = lambda.algebra();
  if (!same_algebra(alg, dyn.algebra())) throw Error(ErrorCode::ShapeMismatch, "kms_residual: algebra mismatch");
  const Matrix w = lambda.density();
  const cplx shift(0.0, dyn.beta());
  const Index d = alg.dim();
  std::vector<Matrix> rotated;
  std::vector<Matrix> weighted;
  rotated.reserve(static_cast<std::size_t>(d));
  weighted.reserve(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    rotated.push_back(dyn.sigma_unchecked(shift, alg.basis(i)));
    weighted.push_back(w * alg.basis(i));
  }
  double worst = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const cplx lhs = trace_product(weighted[static_cast<std::size_t>(i)], alg.basis(j));
      const cplx rhs = trace_product(weighted[static_cast<std::size_t>(j)], rotated[static_cast<std::size_t>(i)]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

bool is_kms(const PLF& lambda, const Dynamics& dyn, const Tolerance& tol) {
  return kms_residual(lambda, dyn) <= tol.eq_abs * std::max(lambda.norm(), 1e-300);
}

double time_invariance_residual(const PLF& lambda, const Dynamics& dyn, const std::vector<double>& t_samples) {
  const CStarAlgebra& alg = lambda.algebra();
  const Matrix w = lambda.density();
  double worst = 0.0;
  for (double t : t_samples) {
    for (Index i = 0; i < alg.dim(); ++i) {
      const cplx moved = trace_product(w, dyn.sigma_unchecked(cplx(t, 0.0), alg.basis(i)));
      worst = std::max(worst, std::abs(moved - lambda.values()(i)));
    }
  }
  return worst;
}

double gibbs_distance(const PLF& lambda, const Dynamics& dyn, const Tolerance& tol) {
  const PLF g = gibbs(lambda.algebra_ptr(), dyn.hamiltonian(), dyn.beta(), tol);
  return (lambda.values() - g.values()).cwiseAbs().maxCoeff();
}

DominationSample domination_sample(const PLF& lambda, const Dynamics& dyn, const Matrix& x, const Matrix& y) {
  DominationSample out;
  const double ly = evaluate(lambda, y).real();
  const double xnorm = op_norm(x);
  out.lhs = std::abs(evaluate(lambda, x.adjoint() * y * x));
  out.bound = 2.0 * xnorm * xnorm * ly;
  const double half = op_norm(dyn.sigma(cplx(0.0, -dyn.beta() / 2.0), x));
  out.kms_bound = half * half * ly;
  return out;
}

// ============================================================================
// Modular theory
// ============================================================================

PLF ModularData::vector_state() const {
  Vector v(algebra->dim());
  for (Index i = 0; i < v.size(); ++i) v(i) = eta.dot(algebra->basis(i) * eta);
  return PLF(algebra, std::move(v));
}

Dynamics ModularData::dynamics(const Tolerance& tol) const {
  return Dynamics::spatial(algebra, hamiltonian, 1.0, tol);
}

ModularData modular_operator(AlgebraPtr algebra, const Vector& eta, const Tolerance& tol) {
  const Index n = algebra->ambient_dim();
  const Index d = algebra->dim();
  if (eta.size() != n) throw Error(ErrorCode::ShapeMismatch, "modular_operator: vector length mismatch");

  Matrix v(n, d);
  for (Index i = 0; i < d; ++i) v.col(i) = algebra->basis(i) * eta;
  const RealVector s = singular_value_decomposition(v).values;
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol.rank_rel * s(0)) ++rank;
  if (rank < n) throw Error(ErrorCode::NotCyclic, "vector is not cyclic: rank " + std::to_string(rank));
  if (rank < d) throw Error(ErrorCode::NotSeparating, "vector is not separating: rank " + std::to_string(rank));

  ModularData out;
  out.algebra = algebra;
  out.eta = eta;
  // S(Vα) = V coords(a*) = V A conj(α), so S x = V A conj(V⁻¹) conj(x).
  const Matrix v_inv = v.partialPivLu().inverse();
  out.s_matrix = v * algebra->adjoint_coords() * v_inv.conjugate();
  out.nabla = hermitian_part(Matrix((out.s_matrix.adjoint() * out.s_matrix).conjugate()));

  const EigenSystem es = hermitian_eig(out.nabla, tol);
  RealVector inv_root(es.values.size());
  RealVector logs(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k) {
    if (!(es.values(k) > 0.0)) throw Error(ErrorCode::NotSeparating, "modular operator is singular");
    inv_root(k) = 1.0 / std::sqrt(es.values(k));
    logs(k) = -std::log(es.values(k));
  }
  const Matrix nabla_inv_root = es.vectors * inv_root.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  out.j_unitary = out.s_matrix * nabla_inv_root.conjugate();
  out.hamiltonian = hermitian_part(es.vectors * logs.cast<cplx>().asDiagonal() * es.vectors.adjoint());

  const Matrix ur = out.j_unitary.real().cast<cplx>();
  const Matrix ui = out.j_unitary.imag().cast<cplx>();
  out.j_real.resize(2 * n, 2 * n);
  out.j_real << ur, ui, ui, -ur;
  return out;
}

ModularResiduals modular_residuals(const ModularData& data, const Tolerance& tol) {
  const CStarAlgebra& alg = *data.algebra;
  const Index n = alg.ambient_dim();
  ModularResiduals out;

  const Matrix& u = data.j_unitary;
  const Matrix ubar = u.conjugate();
  for (Index i = 0; i < alg.dim(); ++i) {
    const Matrix& b = alg.basis(i);
    out.s_relation = std::max(out.s_relation, (data.apply_s(b * data.eta) - b.adjoint() * data.eta).norm());
    const Matrix jbj = u * b.conjugate() * ubar;
    for (Index j = 0; j < alg.dim(); ++j) {
      const Matrix& c = alg.basis(j);
      out.commutant = std::max(out.commutant, (jbj * c - c * jbj).norm());
    }
  }

  const Matrix root = psd_sqrt(data.nabla, tol);
  out.polar = (u.adjoint() * u - Matrix::Identity(n, n)).norm() +
              (u * root.conjugate() - data.s_matrix).norm();

  const Dynamics dyn = data.dynamics(tol);
  for (double t : {0.37, -1.3, 2.9}) {
    for (const Matrix& b : alg.basis()) {
      out.invariance = std::max(out.invariance, alg.residual(dyn.sigma_unchecked(cplx(t, 0.0), b)));
    }
  }
  out.kms = kms_residual(data.vector_state(), dyn);
  return out;
}

}  // namespace ncl
