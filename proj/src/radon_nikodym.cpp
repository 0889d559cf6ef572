#include "nclebesgue/radon_nikodym.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nclebesgue/lebesgue.hpp"

namespace ncl {

// ============================================================================
// Solve
// ============================================================================

Derivative derivative(const PLF& mu, const PLF& lambda, const GnsData& data, const Tolerance& tol) {
  if (!same_algebra(mu.algebra(), *data.algebra) || !same_algebra(lambda.algebra(), *data.algebra)) {
    throw Error(ErrorCode::ShapeMismatch, "derivative: algebra mismatch");
  }
  if (!is_positive(mu, tol)) throw Error(ErrorCode::NotPositive, "derivative: μ is not positive");
  if (!is_absolutely_continuous(mu, lambda, tol).absolutely_continuous) {
    throw Error(ErrorCode::NotAbsolutelyContinuous, "derivative: μ is not absolutely continuous");
  }
  std::vector<Index> order(static_cast<std::size_t>(data.algebra->dim()));
  std::iota(order.begin(), order.end(), Index{0});
  return derivative_in_basis(mu, data, data.linf_commutant, order, tol);
}

Derivative derivative_in_basis(const PLF& mu, const GnsData& data, AlgebraPtr commutant_basis,
                               const std::vector<Index>& equation_order, const Tolerance& tol) {
  Derivative out;
  if (data.degenerate()) {
    if (mu.values().cwiseAbs().maxCoeff() > tol.eq_abs) {
      throw Error(ErrorCode::NotAbsolutelyContinuous, "derivative: λ = 0 but μ ≠ 0");
    }
    out.d = Matrix::Zero(0, 0);
    out.sqrt_d = out.d;
    out.commutant_coords = Vector::Zero(0);
    return out;
  }
  const CStarAlgebra& comm = *commutant_basis;
  if (comm.ambient_dim() != data.dim) throw Error(ErrorCode::ShapeMismatch, "derivative: commutant size mismatch");
  const Index rows = static_cast<Index>(equation_order.size());
  const Index cols = comm.dim();

  // M(i, m) = ⟨π(b_i) C_m ξ, ξ⟩ = ξ* π(b_i) C_m ξ.
  std::vector<Vector> moved;
  moved.reserve(static_cast<std::size_t>(cols));
  for (Index m = 0; m < cols; ++m) moved.push_back(comm.basis(m) * data.cyclic);
  Matrix system(rows, cols);
  Vector rhs(rows);
  for (Index row = 0; row < rows; ++row) {
    const Index i = equation_order[static_cast<std::size_t>(row)];
    const Vector left = data.rep[static_cast<std::size_t>(i)].adjoint() * data.cyclic;
    for (Index m = 0; m < cols; ++m) system(row, m) = left.dot(moved[static_cast<std::size_t>(m)]);
    rhs(row) = mu.values()(i);
  }

  const Svd svd = singular_value_decomposition(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.values;
  if (s.size() < cols || !(s(cols - 1) > tol.rank_rel * s(0))) {
    throw Error(ErrorCode::SolveSingular, "derivative: moment system is rank deficient");
  }
  out.commutant_coords = svd.v * (s.cwiseInverse().cast<cplx>().asDiagonal() * (svd.u.adjoint() * rhs));
  out.solve_residual = (system * out.commutant_coords - rhs).norm();
  if (out.solve_residual > 10.0 * tol.eq_abs * std::max(rhs.norm(), 1.0)) {
    throw Error(ErrorCode::NotRepresentable,
                "derivative: moment equations have residual " + std::to_string(out.solve_residual));
  }
  out.commutant = std::move(commutant_basis);
  const Matrix raw = out.commutant->element(out.commutant_coords);
  if (hermitian_residual(raw) > 10.0 * tol.eq_abs * std::max(1.0, raw.norm())) {
    throw Error(ErrorCode::NotRepresentable, "derivative: solution is not Hermitian");
  }
  out.d = hermitian_part(raw);
  const EigenSystem es = hermitian_eig(out.d, tol);
  const double scale = std::max(1.0, std::abs(es.values(0)));
  if (es.values(es.values.size() - 1) < -tol.psd_slack * scale) {
    throw Error(ErrorCode::NotRepresentable, "derivative: solution is not positive semidefinite");
  }
  out.spectrum = es.values.cwiseMax(0.0);
  out.norm_bound = out.spectrum(0);
  out.sqrt_d = es.vectors * out.spectrum.cwiseSqrt().cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return out;
}

// ============================================================================
// Checks
// ============================================================================

PLF reconstruct(const Derivative& deriv, const GnsData& data) {
  if (data.degenerate()) return PLF::zero(data.algebra);
  const Vector root = deriv.sqrt_d * data.cyclic;
  Vector v(data.algebra->dim());
  for (Index i = 0; i < v.size(); ++i) v(i) = root.dot(data.rep[static_cast<std::size_t>(i)] * root);
  return PLF(data.algebra, std::move(v));
}

PLF reconstruct_linear(const Derivative& deriv, const GnsData& data) {
  if (data.degenerate()) return PLF::zero(data.algebra);
  const Vector moved = deriv.d * data.cyclic;
  Vector v(data.algebra->dim());
  for (Index i = 0; i < v.size(); ++i) v(i) = data.cyclic.dot(data.rep[static_cast<std::size_t>(i)] * moved);
  return PLF(data.algebra, std::move(v));
}

DominationCheck bounded_domination_check(const Derivative& deriv, const GnsData& data, const PLF& mu,
                                         const PLF& lambda, double t, const Tolerance& tol) {
  DominationCheck out;
  out.precondition = leq(mu, t * lambda, tol);
  out.norm_bound = deriv.norm_bound;
  out.bounded = deriv.norm_bound <= t + tol.eq_abs;
  out.form_residual =
      (reconstruct(deriv, data).values() - reconstruct_linear(deriv, data).values()).cwiseAbs().maxCoeff();
  return out;
}

double resolvent_distance(const Derivative& d1, const Derivative& d2) {
  if (d1.d.rows() != d2.d.rows()) throw Error(ErrorCode::ShapeMismatch, "resolvent_distance: size mismatch");
  const Index r = d1.d.rows();
  if (r == 0) return 0.0;
  const Matrix id = Matrix::Identity(r, r);
  const Matrix r1 = (id + d1.d).ldlt().solve(id);
  const Matrix r2 = (id + d2.d).ldlt().solve(id);
  return op_norm(r1 - r2);
}

double affiliation_residual(const Derivative& deriv, const GnsData& data) {
  double worst = 0.0;
  for (const Matrix& p : data.rep) worst = std::max(worst, (deriv.d * p - p * deriv.d).norm());
  return worst;
}

}  // namespace ncl
