#include "nclebesgue/oracle_classical.hpp"

#include <cmath>

#include "nclebesgue/gns.hpp"
#include "nclebesgue/lebesgue.hpp"
#include "nclebesgue/radon_nikodym.hpp"

namespace ncl {

FiniteMeasure::FiniteMeasure(RealVector weights) : weights_(std::move(weights)) {
  for (Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_(i)) || weights_(i) < 0.0) {
      throw Error(ErrorCode::ShapeMismatch, "measure weights must be finite and non-negative");
    }
  }
}

ClassicalDecomposition classical_decompose(const FiniteMeasure& mu, const FiniteMeasure& lambda) {
  if (mu.size() != lambda.size()) throw Error(ErrorCode::ShapeMismatch, "measures differ in length");
  const Index m = mu.size();
  ClassicalDecomposition out;
  out.ac = RealVector::Zero(m);
  out.s = RealVector::Zero(m);
  out.density = RealVector::Zero(m);
  out.support.assign(static_cast<std::size_t>(m), false);
  for (Index i = 0; i < m; ++i) {
    const double mi = mu.weights()(i);
    const double li = lambda.weights()(i);
    if (li > 0.0) {
      out.ac(i) = mi;
      out.density(i) = mi / li;
      out.support[static_cast<std::size_t>(i)] = true;
    } else {
      out.s(i) = mi;
    }
  }
  return out;
}

// Diagonal basis elements are √m e_ii, so μ(b_i) = √m w_i.
PLF embed_diagonal(const FiniteMeasure& m, AlgebraPtr diagonal, const Tolerance& tol) {
  if (diagonal->ambient_dim() != m.size() || diagonal->dim() != m.size()) {
    throw Error(ErrorCode::ShapeMismatch, "embed_diagonal: algebra does not match the measure");
  }
  const Matrix rho = m.weights().cast<cplx>().asDiagonal();
  return plf_from_density(std::move(diagonal), rho, tol);
}

PLF embed_diagonal(const FiniteMeasure& m, const Tolerance& tol) {
  return embed_diagonal(m, diagonal_algebra(m.size(), tol), tol);
}

RealVector diagonal_weights(const PLF& mu) {
  const Matrix w = mu.density();
  return w.diagonal().real();
}

CrossValidation cross_validate(const FiniteMeasure& mu, const FiniteMeasure& lambda, AlgebraPtr diagonal,
                               const Tolerance& tol, double threshold) {
  const ClassicalDecomposition oracle = classical_decompose(mu, lambda);
  const PLF m = embed_diagonal(mu, diagonal, tol);
  const PLF l = embed_diagonal(lambda, diagonal, tol);

  CrossValidation out;
  const Decomposition dec = decompose(m, l, tol);
  out.ac_error = (diagonal_weights(dec.mu_ac) - oracle.ac).cwiseAbs().maxCoeff();
  out.s_error = (diagonal_weights(dec.mu_s) - oracle.s).cwiseAbs().maxCoeff();

  const GnsData data = gns(l, tol);
  out.gns_dim = data.dim;
  for (bool b : oracle.support) out.support_size += b ? 1 : 0;
  if (!data.degenerate()) {
    // D = π_λ(f): pull it back to the diagonal and read f on the support.
    const Derivative deriv = derivative(dec.mu_ac, l, data, tol);
    const RealVector f = preimage(data, deriv.d, tol).diagonal().real();
    for (Index i = 0; i < f.size(); ++i) {
      if (oracle.support[static_cast<std::size_t>(i)]) {
        out.density_error = std::max(out.density_error, std::abs(f(i) - oracle.density(i)));
      }
    }
  }
  out.passed = out.ac_error <= threshold && out.s_error <= threshold && out.density_error <= threshold &&
               out.gns_dim == out.support_size;
  return out;
}

CrossValidation cross_validate(const FiniteMeasure& mu, const FiniteMeasure& lambda, const Tolerance& tol,
                               double threshold) {
  return cross_validate(mu, lambda, diagonal_algebra(mu.size(), tol), tol, threshold);
}

}  // namespace ncl
