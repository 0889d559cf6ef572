#pragma once

#include <vector>

#include "nclebesgue/functional.hpp"

namespace ncl {

/// Non-negative masses on m atoms.
class FiniteMeasure {
 public:
  /// Throws ShapeMismatch on negative or non-finite weights.
  explicit FiniteMeasure(RealVector weights);
  const RealVector& weights() const { return weights_; }
  Index size() const { return weights_.size(); }

 private:
  RealVector weights_;
};

struct ClassicalDecomposition {
  RealVector ac;
  RealVector s;
  RealVector density;          ///< μ_i / λ_i on the support of λ, zero elsewhere
  std::vector<bool> support;   ///< λ_i > 0
};

/// Throws ShapeMismatch for measures of different length.
ClassicalDecomposition classical_decompose(const FiniteMeasure& mu, const FiniteMeasure& lambda);

/// The diagonal algebra of M_m with the functional Σ w_i a_ii.
PLF embed_diagonal(const FiniteMeasure& m, AlgebraPtr diagonal, const Tolerance& tol);
PLF embed_diagonal(const FiniteMeasure& m, const Tolerance& tol);

/// Weights read back from a functional on the diagonal algebra.
RealVector diagonal_weights(const PLF& mu);

struct CrossValidation {
  double ac_error = 0.0;
  double s_error = 0.0;
  double density_error = 0.0;
  Index gns_dim = 0;
  Index support_size = 0;
  bool passed = false;
};

/// Runs decompose and derivative on the embedded pair and compares them with
/// classical_decompose entrywise.
CrossValidation cross_validate(const FiniteMeasure& mu, const FiniteMeasure& lambda, AlgebraPtr diagonal,
                               const Tolerance& tol, double threshold = 1e-10);
CrossValidation cross_validate(const FiniteMeasure& mu, const FiniteMeasure& lambda, const Tolerance& tol,
                               double threshold = 1e-10);

}  // namespace ncl
