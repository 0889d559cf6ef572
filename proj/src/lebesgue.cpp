#include "nclebesgue/lebesgue.hpp"

#include <cmath>
#include <stdexcept>

#include "nclebesgue/gns.hpp"
#include "nclebesgue/radon_nikodym.hpp"

namespace ncl {

namespace {

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double gram_scale(const PLF& a, const PLF& b) {
  return std::max(op_norm(a.gram()), op_norm(b.gram()));
}

}  // namespace

// ============================================================================
// Decomposition
// ============================================================================

Decomposition decompose(const PLF& mu, const PLF& lambda, const Tolerance& tol) {
  if (!same_algebra(mu.algebra(), lambda.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, "decompose: functionals live on different algebras");
  }
  if (!is_positive(mu, tol)) throw Error(ErrorCode::NotPositive, "decompose: μ is not positive");
  if (!is_positive(lambda, tol)) throw Error(ErrorCode::NotPositive, "decompose: λ is not positive");
  const CStarAlgebra& alg = mu.algebra();
  const Index d = alg.dim();

  DecompositionDiagnostics diag;
  diag.kernel_inclusion = ideal_contained(lambda, mu, tol);

  Matrix gram_ac;
  Vector ac_values;
  if (diag.kernel_inclusion) {
    // range(G_μ) ⊆ range(G_λ): the short is G_μ itself.
    gram_ac = mu.gram();
    ac_values = mu.values();
  } else {
    gram_ac = shorted_operator(mu.gram(), psd_range(lambda.gram(), tol), tol);
    if (op_norm(gram_ac) <= tol.eq_abs * op_norm(mu.gram())) {
      // Rounding residue of a zero short; μ is singular.
      gram_ac.setZero();
      ac_values = Vector::Zero(d);
    } else {
      // μ_ac(a) = form(a, 1) = u* G_ac α.
      ac_values = (alg.unit_coords().adjoint() * gram_ac).transpose();
    }
  }
  PLF mu_ac(mu.algebra_ptr(), ac_values);
  PLF mu_s(mu.algebra_ptr(), mu.values() - ac_values);

  const double scale = std::max(1.0, op_norm(mu.gram()));
  diag.short_residual = d ? (mu_ac.gram() - gram_ac).cwiseAbs().maxCoeff() : 0.0;
  if (diag.short_residual > 10.0 * tol.eq_abs * scale) {
    throw Error(ErrorCode::RepresentabilityBreach,
                "decompose: shorted form is not the Gram form of a functional (residual " +
                    std::to_string(diag.short_residual) + ")");
  }
  const Matrix gs = hermitian_part(mu.gram() - gram_ac);
  diag.parallel_sum_norm = op_norm(parallel_sum(gs, lambda.gram(), tol));
  return Decomposition{std::move(mu_ac), std::move(mu_s), lambda, std::move(gram_ac), diag};
}

AcVerdict is_absolutely_continuous(const PLF& mu, const PLF& lambda, const Tolerance& tol) {
  AcVerdict out;
  out.absolutely_continuous = ideal_contained(lambda, mu, tol);
  if (!out.absolutely_continuous) return out;
  // t = λ_max(G_λ^{+1/2} G_μ G_λ^{+1/2}) on the range of G_λ.
  const EigenSystem es = hermitian_eig(lambda.gram(), tol);
  const double top = es.values.size() ? es.values(0) : 0.0;
  Index r = 0;
  if (top > 0.0) {
    while (r < es.values.size() && es.values(r) > tol.rank_rel * top) ++r;
  }
  if (r == 0) return out;
  const Matrix w = es.vectors.leftCols(r) * es.values.head(r).cwiseSqrt().cwiseInverse().asDiagonal();
  const Matrix ratio = hermitian_part(w.adjoint() * mu.gram() * w);
  out.bound = std::max(0.0, hermitian_eig(ratio, tol).values(0));
  return out;
}

bool is_singular(const PLF& mu, const PLF& lambda, const Tolerance& tol) {
  const double norm = op_norm(parallel_sum(mu.gram(), lambda.gram(), tol));
  return norm <= tol.eq_abs * gram_scale(mu, lambda);
}

std::vector<WitnessTerm> witness_sequence(const PLF& mu, const PLF& lambda, int n_terms, const Tolerance& tol) {
  if (n_terms < 1) throw Error(ErrorCode::ShapeMismatch, "witness_sequence: n_terms must be positive");
  if (!is_absolutely_continuous(mu, lambda, tol).absolutely_continuous) {
    throw Error(ErrorCode::NotAbsolutelyContinuous, "witness_sequence: μ is not absolutely continuous");
  }
  const GnsData data = gns(lambda, tol);
  const Derivative deriv = derivative(mu, lambda, data, tol);
  std::vector<WitnessTerm> out;
  const double step = deriv.norm_bound / n_terms;
  if (data.degenerate()) {
    for (int k = 1; k <= n_terms; ++k) out.push_back({PLF::zero(lambda.algebra_ptr()), 0.0});
    return out;
  }

  const EigenSystem es = hermitian_eig(deriv.d, tol);
  const Index d = data.algebra->dim();
  for (int k = 1; k <= n_terms; ++k) {
    const double cut = k * step;
    Matrix cutoff = Matrix::Zero(data.dim, data.dim);
    for (Index j = 0; j < es.values.size(); ++j) {
      if (k == n_terms || es.values(j) <= cut * (1.0 + 1e-12)) {
        const double e = std::max(es.values(j), 0.0);
        cutoff += e * es.vectors.col(j) * es.vectors.col(j).adjoint();
      }
    }
    const Vector moved = cutoff * data.cyclic;
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = data.cyclic.dot(data.rep[static_cast<std::size_t>(i)] * moved);
    out.push_back({PLF(lambda.algebra_ptr(), std::move(v)), cut});
  }
  return out;
}

// ============================================================================
// Property suite
// ============================================================================

bool PropertyReport::all_passed() const {
  for (const PropertyCheck& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const PropertyCheck& PropertyReport::at(const std::string& name) const {
  for (const PropertyCheck& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no property check named " + name);
}

namespace {

// Decomposes after reordering the basis and maps the parts back.
std::pair<Vector, Vector> decompose_permuted(const PLF& mu, const PLF& lambda, const Tolerance& tol) {
  const CStarAlgebra& alg = mu.algebra();
  const Index d = alg.dim();
  std::vector<Index> perm(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) perm[static_cast<std::size_t>(k)] = (d - 1 - k + d / 2) % d;
  std::vector<Matrix> basis;
  Vector vm(d), vl(d);
  for (Index k = 0; k < d; ++k) {
    const Index p = perm[static_cast<std::size_t>(k)];
    basis.push_back(alg.basis(p));
    vm(k) = mu.values()(p);
    vl(k) = lambda.values()(p);
  }
  const AlgebraPtr permuted = CStarAlgebra::from_orthonormal_basis(std::move(basis), tol);
  const Decomposition dec = decompose(PLF(permuted, vm), PLF(permuted, vl), tol);
  Vector ac(d), s(d);
  for (Index k = 0; k < d; ++k) {
    ac(perm[static_cast<std::size_t>(k)]) = dec.mu_ac.values()(k);
    s(perm[static_cast<std::size_t>(k)]) = dec.mu_s.values()(k);
  }
  return {ac, s};
}

}  // namespace

PropertyReport property_suite(const PLF& mu, const PLF& tau, const PLF& lambda, const Tolerance& tol) {
  PropertyReport report;
  const double scale = std::max(1.0, mu.norm() + tau.norm());
  const double eq = 10.0 * tol.eq_abs * scale;
  auto add = [&](std::string name, double residual, bool passed) {
    report.checks.push_back({std::move(name), passed, residual});
  };
  auto add_eq = [&](std::string name, double residual) { add(std::move(name), residual, residual <= eq); };

  const Decomposition dm = decompose(mu, lambda, tol);
  const Decomposition dt = decompose(tau, lambda, tol);
  const PLF sum = mu + tau;
  const Decomposition ds = decompose(sum, lambda, tol);

  add_eq("parts_sum", max_abs(dm.mu_ac.values() + dm.mu_s.values() - mu.values()));
  add_eq("additivity_ac", max_abs(ds.mu_ac.values() - dm.mu_ac.values() - dt.mu_ac.values()));
  add_eq("additivity_s", max_abs(ds.mu_s.values() - dm.mu_s.values() - dt.mu_s.values()));

  // μ ≤ μ + τ always holds; the given pair is checked only when ordered.
  auto monotone = [&](const Decomposition& lo, const Decomposition& hi, const std::string& label) {
    const PsdReport ac = psd_check(hi.mu_ac.gram() - lo.mu_ac.gram(), tol,
                                   std::max(op_norm(hi.mu_ac.gram()), op_norm(lo.mu_ac.gram())));
    const PsdReport s = psd_check(hi.mu_s.gram() - lo.mu_s.gram(), tol,
                                  std::max(op_norm(hi.mu_s.gram()), op_norm(lo.mu_s.gram())));
    add("monotone_ac" + label, std::max(0.0, -ac.min_eigenvalue), ac.psd);
    add("monotone_s" + label, std::max(0.0, -s.min_eigenvalue), s.psd);
  };
  monotone(dm, ds, "");
  if (leq(mu, tau, tol)) monotone(dm, dt, "_pair");

  for (double alpha : {0.3, 0.7, 1.0}) {
    const std::string tag = "_" + std::to_string(static_cast<int>(std::lround(alpha * 10)));
    add_eq("hereditary_s" + tag, max_abs(decompose(alpha * dm.mu_s, lambda, tol).mu_ac.values()));
    add_eq("hereditary_ac" + tag, max_abs(decompose(alpha * dm.mu_ac, lambda, tol).mu_s.values()));
  }

  add_eq("idempotent_ac", max_abs(decompose(dm.mu_ac, lambda, tol).mu_s.values()));
  add_eq("idempotent_s", max_abs(decompose(dm.mu_s, lambda, tol).mu_ac.values()));

  const auto [ac, s] = decompose_permuted(mu, lambda, tol);
  add_eq("uniqueness", std::max(max_abs(ac - dm.mu_ac.values()), max_abs(s - dm.mu_s.values())));

  add("singular_part_singular", dm.diagnostics.parallel_sum_norm, is_singular(dm.mu_s, lambda, tol));
  add("ac_part_ac", 0.0, is_absolutely_continuous(dm.mu_ac, lambda, tol).absolutely_continuous);
  return report;
}

}  // namespace ncl
