#pragma once

// Extended-precision Ando iteration a:(2^k b) → short of a onto range(b).
//
// Two things go wrong when a + t b is inverted naively. The kernel of a
// double-precision b carries eigenvalues near 1e-16, which t = 2^60 turns
// into genuine stiffness, and the inverse loses about eps·t to conditioning.
// So b is diagonalized once in long double with its kernel set exactly to
// zero, and (a + t b)⁺ is replaced by the generalized inverse D⁻¹ M⁺ D⁻¹ with
// D = diag(√t on range(b), 1 on the kernel) and M = D⁻¹ a D⁻¹ + diag(e, 0),
// which stays well conditioned as t grows. a X a does not depend on which
// generalized inverse X is used because range(a) ⊆ range(a + t b).

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "nclebesgue/numerics.hpp"

namespace ncl::testing {

using LongMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
using LongReal = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline LongMatrix widen(const Matrix& m) { return m.cast<std::complex<long double>>(); }

inline LongMatrix long_hermitian_pinv(const LongMatrix& m, long double rel) {
  Eigen::SelfAdjointEigenSolver<LongMatrix> es((m + m.adjoint()) / 2.0L);
  const auto& e = es.eigenvalues();
  long double top = 0;
  for (Index k = 0; k < e.size(); ++k) top = std::max(top, std::abs(e(k)));
  LongMatrix inv = LongMatrix::Zero(m.rows(), m.cols());
  for (Index k = 0; k < e.size(); ++k) {
    if (std::abs(e(k)) > rel * top) inv += (1.0L / e(k)) * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  }
  return inv;
}

/// a:(t b) with b = diag(e, 0) in its own eigenbasis; `e` holds the range eigenvalues.
inline LongMatrix long_parallel_sum_diag(const LongMatrix& a, const LongReal& e, long double t) {
  const Index n = a.rows();
  const Index r = e.size();
  LongReal dinv = LongReal::Ones(n);
  dinv.head(r).setConstant(1.0L / std::sqrt(t));
  LongMatrix m = dinv.asDiagonal() * a * dinv.asDiagonal();
  for (Index k = 0; k < r; ++k) m(k, k) += e(k);
  const LongMatrix x = dinv.asDiagonal() * long_hermitian_pinv(m, 1e-15L) * dinv.asDiagonal();
  return a - a * x * a;
}

struct AndoResult {
  double best_error = 0.0;
  int best_k = 0;
};

/// Smallest ‖a:(2^k b) − target‖_F over k ≤ k_max. Eigenvalues of b below
/// range_rel · ‖b‖ are treated as exact zeros.
inline AndoResult ando_limit_error(const Matrix& a, const Matrix& b, const Matrix& target, int k_max = 60,
                                   long double range_rel = 1e-12L) {
  const Index n = a.rows();
  Eigen::SelfAdjointEigenSolver<LongMatrix> es((widen(b) + widen(b).adjoint()) / 2.0L);
  // Descending order so that range(b) comes first.
  const LongMatrix v = es.eigenvectors().rowwise().reverse();
  const LongReal all = es.eigenvalues().reverse();
  Index r = 0;
  while (r < n && all(r) > range_rel * std::max(all(0), 0.0L)) ++r;
  const LongReal e = all.head(r);

  const LongMatrix la = v.adjoint() * widen(a) * v;
  const LongMatrix lt = widen(target);
  AndoResult out{std::numeric_limits<double>::infinity(), -1};
  for (int k = 0; k <= k_max; ++k) {
    const LongMatrix p = v * long_parallel_sum_diag(la, e, std::ldexp(1.0L, k)) * v.adjoint();
    const double err = static_cast<double>((p - lt).norm());
    if (err < out.best_error) out = {err, k};
  }
  return out;
}

}  // namespace ncl::testing
