#include <random>
#include <sstream>

#include "nclebesgue/commands.hpp"

namespace ncl {

namespace {

Matrix pauli(char axis) {
  Matrix p = Matrix::Zero(2, 2);
  switch (axis) {
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': p << 1, 0, 0, -1; break;
    default: p.setIdentity();
  }
  return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// op acting on `site` of an L-site chain, site 0 leftmost.
Matrix site_operator(const Matrix& op, int site, int sites) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < sites; ++k) out = kron(out, k == site ? op : Matrix::Identity(2, 2));
  return out;
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Matrix spin_hamiltonian(int sites, const std::string& coupling) {
  if (sites < 1) throw Error(ErrorCode::ShapeMismatch, "spin chain needs at least one site");
  const Index n = Index{1} << sites;
  Matrix h = Matrix::Zero(n, n);
  std::stringstream in(coupling);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "coupling term '" + item + "' lacks ':'");
    const std::string term = item.substr(0, colon);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "coupling term '" + item + "' has no numeric value");
    }
    if (term == "xx" || term == "yy" || term == "zz") {
      const Matrix p = pauli(term[0]);
      for (int s = 0; s + 1 < sites; ++s) h += value * site_operator(p, s, sites) * site_operator(p, s + 1, sites);
    } else if (term == "x" || term == "y" || term == "z") {
      for (int s = 0; s < sites; ++s) h += value * site_operator(pauli(term[0]), s, sites);
    } else if (term == "n") {
      const Matrix number = (Matrix::Identity(2, 2) - pauli('z')) / 2.0;
      for (int s = 0; s < sites; ++s) h += value * site_operator(number, s, sites);
    } else {
      throw Error(ErrorCode::ParseError, "unknown coupling term '" + term + "'");
    }
  }
  return h;
}

Instance cmd_spinchain(int sites, const std::string& coupling, double beta, std::uint64_t seed) {
  if (sites > 6) throw Error(ErrorCode::TooLarge, "spin chains are limited to 6 sites");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::ShapeMismatch, "beta must be finite and >= 0");
  const Matrix h = spin_hamiltonian(sites, coupling);
  const Index n = h.rows();

  Instance inst;
  inst.ambient_dim = n;
  for (int s = 0; s < sites; ++s) {
    inst.generators.push_back(site_operator(pauli('x'), s, sites));
    inst.generators.push_back(site_operator(pauli('z'), s, sites));
  }

  const EigenSystem es = hermitian_eig(h, Tolerance{});
  const double ground = es.values(n - 1);
  RealVector w(n);
  for (Index k = 0; k < n; ++k) w(k) = std::exp(-beta * (es.values(k) - ground));
  w /= w.sum();
  const Matrix rho = hermitian_part(es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint());

  std::mt19937_64 rng(seed);
  Vector psi(n);
  for (Index k = 0; k < n; ++k) psi(k) = cplx(2 * uniform(rng) - 1, 2 * uniform(rng) - 1);
  psi.normalize();
  const Matrix mu = hermitian_part(0.8 * rho + 0.2 * psi * psi.adjoint());

  inst.states["lambda"] = StateSpec{StateSpec::Kind::Density, rho, {}};
  inst.states["mu"] = StateSpec{StateSpec::Kind::Density, mu, {}};
  inst.dynamics = DynamicsSpec{h, beta};
  return inst;
}

}  // namespace ncl
