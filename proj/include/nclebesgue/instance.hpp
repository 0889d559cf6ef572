#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nclebesgue/kms.hpp"

namespace ncl {

/// One named state of an instance file: a density matrix or raw basis values.
struct StateSpec {
  enum class Kind { Density, Values };
  Kind kind = Kind::Density;
  Matrix matrix;  ///< Density
  Vector vector;  ///< Values
};

struct DynamicsSpec {
  Matrix hamiltonian;
  double beta = 1.0;
};

struct ToleranceSpec {
  std::optional<double> rank_rel;
  std::optional<double> eq_abs;
  std::optional<double> psd_slack;
};

/// The JSON instance format. Complex numbers are [re, im] pairs and matrices
/// are lists of rows.
struct Instance {
  Index ambient_dim = 0;
  std::vector<Matrix> generators;
  std::map<std::string, StateSpec> states;
  std::optional<DynamicsSpec> dynamics;
  ToleranceSpec tolerance;
};

/// Throws ParseError naming the offending line or field.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Deterministic JSON text (sorted keys, round-trip exact numbers).
std::string serialize_instance(const Instance& inst);

/// Defaults, then the file's overrides, then the explicit ones.
Tolerance resolve_tolerance(const ToleranceSpec& file, const ToleranceSpec& overrides);

/// The instance materialized: algebra, states and dynamics.
class Workspace {
 public:
  /// Throws TooLarge beyond `max_ambient` and anything generate() throws.
  Workspace(Instance inst, const ToleranceSpec& overrides, std::optional<double> beta_override,
            Index max_ambient = 16);

  const Instance& instance() const { return inst_; }
  const Tolerance& tolerance() const { return tol_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  /// Throws UnknownState; density states may throw NotPSD.
  PLF state(const std::string& name) const;
  bool has_dynamics() const { return inst_.dynamics.has_value(); }
  /// Throws MissingDynamics, NotInAlgebra, NotHermitian.
  Dynamics dynamics() const;

 private:
  Instance inst_;
  Tolerance tol_;
  AlgebraPtr algebra_;
};

}  // namespace ncl
