#include "nclebesgue/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nclebesgue/report.hpp"

namespace ncl {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(field, "missing key '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

cplx complex_entry(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected a [re, im] pair");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

Matrix parse_matrix(const json& j, Index n, const std::string& field) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) {
    fail(field, "expected " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      fail(row_field, "expected " + std::to_string(n) + " entries");
    }
    for (Index c = 0; c < n; ++c) {
      m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a list of [re, im] pairs");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = complex_entry(j[k], field + "[" + std::to_string(k) + "]");
  return v;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v(k)));
  return out;
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

// ============================================================================
// Parsing and serialization
// ============================================================================

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  Instance inst;
  const json& n = member(doc, "ambient_dim", "<root>");
  if (!n.is_number_integer() || n.get<long long>() <= 0) fail("ambient_dim", "expected a positive integer");
  inst.ambient_dim = n.get<Index>();

  const json& gens = member(doc, "generators", "<root>");
  if (!gens.is_array()) fail("generators", "expected a list of matrices");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    inst.generators.push_back(parse_matrix(gens[k], inst.ambient_dim, "generators[" + std::to_string(k) + "]"));
  }

  const json& states = member(doc, "states", "<root>");
  if (!states.is_object()) fail("states", "expected an object of named states");
  for (const auto& [name, spec] : states.items()) {
    const std::string field = "states." + name;
    if (!spec.is_object()) fail(field, "expected an object");
    const json& type = member(spec, "type", field);
    StateSpec s;
    if (type == "density") {
      s.kind = StateSpec::Kind::Density;
      s.matrix = parse_matrix(member(spec, "matrix", field), inst.ambient_dim, field + ".matrix");
    } else if (type == "values") {
      s.kind = StateSpec::Kind::Values;
      s.vector = parse_vector(member(spec, "vector", field), field + ".vector");
    } else {
      fail(field + ".type", "expected \"density\" or \"values\"");
    }
    inst.states.emplace(name, std::move(s));
  }

  if (auto it = doc.find("dynamics"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) fail("dynamics", "expected an object");
    DynamicsSpec dyn;
    dyn.hamiltonian = parse_matrix(member(*it, "hamiltonian", "dynamics"), inst.ambient_dim, "dynamics.hamiltonian");
    dyn.beta = number(member(*it, "beta", "dynamics"), "dynamics.beta");
    inst.dynamics = std::move(dyn);
  }

  if (auto it = doc.find("tolerance"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) fail("tolerance", "expected an object");
    auto read = [&](const char* key, std::optional<double>& slot) {
      if (auto f = it->find(key); f != it->end()) slot = number(*f, std::string("tolerance.") + key);
    };
    read("rank_rel", inst.tolerance.rank_rel);
    read("eq_abs", inst.tolerance.eq_abs);
    read("psd_slack", inst.tolerance.psd_slack);
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["ambient_dim"] = inst.ambient_dim;
  doc["generators"] = json::array();
  for (const Matrix& g : inst.generators) doc["generators"].push_back(matrix_json(g));
  doc["states"] = json::object();
  for (const auto& [name, s] : inst.states) {
    if (s.kind == StateSpec::Kind::Density) {
      doc["states"][name] = {{"type", "density"}, {"matrix", matrix_json(s.matrix)}};
    } else {
      doc["states"][name] = {{"type", "values"}, {"vector", vector_json(s.vector)}};
    }
  }
  if (inst.dynamics) {
    doc["dynamics"] = {{"hamiltonian", matrix_json(inst.dynamics->hamiltonian)}, {"beta", inst.dynamics->beta}};
  }
  json tol = json::object();
  if (inst.tolerance.rank_rel) tol["rank_rel"] = *inst.tolerance.rank_rel;
  if (inst.tolerance.eq_abs) tol["eq_abs"] = *inst.tolerance.eq_abs;
  if (inst.tolerance.psd_slack) tol["psd_slack"] = *inst.tolerance.psd_slack;
  if (!tol.empty()) doc["tolerance"] = tol;
  return render_json(doc, NumberStyle::Exact);
}

Tolerance resolve_tolerance(const ToleranceSpec& file, const ToleranceSpec& overrides) {
  Tolerance tol;
  for (const ToleranceSpec* spec : {&file, &overrides}) {
    if (spec->rank_rel) tol.rank_rel = *spec->rank_rel;
    if (spec->eq_abs) tol.eq_abs = *spec->eq_abs;
    if (spec->psd_slack) tol.psd_slack = *spec->psd_slack;
  }
  tol.validate();
  return tol;
}

// ============================================================================
// Workspace
// ============================================================================

Workspace::Workspace(Instance inst, const ToleranceSpec& overrides, std::optional<double> beta_override,
                     Index max_ambient)
    : inst_(std::move(inst)), tol_(resolve_tolerance(inst_.tolerance, overrides)) {
  if (inst_.ambient_dim > max_ambient) {
    throw Error(ErrorCode::TooLarge, "ambient dimension " + std::to_string(inst_.ambient_dim) +
                                         " exceeds the analysis limit " + std::to_string(max_ambient));
  }
  if (beta_override && inst_.dynamics) inst_.dynamics->beta = *beta_override;
  algebra_ = generate(inst_.generators, inst_.ambient_dim, tol_);
}

PLF Workspace::state(const std::string& name) const {
  auto it = inst_.states.find(name);
  if (it == inst_.states.end()) throw Error(ErrorCode::UnknownState, "no state named '" + name + "'");
  const StateSpec& s = it->second;
  if (s.kind == StateSpec::Kind::Density) return plf_from_density(algebra_, s.matrix, tol_);
  if (s.vector.size() != algebra_->dim()) {
    throw Error(ErrorCode::ShapeMismatch, "state '" + name + "' has " + std::to_string(s.vector.size()) +
                                              " values, algebra dimension is " + std::to_string(algebra_->dim()));
  }
  return PLF(algebra_, s.vector);
}

Dynamics Workspace::dynamics() const {
  if (!inst_.dynamics) throw Error(ErrorCode::MissingDynamics, "instance has no dynamics section");
  return Dynamics::inner(algebra_, inst_.dynamics->hamiltonian, inst_.dynamics->beta, tol_);
}

}  // namespace ncl
