// Python bindings for the nclebesgue core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nclebesgue/commands.hpp"
#include "nclebesgue/gns.hpp"
#include "nclebesgue/kms.hpp"
#include "nclebesgue/lebesgue.hpp"
#include "nclebesgue/oracle_classical.hpp"
#include "nclebesgue/radon_nikodym.hpp"

namespace py = pybind11;
using namespace ncl;

// Algebras are shared as pointers to const; Python holds them through the
// mutable holder type and only ever sees const methods.
namespace pybind11::detail {
template <>
struct type_caster<AlgebraPtr> {
  using Holder = std::shared_ptr<CStarAlgebra>;
  PYBIND11_TYPE_CASTER(AlgebraPtr, const_name("Algebra"));

  bool load(handle src, bool convert) {
    make_caster<Holder> inner;
    if (!inner.load(src, convert)) return false;
    value = cast_op<Holder>(inner);
    return true;
  }
  static handle cast(const AlgebraPtr& src, return_value_policy policy, handle parent) {
    return make_caster<Holder>::cast(std::const_pointer_cast<CStarAlgebra>(src), policy, parent);
  }
};
}  // namespace pybind11::detail

namespace {

std::string category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Input: return "input";
    case ErrorCategory::Verdict: return "verdict";
    case ErrorCategory::Integrity: return "integrity";
  }
  return "unknown";
}

Tolerance make_tolerance(double rank_rel, double eq_abs, double psd_slack) {
  Tolerance t{rank_rel, eq_abs, psd_slack};
  t.validate();
  return t;
}

// Runs one CLI subcommand on instance text; errors become error reports as on the command line.
py::tuple run_command(const std::string& command, const std::string& instance_text, const std::string& mu,
                      const std::string& lambda, std::optional<double> rank_rel, std::optional<double> eq_abs,
                      std::optional<double> psd_slack, std::optional<double> beta, const std::string& output) {
  CommandOptions opts;
  opts.tolerance = {rank_rel, eq_abs, psd_slack};
  opts.beta = beta;
  CommandResult result;
  try {
    const Instance inst = parse_instance(instance_text);
    if (command == "info") {
      result = cmd_info(inst, opts);
    } else if (command == "decompose") {
      result = cmd_decompose(inst, mu, lambda, opts);
    } else if (command == "derivative") {
      result = cmd_derivative(inst, mu, lambda, opts);
    } else if (command == "kms") {
      result = cmd_kms(inst, lambda, opts);
    } else {
      throw py::value_error("unknown command '" + command + "'");
    }
  } catch (const Error& e) {
    result = {exit_code_for(e), error_report(command, e)};
  }
  const std::string text = output == "text" ? render_text(result.report) : render_json(result.report);
  return py::make_tuple(result.exit_code, text);
}

}  // namespace

PYBIND11_MODULE(_nclebesgue, m) {
  m.doc() = "Lebesgue decomposition and Radon-Nikodym derivatives of states on matrix algebras";

  // ==========================================================================
  // Errors
  // ==========================================================================

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() { return py::object(py::exception<Error>(m, "NclError", PyExc_RuntimeError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error_type.get_stored();
      py::object instance = type(e.what());
      instance.attr("code") = std::string(error_name(e.code()));
      instance.attr("category") = category_name(e.category());
      instance.attr("exit_code") = exit_code_for(e);
      PyErr_SetObject(type.ptr(), instance.ptr());
    }
  });

  // ==========================================================================
  // Tolerances and algebras
  // ==========================================================================

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init(&make_tolerance), py::arg("rank_rel") = 1e-9, py::arg("eq_abs") = 1e-9,
           py::arg("psd_slack") = 1e-9)
      .def_readwrite("rank_rel", &Tolerance::rank_rel)
      .def_readwrite("eq_abs", &Tolerance::eq_abs)
      .def_readwrite("psd_slack", &Tolerance::psd_slack)
      .def("validate", &Tolerance::validate)
      .def("__repr__", [](const Tolerance& t) {
        return "Tolerance(rank_rel=" + format_number(t.rank_rel) + ", eq_abs=" + format_number(t.eq_abs) +
               ", psd_slack=" + format_number(t.psd_slack) + ")";
      });

  py::class_<CStarAlgebra, std::shared_ptr<CStarAlgebra>>(m, "Algebra")
      .def_property_readonly("ambient_dim", &CStarAlgebra::ambient_dim)
      .def_property_readonly("dim", &CStarAlgebra::dim)
      .def_property_readonly("tolerance", &CStarAlgebra::tolerance)
      .def_property_readonly("basis", py::overload_cast<>(&CStarAlgebra::basis, py::const_))
      .def_property_readonly("unit_coords", &CStarAlgebra::unit_coords)
      .def("coords", &CStarAlgebra::coords, py::arg("a"))
      .def("element", &CStarAlgebra::element, py::arg("coords"))
      .def("contains", &CStarAlgebra::contains, py::arg("a"))
      .def("residual", &CStarAlgebra::residual, py::arg("a"))
      .def("__repr__", [](const CStarAlgebra& a) {
        return "Algebra(dim=" + std::to_string(a.dim()) + ", ambient_dim=" + std::to_string(a.ambient_dim()) + ")";
      });

  m.def(
      "generate",
      [](const std::vector<Matrix>& gens, Index n, const Tolerance& tol) { return generate(gens, n, tol); },
      py::arg("generators"), py::arg("n"), py::arg("tol") = Tolerance{});
  m.def("full_matrix_algebra", &full_matrix_algebra, py::arg("n"), py::arg("tol") = Tolerance{});
  m.def("diagonal_algebra", &diagonal_algebra, py::arg("n"), py::arg("tol") = Tolerance{});
  m.def("commutant", &commutant, py::arg("algebra"));
  m.def("double_commutant", &double_commutant, py::arg("algebra"));
  m.def("center", &center, py::arg("algebra"));
  m.def("same_span", &same_span, py::arg("a"), py::arg("b"));

  // ==========================================================================
  // Functionals
  // ==========================================================================

  py::class_<PLF>(m, "PLF")
      .def(py::init<AlgebraPtr, Vector>(), py::arg("algebra"), py::arg("values"))
      .def_static(
          "from_density",
          [](AlgebraPtr alg, const Matrix& rho, const Tolerance& tol) { return plf_from_density(alg, rho, tol); },
          py::arg("algebra"), py::arg("rho"), py::arg("tol") = Tolerance{})
      .def_static("zero", &PLF::zero, py::arg("algebra"))
      .def_property_readonly("algebra", &PLF::algebra_ptr)
      .def_property_readonly("values", &PLF::values)
      .def_property_readonly("gram", &PLF::gram)
      .def_property_readonly("norm", &PLF::norm)
      .def("density", &PLF::density)
      .def("__call__", [](const PLF& mu, const Matrix& a) { return evaluate(mu, a); }, py::arg("a"))
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * double())
      .def(double() * py::self);

  m.def("is_positive", &is_positive, py::arg("mu"), py::arg("tol") = Tolerance{});
  m.def("leq", &leq, py::arg("mu"), py::arg("nu"), py::arg("tol") = Tolerance{});

  // ==========================================================================
  // Lebesgue decomposition
  // ==========================================================================

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("mu_ac", &Decomposition::mu_ac)
      .def_readonly("mu_s", &Decomposition::mu_s)
      .def_readonly("lambda_", &Decomposition::lambda)
      .def_readonly("gram_ac", &Decomposition::gram_ac)
      .def_property_readonly("kernel_inclusion", [](const Decomposition& d) { return d.diagnostics.kernel_inclusion; })
      .def_property_readonly("parallel_sum_norm", [](const Decomposition& d) { return d.diagnostics.parallel_sum_norm; })
      .def_property_readonly("short_residual", [](const Decomposition& d) { return d.diagnostics.short_residual; });

  py::class_<AcVerdict>(m, "AcVerdict")
      .def_readonly("absolutely_continuous", &AcVerdict::absolutely_continuous)
      .def_readonly("bound", &AcVerdict::bound)
      .def("__bool__", [](const AcVerdict& v) { return v.absolutely_continuous; });

  m.def("decompose", &decompose, py::arg("mu"), py::arg("lambda_"), py::arg("tol") = Tolerance{});
  m.def("is_absolutely_continuous", &is_absolutely_continuous, py::arg("mu"), py::arg("lambda_"),
        py::arg("tol") = Tolerance{});
  m.def("is_singular", &is_singular, py::arg("mu"), py::arg("lambda_"), py::arg("tol") = Tolerance{});
  m.def(
      "witness_sequence",
      [](const PLF& mu, const PLF& lambda, int n_terms, const Tolerance& tol) {
        std::vector<std::pair<PLF, double>> out;
        for (WitnessTerm& t : witness_sequence(mu, lambda, n_terms, tol)) out.emplace_back(std::move(t.mu), t.bound);
        return out;
      },
      py::arg("mu"), py::arg("lambda_"), py::arg("n_terms"), py::arg("tol") = Tolerance{});

  // ==========================================================================
  // GNS and Radon-Nikodym derivatives
  // ==========================================================================

  py::class_<GnsData>(m, "GnsData")
      .def_readonly("algebra", &GnsData::algebra)
      .def_readonly("dim", &GnsData::dim)
      .def_readonly("quotient", &GnsData::quotient)
      .def_readonly("gram_spectrum", &GnsData::gram_spectrum)
      .def_readonly("rep", &GnsData::rep)
      .def_readonly("cyclic", &GnsData::cyclic)
      .def_readonly("linf", &GnsData::linf)
      .def_readonly("linf_commutant", &GnsData::linf_commutant)
      .def("represent", &GnsData::represent, py::arg("coords"))
      .def("vector_of", &GnsData::vector_of, py::arg("coords"));

  py::class_<GnsResiduals>(m, "GnsResiduals")
      .def_readonly("homomorphism", &GnsResiduals::homomorphism)
      .def_readonly("adjoint", &GnsResiduals::adjoint)
      .def_readonly("cyclicity", &GnsResiduals::cyclicity)
      .def_readonly("state", &GnsResiduals::state);

  m.def("gns", &gns, py::arg("lambda_"), py::arg("tol") = Tolerance{});
  m.def("gns_residuals", &gns_residuals, py::arg("data"));
  m.def("transfer", &transfer, py::arg("data"), py::arg("mu"), py::arg("tol") = Tolerance{});

  py::class_<Derivative>(m, "Derivative")
      .def_readonly("d", &Derivative::d)
      .def_readonly("sqrt_d", &Derivative::sqrt_d)
      .def_readonly("norm_bound", &Derivative::norm_bound)
      .def_readonly("spectrum", &Derivative::spectrum)
      .def_readonly("solve_residual", &Derivative::solve_residual);

  m.def("derivative", &derivative, py::arg("mu"), py::arg("lambda_"), py::arg("data"), py::arg("tol") = Tolerance{});
  m.def("reconstruct", &reconstruct, py::arg("derivative"), py::arg("data"));
  m.def("affiliation_residual", &affiliation_residual, py::arg("derivative"), py::arg("data"));
  m.def("resolvent_distance", &resolvent_distance, py::arg("d1"), py::arg("d2"));

  // ==========================================================================
  // Dynamics, KMS states and modular theory
  // ==========================================================================

  py::class_<Dynamics>(m, "Dynamics")
      .def_static("inner", &Dynamics::inner, py::arg("algebra"), py::arg("h"), py::arg("beta"),
                  py::arg("tol") = Tolerance{})
      .def_property_readonly("hamiltonian", &Dynamics::hamiltonian)
      .def_property_readonly("beta", &Dynamics::beta)
      .def("sigma", &Dynamics::sigma, py::arg("z"), py::arg("a"));

  m.def("gibbs", &gibbs, py::arg("algebra"), py::arg("h"), py::arg("beta"), py::arg("tol") = Tolerance{});
  m.def("kms_residual", &kms_residual, py::arg("lambda_"), py::arg("dynamics"));
  m.def("is_kms", &is_kms, py::arg("lambda_"), py::arg("dynamics"), py::arg("tol") = Tolerance{});
  m.def("time_invariance_residual", &time_invariance_residual, py::arg("lambda_"), py::arg("dynamics"),
        py::arg("t_samples"));
  m.def("gibbs_distance", &gibbs_distance, py::arg("lambda_"), py::arg("dynamics"), py::arg("tol") = Tolerance{});

  py::class_<ModularData>(m, "ModularData")
      .def_readonly("algebra", &ModularData::algebra)
      .def_readonly("eta", &ModularData::eta)
      .def_readonly("nabla", &ModularData::nabla)
      .def_readonly("j_unitary", &ModularData::j_unitary)
      .def_readonly("hamiltonian", &ModularData::hamiltonian)
      .def("apply_s", &ModularData::apply_s, py::arg("x"))
      .def("apply_j", &ModularData::apply_j, py::arg("y"))
      .def("vector_state", &ModularData::vector_state)
      .def("dynamics", &ModularData::dynamics, py::arg("tol") = Tolerance{});

  py::class_<ModularResiduals>(m, "ModularResiduals")
      .def_readonly("s_relation", &ModularResiduals::s_relation)
      .def_readonly("polar", &ModularResiduals::polar)
      .def_readonly("commutant", &ModularResiduals::commutant)
      .def_readonly("invariance", &ModularResiduals::invariance)
      .def_readonly("kms", &ModularResiduals::kms);

  m.def("modular_operator", &modular_operator, py::arg("algebra"), py::arg("eta"), py::arg("tol") = Tolerance{});
  m.def("modular_residuals", &modular_residuals, py::arg("data"), py::arg("tol") = Tolerance{});

  // ==========================================================================
  // Classical oracle
  // ==========================================================================

  py::class_<ClassicalDecomposition>(m, "ClassicalDecomposition")
      .def_readonly("ac", &ClassicalDecomposition::ac)
      .def_readonly("s", &ClassicalDecomposition::s)
      .def_readonly("density", &ClassicalDecomposition::density)
      .def_readonly("support", &ClassicalDecomposition::support);

  py::class_<CrossValidation>(m, "CrossValidation")
      .def_readonly("ac_error", &CrossValidation::ac_error)
      .def_readonly("s_error", &CrossValidation::s_error)
      .def_readonly("density_error", &CrossValidation::density_error)
      .def_readonly("gns_dim", &CrossValidation::gns_dim)
      .def_readonly("support_size", &CrossValidation::support_size)
      .def_readonly("passed", &CrossValidation::passed);

  m.def(
      "classical_decompose",
      [](const RealVector& mu, const RealVector& lambda) {
        return classical_decompose(FiniteMeasure(mu), FiniteMeasure(lambda));
      },
      py::arg("mu"), py::arg("lambda_"));
  m.def(
      "cross_validate",
      [](const RealVector& mu, const RealVector& lambda, const Tolerance& tol, double threshold) {
        return cross_validate(FiniteMeasure(mu), FiniteMeasure(lambda), tol, threshold);
      },
      py::arg("mu"), py::arg("lambda_"), py::arg("tol") = Tolerance{}, py::arg("threshold") = 1e-10);
  m.def(
      "embed_diagonal", [](const RealVector& w, const Tolerance& tol) { return embed_diagonal(FiniteMeasure(w), tol); },
      py::arg("weights"), py::arg("tol") = Tolerance{});

  // ==========================================================================
  // Command layer
  // ==========================================================================

  m.def("run_command", &run_command, py::arg("command"), py::arg("instance"), py::arg("mu") = "",
        py::arg("lambda_") = "", py::arg("rank_rel") = py::none(), py::arg("eq_abs") = py::none(),
        py::arg("psd_slack") = py::none(), py::arg("beta") = py::none(), py::arg("output") = "json");
  m.def(
      "spinchain",
      [](int sites, const std::string& coupling, double beta, std::uint64_t seed) {
        return serialize_instance(cmd_spinchain(sites, coupling, beta, seed));
      },
      py::arg("sites") = 2, py::arg("coupling") = "zz:1,x:0.5", py::arg("beta") = 1.0, py::arg("seed") = 7);
  m.def("spin_hamiltonian", &spin_hamiltonian, py::arg("sites"), py::arg("coupling"));
}
