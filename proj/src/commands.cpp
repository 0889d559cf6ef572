#include "nclebesgue/commands.hpp"

#include <cmath>

#include "nclebesgue/gns.hpp"
#include "nclebesgue/lebesgue.hpp"
#include "nclebesgue/radon_nikodym.hpp"

namespace ncl {

namespace {

Report tolerance_report(const Tolerance& tol) {
  return {{"eq_abs", tol.eq_abs}, {"psd_slack", tol.psd_slack}, {"rank_rel", tol.rank_rel}};
}

Report functional_report(const PLF& mu) {
  return {{"values", vector_report(mu.values())},
          {"density", matrix_report(hermitian_part(mu.density()))},
          {"norm", mu.norm()}};
}

Report echo(const std::string& name, const Workspace& ws) {
  return {{"name", name}, {"tolerance", tolerance_report(ws.tolerance())}};
}

PLF positive_state(const Workspace& ws, const std::string& name) {
  PLF s = ws.state(name);
  if (!is_positive(s, ws.tolerance())) throw Error(ErrorCode::NotPositive, "state '" + name + "' is not positive");
  return s;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Verdict: return kExitVerdict;
    case ErrorCategory::Integrity: return kExitIntegrity;
    case ErrorCategory::Input: break;
  }
  return kExitInput;
}

Report error_report(const std::string& command, const Error& e) {
  return {{"command", {{"name", command}}},
          {"error", {{"code", std::string(error_name(e.code())), }, {"message", e.what()}}},
          {"status", "error"}};
}

// ============================================================================
// Commands
// ============================================================================

CommandResult cmd_info(const Instance& inst, const CommandOptions& opts) {
  const Workspace ws(inst, opts.tolerance, opts.beta);
  const CStarAlgebra& alg = *ws.algebra();
  CommandResult out;
  Report& r = out.report;
  r["command"] = echo("info", ws);
  const AlgebraPtr comm = commutant(alg);
  const AlgebraPtr cent = center(alg);
  r["algebra"] = {{"ambient_dim", alg.ambient_dim()},
                  {"dim", alg.dim()},
                  {"commutant_dim", comm->dim()},
                  {"center_dim", cent->dim()}};

  bool all_positive = true;
  bool input_error = false;
  r["states"] = Report::object();
  for (const auto& [name, spec] : inst.states) {
    Report s;
    try {
      const PLF mu = ws.state(name);
      const bool positive = is_positive(mu, ws.tolerance());
      s["positive"] = positive;
      s["norm"] = mu.norm();
      if (positive) {
        const Index ideal = isotropic_ideal(mu, ws.tolerance()).dim();
        s["isotropic_dim"] = ideal;
        s["faithful"] = ideal == 0;
      }
      all_positive = all_positive && positive;
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::Input) throw;
      s["error"] = std::string(error_name(e.code()));
      input_error = true;
    }
    r["states"][name] = s;
  }
  out.exit_code = input_error ? kExitInput : (all_positive ? kExitPass : kExitVerdict);
  r["status"] = out.exit_code == kExitPass ? "pass" : "fail";
  return out;
}

CommandResult cmd_decompose(const Instance& inst, const std::string& mu_name, const std::string& lambda_name,
                            const CommandOptions& opts) {
  const Workspace ws(inst, opts.tolerance, opts.beta);
  const Tolerance& tol = ws.tolerance();
  const PLF mu = positive_state(ws, mu_name);
  const PLF lambda = positive_state(ws, lambda_name);

  CommandResult out;
  Report& r = out.report;
  r["command"] = echo("decompose", ws);
  r["command"]["mu"] = mu_name;
  r["command"]["lambda"] = lambda_name;

  const Decomposition dec = decompose(mu, lambda, tol);
  r["mu_ac"] = functional_report(dec.mu_ac);
  r["mu_s"] = functional_report(dec.mu_s);
  r["diagnostics"] = {{"kernel_inclusion", dec.diagnostics.kernel_inclusion},
                      {"parallel_sum_norm", dec.diagnostics.parallel_sum_norm},
                      {"short_residual", dec.diagnostics.short_residual}};
  const AcVerdict ac = is_absolutely_continuous(mu, lambda, tol);
  r["verdicts"] = {{"absolutely_continuous", ac.absolutely_continuous}, {"singular", is_singular(mu, lambda, tol)}};
  if (ac.absolutely_continuous) r["verdicts"]["ac_bound"] = ac.bound;

  bool kms = false;
  if (ws.has_dynamics()) {
    const Dynamics dyn = ws.dynamics();
    const double residual = kms_residual(lambda, dyn);
    kms = is_kms(lambda, dyn, tol);
    r["kms"] = {{"beta", dyn.beta()},
                {"residual", residual},
                {"is_kms", kms},
                {"note", kms ? "lambda is KMS, so the weak* and GK decompositions coincide"
                             : "lambda is not KMS; the output is the GK decomposition only"}};
  }
  r["label"] = kms ? "weak* decomposition" : "GK decomposition";
  r["status"] = "pass";
  return out;
}

CommandResult cmd_derivative(const Instance& inst, const std::string& mu_name, const std::string& lambda_name,
                             const CommandOptions& opts) {
  const Workspace ws(inst, opts.tolerance, opts.beta);
  const Tolerance& tol = ws.tolerance();
  const PLF mu = positive_state(ws, mu_name);
  const PLF lambda = positive_state(ws, lambda_name);

  CommandResult out;
  Report& r = out.report;
  r["command"] = echo("derivative", ws);
  r["command"]["mu"] = mu_name;
  r["command"]["lambda"] = lambda_name;

  const GnsData data = gns(lambda, tol);
  const Derivative deriv = derivative(mu, lambda, data, tol);
  const PLF rebuilt = reconstruct(deriv, data);
  r["gns_dim"] = data.dim;
  r["spectrum"] = real_vector_report(deriv.spectrum);
  r["norm_bound"] = deriv.norm_bound;
  r["affiliation_residual"] = affiliation_residual(deriv, data);
  r["reconstruction_residual"] =
      data.degenerate() ? 0.0 : (rebuilt.values() - mu.values()).cwiseAbs().maxCoeff();
  r["form_residual"] = data.degenerate()
                           ? 0.0
                           : (reconstruct_linear(deriv, data).values() - rebuilt.values()).cwiseAbs().maxCoeff();
  r["domain_clause"] = "automatic";
  r["status"] = "pass";
  return out;
}

CommandResult cmd_kms(const Instance& inst, const std::string& lambda_name, const CommandOptions& opts) {
  const Workspace ws(inst, opts.tolerance, opts.beta);
  const Tolerance& tol = ws.tolerance();
  const Dynamics dyn = ws.dynamics();
  const PLF lambda = positive_state(ws, lambda_name);

  CommandResult out;
  Report& r = out.report;
  r["command"] = echo("kms", ws);
  r["command"]["lambda"] = lambda_name;

  const std::vector<double> times{0.5, 1.0, 2.5};
  const double residual = kms_residual(lambda, dyn);
  const double invariance = time_invariance_residual(lambda, dyn, times);
  const double scale = std::max(lambda.norm(), 1e-300);
  const bool kms = residual <= tol.eq_abs * scale;
  const bool invariant = invariance <= tol.eq_abs * scale;
  r["beta"] = dyn.beta();
  r["kms_residual"] = residual;
  r["is_kms"] = kms;
  r["time_samples"] = times;
  r["time_invariance_residual"] = invariance;
  r["time_invariant"] = invariant;
  r["gibbs_distance"] = gibbs_distance(lambda, dyn, tol);

  const Dynamics frozen = Dynamics::inner(ws.algebra(), dyn.hamiltonian(), 0.0, tol);
  const double trace = kms_residual(lambda, frozen);
  r["trace"] = {{"residual", trace}, {"is_trace", trace <= tol.eq_abs * scale}};
  if (dyn.beta() == 0.0) r["trace"]["note"] = "at beta = 0 the KMS condition is the trace property";

  out.exit_code = kms && invariant ? kExitPass : kExitVerdict;
  r["status"] = out.exit_code == kExitPass ? "pass" : "fail";
  return out;
}

}  // namespace ncl
