// Command line front end: info, decompose, derivative, kms, spinchain.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nclebesgue/commands.hpp"

namespace {

struct Flags {
  std::optional<double> tol_rank;
  std::optional<double> tol_eq;
  std::optional<double> tol_psd;
  std::optional<double> beta;
  std::uint64_t seed = 7;
  std::string output = "json";
};

ncl::CommandOptions options_from(const Flags& f) {
  ncl::CommandOptions o;
  o.tolerance.rank_rel = f.tol_rank;
  o.tolerance.eq_abs = f.tol_eq;
  o.tolerance.psd_slack = f.tol_psd;
  o.beta = f.beta;
  return o;
}

void emit(const ncl::Report& report, const std::string& format) {
  std::cout << (format == "text" ? ncl::render_text(report) : ncl::render_json(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lebesgue decomposition, Radon-Nikodym derivatives and KMS checks for matrix algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--tol-rank", flags.tol_rank, "relative rank cutoff");
  app.add_option("--tol-eq", flags.tol_eq, "residual bound for equality checks");
  app.add_option("--tol-psd", flags.tol_psd, "relative PSD slack");
  app.add_option("--beta", flags.beta, "inverse temperature override");
  app.add_option("--seed", flags.seed, "random seed (spinchain)");
  app.add_option("--output", flags.output, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string file, mu, lambda;
  auto* info = app.add_subcommand("info", "algebra and state summary");
  info->add_option("file", file, "instance file")->required();

  auto* decompose = app.add_subcommand("decompose", "Lebesgue decomposition of mu relative to lambda");
  decompose->add_option("file", file, "instance file")->required();
  decompose->add_option("--mu", mu, "state to decompose")->required();
  decompose->add_option("--lambda", lambda, "reference state")->required();

  auto* derivative = app.add_subcommand("derivative", "Radon-Nikodym derivative of mu relative to lambda");
  derivative->add_option("file", file, "instance file")->required();
  derivative->add_option("--mu", mu, "dominated state")->required();
  derivative->add_option("--lambda", lambda, "reference state")->required();

  auto* kms = app.add_subcommand("kms", "KMS and time-invariance checks of lambda");
  kms->add_option("file", file, "instance file")->required();
  kms->add_option("--lambda", lambda, "state to check")->required();

  int sites = 2;
  std::string coupling = "zz:1,x:0.5";
  std::string out_path;
  auto* spin = app.add_subcommand("spinchain", "write a spin-chain instance file");
  spin->add_option("--sites", sites, "number of sites L (at most 6)");
  spin->add_option("--coupling", coupling, "comma separated term:value pairs (xx yy zz x y z n)");
  spin->add_option("--out", out_path, "output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ncl::kExitInput;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (spin->parsed()) {
      const ncl::Instance inst = ncl::cmd_spinchain(sites, coupling, flags.beta.value_or(1.0), flags.seed);
      const std::string text = ncl::serialize_instance(inst);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw ncl::Error(ncl::ErrorCode::ParseError, out_path + ": cannot write");
        out << text;
      }
      return ncl::kExitPass;
    }

    const ncl::Instance inst = ncl::load_instance(file);
    const ncl::CommandOptions opts = options_from(flags);
    ncl::CommandResult result;
    if (info->parsed()) {
      result = ncl::cmd_info(inst, opts);
    } else if (decompose->parsed()) {
      result = ncl::cmd_decompose(inst, mu, lambda, opts);
    } else if (derivative->parsed()) {
      result = ncl::cmd_derivative(inst, mu, lambda, opts);
    } else {
      result = ncl::cmd_kms(inst, lambda, opts);
    }
    emit(result.report, flags.output);
    return result.exit_code;
  } catch (const ncl::Error& e) {
    emit(ncl::error_report(command, e), flags.output);
    return ncl::exit_code_for(e);
  }
}
