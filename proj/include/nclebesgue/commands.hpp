#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nclebesgue/instance.hpp"
#include "nclebesgue/report.hpp"

namespace ncl {

/// Exit codes of the command line front end.
enum ExitCode : int { kExitPass = 0, kExitVerdict = 1, kExitInput = 2, kExitIntegrity = 3 };

int exit_code_for(const Error& e);

struct CommandOptions {
  ToleranceSpec tolerance;
  std::optional<double> beta;
};

struct CommandResult {
  int exit_code = kExitPass;
  Report report;
};

CommandResult cmd_info(const Instance& inst, const CommandOptions& opts);
CommandResult cmd_decompose(const Instance& inst, const std::string& mu, const std::string& lambda,
                            const CommandOptions& opts);
CommandResult cmd_derivative(const Instance& inst, const std::string& mu, const std::string& lambda,
                             const CommandOptions& opts);
CommandResult cmd_kms(const Instance& inst, const std::string& lambda, const CommandOptions& opts);

/// Error report with the code name and message.
Report error_report(const std::string& command, const Error& e);

// ============================================================================
// Spin chains
// ============================================================================

/// Comma-separated term:value pairs. Nearest-neighbour terms xx, yy, zz;
/// on-site terms x, y, z and n = (1 − Z)/2. Example: "zz:1,x:0.5".
Matrix spin_hamiltonian(int sites, const std::string& coupling);

/// Instance on (C²)^⊗L with generators X_i, Z_i, dynamics (h, β), the Gibbs
/// state "lambda" and "mu" = 0.8 lambda + 0.2 |ψ⟩⟨ψ| for a seeded random ψ.
/// Throws TooLarge for L > 6.
Instance cmd_spinchain(int sites, const std::string& coupling, double beta, std::uint64_t seed);

}  // namespace ncl
