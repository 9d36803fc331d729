#pragma once

#include <ostream>

namespace cyclecert::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_error = 2,
};

/// Default tolerance (eps_abs and eps_rel) when --tol is not given.
inline constexpr const char* kToleranceEnv = "CYCLECERT_TOL";

/// Subcommands: check, fuzz, run, render. Never throws; every failure maps
/// to an exit code with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclecert::cli
