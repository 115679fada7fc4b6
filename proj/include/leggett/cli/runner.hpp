#pragma once

#include "leggett/cli/output.hpp"
#include "leggett/cli/run_config.hpp"
#include "leggett/studies.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace leggett::cli {

/// Columns: index, alpha, phi, L, f_min_corrected, f_min_analytic,
/// bound_used, chsh_B, margin, violated, starts, seed.
CsvTable sweep_table(const std::vector<SweepRecord>& records);

/// Runs one command. The one-line JSON summary goes to out, diagnostics to
/// err. Returns 0 on success, 2 for argument errors and 1 when a numerical
/// invariant fails (oracle certification, search convergence).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration and returns the summary line.
std::string execute(const RunConfig& config);

} // namespace leggett::cli
