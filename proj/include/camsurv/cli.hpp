#pragma once

#include <string>
#include <vector>

#include "camsurv/sim.hpp"

namespace camsurv {

// Entry point behind main(): parses argv, dispatches to the run / compare /
// bench subcommands, and maps errors to exit codes (0 success, 2 bad
// configuration, 3 runtime failure). Diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

// Formatting helpers shared with the tests.

// Per-step table: step, controller, dash-joined camera state, then per-target
// true-cell and observation columns; trailing comment lines carry the per-step
// observed counts and the conflict count.
std::string run_record_tsv(const RunRecord& record, const Scenario& sc);

// Seed tokens accept single integers and inclusive ranges like "3..12".
std::vector<std::uint64_t> expand_seed_tokens(const std::vector<std::string>& tokens);

// Writes via a temp file in the same directory plus an atomic rename.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace camsurv
