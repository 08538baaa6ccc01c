#ifndef PDM_COMMANDS_HPP
#define PDM_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

namespace pdm::cli {

// Each command loads its config, runs, and writes CSV to `out` (stdout when
// empty). Exit codes: 0 success, 2 config problem, 3 solver failure;
// diagnostics go to stderr.

struct SolveOptions {
    std::string solver = "both"; // fd | shoot | both
    std::string out;
};
int run_solve(const std::string& config_path, const SolveOptions& opts);

struct EffpotOptions {
    std::vector<std::string> orderings; // empty: use the config ordering
    std::string out;
};
int run_effpot(const std::string& config_path, const EffpotOptions& opts);

struct PctOptions {
    std::string reference; // "oscillator:k=1" or "coulomb:e2=2"
    std::optional<double> ref_l;
    std::string out; // the mapping table lands next to it as <out>.mapping.csv
};
int run_pct(const std::string& config_path, const PctOptions& opts);

struct VerifyOperatorOptions {
    std::string out;
};
int run_verify_operator(const std::string& config_path, const VerifyOperatorOptions& opts);

int run_orderings(const std::string& out);

} // namespace pdm::cli

#endif
