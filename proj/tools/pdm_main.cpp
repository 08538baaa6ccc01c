// Command-line front end: config-driven solvers and verifiers with CSV output.

#include "pdm/commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Position-dependent-mass Schrodinger toolkit (hbar = 2 m0 = 1 units)"};
    app.require_subcommand(1);

    std::string config, out;
    pdm::cli::SolveOptions solve_opts;
    pdm::cli::EffpotOptions effpot_opts;
    pdm::cli::PctOptions pct_opts;
    double ref_l = 0.0;

    CLI::App* solve = app.add_subcommand("solve", "Solve a radial bound-state problem");
    solve->add_option("config", config, "problem config file")->required();
    solve->add_option("--solver", solve_opts.solver, "fd | shoot | both")->default_val("both");
    solve->add_option("--out", solve_opts.out, "CSV output path (default stdout)");

    CLI::App* effpot = app.add_subcommand("effpot", "Tabulate effective potentials per ordering");
    effpot->add_option("config", config, "problem config file")->required();
    effpot->add_option("--ordering", effpot_opts.orderings,
                       "ordering name or custom:<alpha>,<beta> (repeatable)");
    effpot->add_option("--out", effpot_opts.out, "CSV output path (default stdout)");

    CLI::App* pct = app.add_subcommand("pct", "Map a reference model through the mass profile");
    pct->add_option("config", config, "problem config file")->required();
    pct->add_option("--reference", pct_opts.reference, "oscillator:k=<val> | coulomb:e2=<val>")
        ->required();
    CLI::Option* refl =
        pct->add_option("--ref-L", ref_l, "reference angular momentum (upsilon = -2 case only)");
    pct->add_option("--out", pct_opts.out,
                    "CSV output path; the mapping table lands at <out>.mapping.csv");

    CLI::App* verify = app.add_subcommand("verify-operator", "Operator identity and order checks");
    verify->add_option("config", config, "problem config file")->required();
    verify->add_option("--out", out, "CSV output path (default stdout)");

    CLI::App* orderings = app.add_subcommand("orderings", "List the named ordering catalog");
    orderings->add_option("--out", out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems are config-class errors
    }

    if (solve->parsed()) return pdm::cli::run_solve(config, solve_opts);
    if (effpot->parsed()) return pdm::cli::run_effpot(config, effpot_opts);
    if (pct->parsed()) {
        if (refl->count() > 0) pct_opts.ref_l = ref_l;
        return pdm::cli::run_pct(config, pct_opts);
    }
    if (verify->parsed()) return pdm::cli::run_verify_operator(config, {out});
    if (orderings->parsed()) return pdm::cli::run_orderings(out);
    return 2;
}
