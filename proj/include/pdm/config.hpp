#ifndef PDM_CONFIG_HPP
#define PDM_CONFIG_HPP

#include "pdm/spectrum.hpp"

#include <optional>
#include <string>

namespace pdm::cli {

/// Problem description parsed from an INI-style config file with sections
/// [mass], [potential], [problem], [solver]. Unknown sections or keys are
/// rejected; [mass] is mandatory, [potential] is enforced per command.
struct ProblemConfig {
    explicit ProblemConfig(MassProfile m) : mass(std::move(m)) {}

    MassProfile mass;
    std::optional<PotentialProfile> potential;

    int dimension = 3;
    int ell = 0;
    Parity parity = Parity::none;
    OrderingParameters ordering = find_ordering("mm");
    LaplacianMode laplacian_mode = LaplacianMode::literal_radial;

    double r_min = 1e-6;
    double r_max = 20.0;
    std::size_t grid_n = 2000;
    int n_max = 3;
    double e_tol = 1e-10;

    /// Assembles the radial problem; throws ConfigError if [potential] is
    /// missing.
    RadialProblem to_problem() const;
};

ProblemConfig load_config(const std::string& path);

/// Parse config text directly (origin names the source in diagnostics).
ProblemConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace pdm::cli

#endif
