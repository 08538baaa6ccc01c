#ifndef PDM_SPECTRUM_HPP
#define PDM_SPECTRUM_HPP

#include "pdm/ordering.hpp"
#include "pdm/profiles.hpp"

#include <string>
#include <vector>

namespace pdm {

/// Parity sector for one-dimensional (d = 1) problems on the full line,
/// solved on the half line via l_d = -1 (even) or 0 (odd).
enum class Parity { none, even, odd };

/// Dimension-shifted angular momentum l + (d-3)/2, valid for d >= 2.
double l_d(int ell, int d);

/// d = 1 substitution rule: -1 for even parity, 0 for odd.
double l_d(Parity parity);

/// Full statement of a d-dimensional radial bound-state problem in
/// hbar = 2 m0 = 1 units.
struct RadialProblem {
    RadialProblem(MassProfile mass_profile, PotentialProfile potential_profile)
        : mass(std::move(mass_profile)), potential(std::move(potential_profile)) {}

    int dimension = 3;
    int ell = 0;                  // ignored when dimension == 1
    Parity parity = Parity::none; // required when dimension == 1
    MassProfile mass;
    PotentialProfile potential;
    OrderingParameters ordering = find_ordering("mm");
    LaplacianMode laplacian_mode = LaplacianMode::literal_radial;
    double r_min = 1e-6;
    double r_max = 20.0;
    std::size_t grid_n = 2000;
    double energy_tol = 1e-10; // shooting bisection, relative

    double effective_l() const;
    void validate() const; // throws on inconsistent settings
};

enum class SolverKind { shooting, fd_z, predicted };

std::string solver_name(SolverKind s);

struct SpectrumEntry {
    int n_r = 0;
    double energy = 0.0;
    int node_count = 0;
    double est_error = 0.0; // NaN when no estimate is available
    bool reliable = true;
};

struct MissingLevel {
    int n_r = 0;
    std::string reason;
};

/// Bound-state energies indexed by the radial quantum number; strictly
/// increasing in energy, node count equal to n_r.
struct Spectrum {
    SolverKind solver = SolverKind::shooting;
    std::vector<SpectrumEntry> entries;
    std::vector<MissingLevel> missing;

    const SpectrumEntry* find(int n_r) const;
};

} // namespace pdm

#endif
