#ifndef PDM_OPERATORS_HPP
#define PDM_OPERATORS_HPP

#include "pdm/grid.hpp"
#include "pdm/ordering.hpp"
#include "pdm/profiles.hpp"

#include <vector>

namespace pdm {

/// Grid samples of the local momentum scaling F = 1/sqrt(m) (positive
/// branch) and of G = F'/2, evaluated from the analytic mass derivatives.
struct ScalingPair {
    UniformGrid grid;
    std::vector<double> f;
    std::vector<double> g;
};

/// Throws NonPositiveMassError if the mass is not positive on the grid.
ScalingPair scaling_pair(const MassProfile& m, const UniformGrid& grid);

/// Discrete action of the pseudo-momentum operator
///   Pi psi = -i (F psi' + (F'/2) psi),
/// realized in the symmetric splitting -i/2 [F D psi + D(F psi)] so that the
/// discrete operator is Hermitian up to boundary terms (D is the
/// second-order first-derivative stencil). The splitting agrees with the
/// direct F psi' + G psi form to O(h^2).
GridFunction apply_pi(const ScalingPair& sp, const GridFunction& psi);

/// Closed form of Pi^2 in one dimension:
///   -(1/m) psi'' + (m'/m^2) psi' + [(1/4) m''/m^2 - (7/16) m'^2/m^3] psi.
GridFunction apply_pi_squared(const MassProfile& m, const GridFunction& psi);

/// Recast kinetic operator for an arbitrary ordering:
///   -(1/m) psi'' + (m'/m^2) psi' + [c_lap m''/m^2 - c_grad m'^2/m^3] psi.
/// For the mm ordering this takes the same code path as apply_pi_squared.
GridFunction apply_von_roos_kinetic(const OrderingParameters& o, const MassProfile& m,
                                    const GridFunction& psi);

/// Sequentially applied factorized Hamiltonian
///   -m^{-1/4} D [ m^{-1/2} D ( m^{-1/4} psi ) ] + V psi.
GridFunction apply_factorized(const MassProfile& m, const PotentialProfile& V,
                              const GridFunction& psi);

struct HermiticityResult {
    double defect = 0.0; // |<Pi phi, psi> - <phi, Pi psi>|
    bool boundary_warning = false;
};

/// Hermiticity defect under the trapezoid inner product. Warns (and flags)
/// when either function carries more than 1e-8 of its peak amplitude at the
/// grid endpoints, where the compact-support assumption breaks.
HermiticityResult hermiticity_defect(const ScalingPair& sp, const GridFunction& phi,
                                     const GridFunction& psi);

} // namespace pdm

#endif
