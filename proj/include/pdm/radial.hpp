#ifndef PDM_RADIAL_HPP
#define PDM_RADIAL_HPP

#include "pdm/grid.hpp"
#include "pdm/spectrum.hpp"

namespace pdm {

/// Bound states by outward RK4 integration of the radial equation
///   R'' = [l_d(l_d+1)/r^2 + m (Vt - E)] R + (m'/m) [R' - (d-1) R / (2r)]
/// from r_min with R = 0, R' = 1 (even-parity d = 1 uses R = 1, R' = 0),
/// locating eigenvalues by node counting plus bisection on E until the
/// matching value R(r_max) crosses zero. The march runs on a graded mesh
/// (union of a uniform grid, the pullback of a uniform PCT grid, and a
/// geometric start near r_min) so both plain and strongly mass-compressed
/// problems are resolved.
///
/// Levels whose transition is not found below the continuum threshold
/// W(r_max) are reported in Spectrum::missing rather than raising.
Spectrum solve_shooting(const RadialProblem& p, int n_max);

/// Bound states of the transformed one-dimensional problem
///   -d^2/dZ^2 + l_d(l_d+1)/(r(Z)^2 m) + V - U_d [+ ordering terms]
/// on a uniform Z grid: symmetric tridiagonal finite differences with
/// Dirichlet ends (Neumann at the inner end for even-parity d = 1),
/// eigenvalues by Sturm-sequence bisection to 1e-12 absolute, node counts
/// from inverse-iteration eigenvectors.
///
/// The transformed potential always uses the plain radial second derivative
/// of the mass; with laplacian_mode = full_laplacian the two solvers
/// therefore differ by the computable term c_lap (d-1) m'/(r m^2).
Spectrum solve_fd_z(const RadialProblem& p, int n_max);

/// Normalized radial eigenfunction R_{n_r}(r) on a uniform grid
/// (trapezoid norm 1, exactly n_r interior nodes), computed by integrating
/// at the converged shooting eigenvalue.
GridFunction eigenfunction(const RadialProblem& p, int n_r);

} // namespace pdm

#endif
