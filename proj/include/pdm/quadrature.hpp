#ifndef PDM_QUADRATURE_HPP
#define PDM_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace pdm::num {

/// Adaptive Simpson integration of f over [a, b] to the given absolute
/// tolerance (with a recursion depth cap).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Local cubic Lagrange interpolation through the 4 nodes nearest to x.
/// xs must be strictly increasing; x is clamped to [xs.front(), xs.back()].
double interp_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double x);

/// Trapezoid integral of y over a (possibly non-uniform) strictly
/// increasing abscissa vector.
double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace pdm::num

#endif
