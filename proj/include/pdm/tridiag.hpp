#ifndef PDM_TRIDIAG_HPP
#define PDM_TRIDIAG_HPP

#include <utility>
#include <vector>

namespace pdm::num {

/// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
/// rows i-1 and i (off[0] is unused).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

std::pair<double, double> gershgorin_bounds(const Tridiagonal& t);

/// Number of eigenvalues strictly below x (Sturm sequence count).
int count_below(const Tridiagonal& t, double x);

/// k-th smallest eigenvalue (k is 0-based) by bisection on the Sturm count,
/// to the given absolute tolerance.
double eigenvalue(const Tridiagonal& t, int k, double abs_tol);

/// Eigenvector for an eigenvalue estimate, by inverse iteration with a
/// pivoted tridiagonal solve; normalized to unit Euclidean norm with the
/// first significant component positive. Eigenvalues of a Jacobi matrix
/// with nonzero off-diagonals are simple, so no orthogonalization is needed.
std::vector<double> eigenvector(const Tridiagonal& t, double lambda);

} // namespace pdm::num

#endif
