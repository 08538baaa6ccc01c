#ifndef PDM_ORDERING_HPP
#define PDM_ORDERING_HPP

#include "pdm/profiles.hpp"
#include "pdm/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pdm {

/// Kinetic-operator ambiguity parameters (alpha, beta, gamma) subject to
/// alpha + beta + gamma = -1. Values constructed from rational inputs carry
/// an exact representation alongside the doubles.
struct OrderingParameters {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = -1.0;
    std::string name; // empty when unnamed
    std::optional<std::array<Rational, 3>> exact;

    bool is_exact() const { return exact.has_value(); }
};

/// Coefficients of the two mass-derivative terms in the recast effective
/// potential: Vt = c_lap * m''/m^2 - c_grad * m'^2/m^3 + V with
/// c_lap = (1+beta)/2 and c_grad = alpha(alpha+beta+1) + beta + 1.
struct KineticCoefficients {
    double c_lap = 0.5;
    double c_grad = 1.0;
    std::optional<std::array<Rational, 2>> exact;
};

/// gamma is forced to -1 - alpha - beta, so the constraint holds by
/// construction; exact whenever the inputs convert exactly.
OrderingParameters make_ordering(double alpha, double beta, std::string name = {});
OrderingParameters make_ordering(const Rational& alpha, const Rational& beta, std::string name = {});

/// The named orderings: gora_williams, ben_daniel_duke, zhu_kroemer,
/// li_kuhn, and mm (beta = -1/2, alpha = gamma = -1/4).
const std::vector<OrderingParameters>& ordering_catalog();

/// Catalog lookup by name, or "custom:<alpha>,<beta>" with rational or
/// decimal components. Throws std::invalid_argument on unknown names.
OrderingParameters find_ordering(const std::string& spec);

KineticCoefficients kinetic_coefficients(const OrderingParameters& o);

/// Inverts the coefficient matching: beta = 2 c_lap - 1, then the real roots
/// of alpha^2 + (beta+1) alpha + (beta+1-c_grad) = 0, one ordering per root
/// (descending alpha). Throws NoRealOrderingError on a negative discriminant.
std::vector<OrderingParameters> solve_parameters_from_coefficients(const Rational& c_lap,
                                                                   const Rational& c_grad);
std::vector<OrderingParameters> solve_parameters_from_coefficients(double c_lap, double c_grad);

/// Selects how the Laplacian of a radially symmetric mass enters the
/// effective potential: literal_radial keeps the plain second derivative
/// m''(r); full_laplacian uses m'' + (d-1) m'/r.
enum class LaplacianMode { literal_radial, full_laplacian };

/// Vt(x) = c_lap m''/m^2 - c_grad m'^2/m^3 + V(x).
double effective_potential_1d(const OrderingParameters& o, const MassProfile& m,
                              const PotentialProfile& V, double x);

/// Radial effective potential at r in d dimensions under the given mode.
double effective_potential_radial(const OrderingParameters& o, const MassProfile& m,
                                  const PotentialProfile& V, double r, int d,
                                  LaplacianMode mode = LaplacianMode::literal_radial);

/// Per-point effective potentials for several orderings plus all pairwise
/// differences, evaluated on the given sample points.
struct OrderingComparison {
    std::vector<double> r;
    std::vector<std::string> names;                  // one per ordering
    std::vector<std::vector<double>> vtilde;         // [ordering][point]
    std::vector<std::pair<int, int>> diff_pairs;     // indices into names
    std::vector<std::vector<double>> diffs;          // [pair][point]
};

OrderingComparison compare_orderings(const std::vector<OrderingParameters>& orderings,
                                     const MassProfile& m, const PotentialProfile& V,
                                     const std::vector<double>& grid);

} // namespace pdm

#endif
