#ifndef PDM_PCT_HPP
#define PDM_PCT_HPP

#include "pdm/grid.hpp"
#include "pdm/profiles.hpp"
#include "pdm/rational.hpp"
#include "pdm/spectrum.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace pdm {

/// The point canonical transformation coordinate Z(r) = int sqrt(m) dr,
/// strictly increasing since m > 0. Power-law masses use closed forms
/// (Z(0+) = 0 for varsigma r^upsilon, upsilon != -2; Z = sqrt(varsigma) ln r,
/// Z(1) = 0, for upsilon = -2); anything else is integrated adaptively with
/// Z(r_lo) = 0 and inverted by safeguarded Newton. Mappings are immutable
/// (quadrature tables built once) and safe for concurrent evaluation.
class PCTMapping {
public:
    static PCTMapping build(const MassProfile& m, double r_lo, double r_hi);

    double forward(double r) const;  // Z(r)
    double inverse(double z) const;  // r(Z)
    double jacobian(double r) const; // sqrt(m(r))
    Interval r_domain() const;
    Interval z_domain() const;
    bool closed_form() const;

private:
    struct Impl;
    explicit PCTMapping(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Convenience named constructor matching the operation vocabulary.
inline PCTMapping build_mapping(const MassProfile& m, double r_lo, double r_hi) {
    return PCTMapping::build(m, r_lo, r_hi);
}

/// PCT-induced potential shift U_d(r) = m'(r) (d-1) / (2 r m(r)^2).
double u_d(const MassProfile& m, double r, int d);

/// Effective angular quantum number for a power-law mass:
///   lambda = -1/2 + |upsilon+2|^{-1} sqrt((upsilon/2+1)^2
///                                         + 4 l_d(l_d+1) + 2 upsilon (1-d)).
/// Throws ComplexLambdaError on a negative radicand and
/// std::invalid_argument for upsilon = -2 (use the special case).
double lambda_eff(double upsilon, double ell_d, int d);

/// lambda (lambda+1) in exact arithmetic: radicand/(upsilon+2)^2 - 1/4.
/// Real-valuedness of lambda is checked (negative radicand throws).
Rational lambda_product_exact(const Rational& upsilon, const Rational& ell_d, int d);

/// Constant-mass exactly solvable reference problems in hbar = 2 m0 = 1
/// units, valid at real (generally non-integer) angular momentum L:
///   oscillator(k):  V(Z) = k Z^2,   eps(n, L) = sqrt(k) (4n + 2L + 3)
///   coulomb(e2):    V(Z) = -e2/Z,   eps(n, L) = -e2^2 / (4 (n+L+1)^2)
class ReferenceModel {
public:
    enum class Family { oscillator, coulomb };

    static ReferenceModel oscillator(double k);
    static ReferenceModel coulomb(double e2);

    double energy(int n_r, double big_l) const;
    double potential(double z) const;
    Family family() const { return family_; }
    double parameter() const { return param_; }
    std::string name() const;

private:
    ReferenceModel(Family f, double p) : family_(f), param_(p) {}
    Family family_;
    double param_;
};

/// Result of mapping a reference model through a power-law mass: the target
/// potential V(r) = V_ref(Z(r)), the predicted spectrum eps(n_r, L = lambda),
/// and the mapping for independent verification.
struct MappedTarget {
    PotentialProfile target_potential;
    Spectrum predicted;
    PCTMapping mapping;
    double lambda = 0.0;
    double ell_d = 0.0;
};

MappedTarget map_reference_to_target(const ReferenceModel& ref, const MassProfile& m, int d,
                                     int ell, int n_max, Parity parity = Parity::none);

/// upsilon = -2 special case: the whole mapped problem is one-dimensional in
/// Z = sqrt(varsigma) ln r with a constant shift
///   u_tilde = [l_d(l_d+1) + d - 1] / varsigma
/// added to the potential; predicted energies are eps + u_tilde with the
/// reference restricted to L = 0 and/or L = -1 (full-line parity towers).
struct InverseSquareCase {
    double u_tilde = 0.0;
    double varsigma = 1.0;
    double ell_d = 0.0;
    PCTMapping mapping;
    std::function<double(double)> potential_in_z; // V(r(Z))
};

InverseSquareCase special_case_inverse_square(const MassProfile& m, const PotentialProfile& V,
                                              int d, int ell, Parity parity = Parity::none);

/// Predicted target energies eps(n, L) + u_tilde merged over the allowed
/// reference towers. A requested L outside {0, -1} is an error, as is a
/// coulomb reference (singular on the full line).
std::vector<double> inverse_square_predicted(const InverseSquareCase& c, const ReferenceModel& ref,
                                             int n_max, std::optional<double> ref_l = std::nullopt);

/// R(r) = m(r)^{1/4} phi(Z(r)) resampled onto a uniform r grid spanning the
/// image of phi's Z grid; the change of variables preserves the L2 norm.
GridFunction wavefunction_pullback(const PCTMapping& map, const MassProfile& m,
                                   const GridFunction& phi_in_z);

} // namespace pdm

#endif
