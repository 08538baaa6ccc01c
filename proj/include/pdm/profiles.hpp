#ifndef PDM_PROFILES_HPP
#define PDM_PROFILES_HPP

#include "pdm/expression.hpp"

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pdm {

/// Open interval; evaluation exactly at an endpoint is a domain error.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains_interior(double x) const { return x > lo && x < hi; }
    bool finite() const;
};

/// A scalar field f(r) with first and second derivatives, dimensionless
/// length units. Built-in families carry analytic derivatives; parsed
/// expressions use Richardson-extrapolated central differences with step
/// h = max(1e-5, 1e-5|r|).
///
/// Profiles are immutable after construction and safe to evaluate from
/// concurrent workers.
class Profile {
public:
    enum class Family { constant, power_law, exponential, rational, expression };

    static Profile constant(double c);
    /// coef * r^power on (0, inf).
    static Profile power_law(double coef, double power);
    /// scale * exp(rate * r).
    static Profile exponential(double scale, double rate);
    /// (a + b r^2) / (c + d r^2).
    static Profile rational(double a, double b, double c, double d);
    static Profile expression(std::string expr, std::string var_name);

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;

    Family family() const;
    /// Named family parameters in a fixed order (e.g. {"coef", "power"}).
    const std::vector<std::pair<std::string, double>>& params() const;
    double param(const std::string& name) const;

    const Interval& domain() const;
    /// Copy with a narrowed domain; must lie inside the current one.
    Profile restricted(double lo, double hi) const;

    std::string describe() const;

private:
    struct Impl;
    explicit Profile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

using PotentialProfile = Profile;

/// A profile expected to be positive everywhere it is used. Positivity is
/// checked by sampling (validate_profile) and at the points of use that
/// require it, not proven.
class MassProfile {
public:
    explicit MassProfile(Profile p) : p_(std::move(p)) {}

    double value(double r) const { return p_.value(r); }
    double d1(double r) const { return p_.d1(r); }
    double d2(double r) const { return p_.d2(r); }

    Profile::Family family() const { return p_.family(); }
    double param(const std::string& name) const { return p_.param(name); }
    const Interval& domain() const { return p_.domain(); }
    MassProfile restricted(double lo, double hi) const { return MassProfile(p_.restricted(lo, hi)); }
    std::string describe() const { return p_.describe(); }

    const Profile& profile() const { return p_; }

private:
    Profile p_;
};

/// varsigma * r^upsilon with varsigma > 0, domain (0, inf).
MassProfile make_power_law(double varsigma, double upsilon);

/// Parse an arithmetic expression into a profile (usable as either mass or
/// potential); domain is the whole line until restricted.
Profile parse_profile(const std::string& expr, const std::string& var_name);

struct ValidationReport {
    bool passed = false;
    int samples = 0;
    /// Sample points where the profile was non-positive or failed to evaluate.
    std::vector<double> positivity_violations;
    int eval_failures = 0;
    /// Max |d1 - central difference| and |d2 - central difference| seen.
    double max_d1_residual = 0.0;
    double max_d2_residual = 0.0;
    std::string summary;
};

/// Sample-based check of positivity and derivative consistency over an
/// evenly spaced interior sample of the profile's domain (which must be
/// finite; restrict first if needed).
ValidationReport validate_profile(const MassProfile& m, int samples);

} // namespace pdm

#endif
