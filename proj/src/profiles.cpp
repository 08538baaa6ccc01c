#include "pdm/profiles.hpp"

#include "pdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace pdm {

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

struct Profile::Impl {
    Family family;
    std::vector<std::pair<std::string, double>> params;
    std::optional<Expression> expr;
    Interval domain;
};

namespace {

using Family = Profile::Family;

double power_term(double coef, double power, double r) {
    if (coef == 0.0) return 0.0;
    return coef * std::pow(r, power);
}

void check_domain(const Interval& dom, double r, const char* what) {
    if (!dom.contains_interior(r))
        throw DomainError(std::string(what) + ": r = " + std::to_string(r) +
                          " is outside the open domain (" + std::to_string(dom.lo) + ", " +
                          std::to_string(dom.hi) + ")");
}

// Richardson-extrapolated central differences for expression-backed profiles.
// One extrapolation level on top of the O(h^2) stencils gives O(h^4).
double fd_step(const Interval& dom, double r) {
    double h = std::max(1e-5, 1e-5 * std::fabs(r));
    double room = std::min(r - dom.lo, dom.hi - r);
    if (std::isfinite(room)) h = std::min(h, 0.25 * room);
    return h;
}

double richardson_d1(const Expression& f, double r, double h) {
    auto d1 = [&](double s) { return (f.eval(r + s) - f.eval(r - s)) / (2.0 * s); };
    return (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
}

double richardson_d2(const Expression& f, double r, double h) {
    double fr = f.eval(r);
    auto d2 = [&](double s) { return (f.eval(r + s) - 2.0 * fr + f.eval(r - s)) / (s * s); };
    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
}

} // namespace

Profile Profile::constant(double c) {
    auto impl = std::make_shared<Impl>();
    impl->family = Family::constant;
    impl->params = {{"value", c}};
    return Profile(std::move(impl));
}

Profile Profile::power_law(double coef, double power) {
    auto impl = std::make_shared<Impl>();
    impl->family = Family::power_law;
    impl->params = {{"coef", coef}, {"power", power}};
    impl->domain = {0.0, std::numeric_limits<double>::infinity()};
    return Profile(std::move(impl));
}

Profile Profile::exponential(double scale, double rate) {
    auto impl = std::make_shared<Impl>();
    impl->family = Family::exponential;
    impl->params = {{"scale", scale}, {"rate", rate}};
    return Profile(std::move(impl));
}

Profile Profile::rational(double a, double b, double c, double d) {
    auto impl = std::make_shared<Impl>();
    impl->family = Family::rational;
    impl->params = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    return Profile(std::move(impl));
}

Profile Profile::expression(std::string expr, std::string var_name) {
    auto impl = std::make_shared<Impl>();
    impl->family = Family::expression;
    impl->expr = Expression::parse(expr, var_name);
    return Profile(std::move(impl));
}

double Profile::value(double r) const {
    const Impl& im = *impl_;
    check_domain(im.domain, r, "profile evaluation");
    switch (im.family) {
    case Family::constant:
        return im.params[0].second;
    case Family::power_law:
        return power_term(im.params[0].second, im.params[1].second, r);
    case Family::exponential:
        return im.params[0].second * std::exp(im.params[1].second * r);
    case Family::rational: {
        double den = im.params[2].second + im.params[3].second * r * r;
        if (den == 0.0) throw EvalError("rational profile denominator vanished at r = " + std::to_string(r));
        return (im.params[0].second + im.params[1].second * r * r) / den;
    }
    case Family::expression:
        return im.expr->eval(r);
    }
    throw EvalError("corrupt profile");
}

double Profile::d1(double r) const {
    const Impl& im = *impl_;
    check_domain(im.domain, r, "profile derivative");
    switch (im.family) {
    case Family::constant:
        return 0.0;
    case Family::power_law:
        return power_term(im.params[0].second * im.params[1].second, im.params[1].second - 1.0, r);
    case Family::exponential:
        return im.params[1].second * value(r);
    case Family::rational: {
        double a = im.params[0].second, b = im.params[1].second;
        double c = im.params[2].second, d = im.params[3].second;
        double den = c + d * r * r;
        if (den == 0.0) throw EvalError("rational profile denominator vanished at r = " + std::to_string(r));
        return 2.0 * r * (b * c - a * d) / (den * den);
    }
    case Family::expression:
        return richardson_d1(*im.expr, r, fd_step(im.domain, r));
    }
    throw EvalError("corrupt profile");
}

double Profile::d2(double r) const {
    const Impl& im = *impl_;
    check_domain(im.domain, r, "profile derivative");
    switch (im.family) {
    case Family::constant:
        return 0.0;
    case Family::power_law: {
        double c = im.params[0].second, p = im.params[1].second;
        return power_term(c * p * (p - 1.0), p - 2.0, r);
    }
    case Family::exponential: {
        double rate = im.params[1].second;
        return rate * rate * value(r);
    }
    case Family::rational: {
        double a = im.params[0].second, b = im.params[1].second;
        double c = im.params[2].second, d = im.params[3].second;
        double den = c + d * r * r;
        if (den == 0.0) throw EvalError("rational profile denominator vanished at r = " + std::to_string(r));
        return 2.0 * (b * c - a * d) * (den - 4.0 * d * r * r) / (den * den * den);
    }
    case Family::expression:
        return richardson_d2(*im.expr, r, fd_step(im.domain, r));
    }
    throw EvalError("corrupt profile");
}

Profile::Family Profile::family() const { return impl_->family; }

const std::vector<std::pair<std::string, double>>& Profile::params() const { return impl_->params; }

double Profile::param(const std::string& name) const {
    for (const auto& [key, val] : impl_->params)
        if (key == name) return val;
    throw std::invalid_argument("profile has no parameter '" + name + "'");
}

const Interval& Profile::domain() const { return impl_->domain; }

Profile Profile::restricted(double lo, double hi) const {
    if (!(lo < hi))
        throw std::invalid_argument("restricted: empty interval");
    if (lo < impl_->domain.lo || hi > impl_->domain.hi)
        throw std::invalid_argument("restricted: interval extends beyond the current domain");
    auto impl = std::make_shared<Impl>(*impl_);
    impl->domain = {lo, hi};
    return Profile(std::move(impl));
}

std::string Profile::describe() const {
    const Impl& im = *impl_;
    std::ostringstream os;
    switch (im.family) {
    case Family::constant: os << "constant"; break;
    case Family::power_law: os << "power_law"; break;
    case Family::exponential: os << "exponential"; break;
    case Family::rational: os << "rational"; break;
    case Family::expression: os << "expression '" << im.expr->text() << "'"; break;
    }
    if (im.family != Family::expression) {
        os << "(";
        for (std::size_t i = 0; i < im.params.size(); ++i)
            os << (i ? ", " : "") << im.params[i].first << "=" << im.params[i].second;
        os << ")";
    }
    return os.str();
}

MassProfile make_power_law(double varsigma, double upsilon) {
    if (!(varsigma > 0.0))
        throw std::invalid_argument("make_power_law: varsigma must be positive");
    return MassProfile(Profile::power_law(varsigma, upsilon));
}

Profile parse_profile(const std::string& expr, const std::string& var_name) {
    return Profile::expression(expr, var_name);
}

ValidationReport validate_profile(const MassProfile& m, int samples) {
    if (samples < 3) throw std::invalid_argument("validate_profile: need at least 3 samples");
    const Interval& dom = m.domain();
    if (!dom.finite())
        throw std::invalid_argument("validate_profile: profile domain is infinite; restrict it first");

    ValidationReport rep;
    rep.samples = samples;
    double span = dom.hi - dom.lo;
    double max_d1_scale = 0.0, max_d2_scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        // strictly interior: endpoints are open
        double r = dom.lo + span * (i + 1) / (samples + 1);
        double h = std::min(std::max(1e-4, 1e-4 * std::fabs(r)),
                            0.25 * std::min(r - dom.lo, dom.hi - r));
        try {
            double v = m.value(r);
            if (!(v > 0.0)) rep.positivity_violations.push_back(r);
            double fd1 = (m.value(r + h) - m.value(r - h)) / (2.0 * h);
            double fd2 = (m.value(r + h) - 2.0 * v + m.value(r - h)) / (h * h);
            double a1 = m.d1(r), a2 = m.d2(r);
            rep.max_d1_residual = std::max(rep.max_d1_residual, std::fabs(a1 - fd1));
            rep.max_d2_residual = std::max(rep.max_d2_residual, std::fabs(a2 - fd2));
            max_d1_scale = std::max(max_d1_scale, std::fabs(a1));
            max_d2_scale = std::max(max_d2_scale, std::fabs(a2));
        } catch (const Error&) {
            rep.positivity_violations.push_back(r);
            ++rep.eval_failures;
        }
    }
    bool d1_ok = rep.max_d1_residual <= 1e-5 * (1.0 + max_d1_scale);
    bool d2_ok = rep.max_d2_residual <= 1e-3 * (1.0 + max_d2_scale);
    rep.passed = rep.positivity_violations.empty() && d1_ok && d2_ok;

    std::ostringstream os;
    os << (rep.passed ? "pass" : "FAIL") << ": " << rep.positivity_violations.size()
       << " positivity violations (" << rep.eval_failures << " evaluation failures), max d1 residual "
       << rep.max_d1_residual << ", max d2 residual " << rep.max_d2_residual << " over " << samples
       << " samples of " << m.describe();
    rep.summary = os.str();
    return rep;
}

} // namespace pdm
