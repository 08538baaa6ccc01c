#include "pdm/pct.hpp"

#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pdm {

namespace {

double positive_mass(const MassProfile& m, double r) {
    double v = m.value(r);
    if (!(v > 0.0))
        throw NonPositiveMassError("mass profile " + m.describe() + " is not positive at r = " +
                                   std::to_string(r));
    return v;
}

} // namespace

struct PCTMapping::Impl {
    enum class Kind { power, log, numeric };
    Kind kind = Kind::numeric;
    MassProfile mass;
    Interval r_dom;
    Interval z_dom;

    // power / log closed forms
    double varsigma = 1.0;
    double upsilon = 0.0;

    // numeric cumulative table (z anchored to 0 at r_dom.lo)
    std::vector<double> rt, zt;

    explicit Impl(MassProfile m) : mass(std::move(m)) {}
};

PCTMapping PCTMapping::build(const MassProfile& m, double r_lo, double r_hi) {
    if (!(r_lo < r_hi)) throw std::invalid_argument("build_mapping: empty r interval");
    auto impl = std::make_shared<Impl>(m);
    impl->r_dom = {r_lo, r_hi};

    auto family = m.family();
    if (family == Profile::Family::power_law || family == Profile::Family::constant) {
        if (family == Profile::Family::power_law) {
            impl->varsigma = m.param("coef");
            impl->upsilon = m.param("power");
        } else {
            impl->varsigma = m.param("value");
            impl->upsilon = 0.0;
        }
        if (!(impl->varsigma > 0.0))
            throw NonPositiveMassError("build_mapping: mass coefficient must be positive");
        impl->kind = impl->upsilon == -2.0 ? Impl::Kind::log : Impl::Kind::power;
    } else {
        if (!std::isfinite(r_lo) || !std::isfinite(r_hi))
            throw std::invalid_argument("build_mapping: numeric mapping needs a finite interval");
        impl->kind = Impl::Kind::numeric;

        const std::size_t cells = 1024;
        bool log_spaced = r_lo > 0.0 && r_hi / r_lo > 100.0;
        impl->rt.resize(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i) {
            double t = static_cast<double>(i) / cells;
            impl->rt[i] = log_spaced ? r_lo * std::pow(r_hi / r_lo, t) : r_lo + (r_hi - r_lo) * t;
        }
        impl->rt.front() = r_lo;
        impl->rt.back() = r_hi;

        auto sqrt_m = [&m](double r) { return std::sqrt(positive_mass(m, r)); };
        // rough scale first, then a per-cell tolerance
        double rough = 0.0;
        for (std::size_t i = 0; i < cells; ++i)
            rough += 0.5 * (sqrt_m(impl->rt[i]) + sqrt_m(impl->rt[i + 1])) *
                     (impl->rt[i + 1] - impl->rt[i]);
        double cell_tol = 1e-12 * std::max(1.0, rough) / static_cast<double>(cells);

        impl->zt.resize(cells + 1);
        impl->zt[0] = 0.0;
        for (std::size_t i = 0; i < cells; ++i)
            impl->zt[i + 1] =
                impl->zt[i] + num::adaptive_simpson(sqrt_m, impl->rt[i], impl->rt[i + 1], cell_tol);
        for (std::size_t i = 0; i < cells; ++i)
            if (!(impl->zt[i + 1] > impl->zt[i]))
                throw SolverError("build_mapping: Z(r) is not strictly increasing");
    }

    // z-domain endpoints, with the open limits of the closed forms handled
    auto z_at = [&](double r, bool is_lo) -> double {
        const double inf = std::numeric_limits<double>::infinity();
        if (impl->kind == Impl::Kind::log) {
            if (r <= 0.0) return -inf;
            if (std::isinf(r)) return inf;
            return std::sqrt(impl->varsigma) * std::log(r);
        }
        if (impl->kind == Impl::Kind::power) {
            double p = 0.5 * (impl->upsilon + 2.0);
            if (r <= 0.0) return p > 0.0 ? 0.0 : -inf;
            if (std::isinf(r)) return p > 0.0 ? inf : 0.0;
            return std::sqrt(impl->varsigma) * std::pow(r, p) / p;
        }
        return is_lo ? impl->zt.front() : impl->zt.back();
    };
    impl->z_dom = {z_at(r_lo, true), z_at(r_hi, false)};
    return PCTMapping(impl);
}

double PCTMapping::forward(double r) const {
    const Impl& im = *impl_;
    switch (im.kind) {
    case Impl::Kind::power: {
        double p = 0.5 * (im.upsilon + 2.0);
        return std::sqrt(im.varsigma) * std::pow(r, p) / p;
    }
    case Impl::Kind::log:
        if (!(r > 0.0)) throw DomainError("PCT forward: r must be positive");
        return std::sqrt(im.varsigma) * std::log(r);
    case Impl::Kind::numeric: {
        if (r < im.rt.front() || r > im.rt.back())
            throw DomainError("PCT forward: r outside the tabulated interval");
        auto it = std::upper_bound(im.rt.begin(), im.rt.end(), r);
        std::size_t i = std::min(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - im.rt.begin() - 1, 0)),
                                 im.rt.size() - 2);
        // cubic Hermite with exact slopes Z' = sqrt(m)
        double h = im.rt[i + 1] - im.rt[i];
        double t = (r - im.rt[i]) / h;
        double s0 = std::sqrt(positive_mass(im.mass, im.rt[i]));
        double s1 = std::sqrt(positive_mass(im.mass, im.rt[i + 1]));
        double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * im.zt[i] + (t3 - 2.0 * t2 + t) * h * s0 +
               (-2.0 * t3 + 3.0 * t2) * im.zt[i + 1] + (t3 - t2) * h * s1;
    }
    }
    throw SolverError("corrupt mapping");
}

double PCTMapping::inverse(double z) const {
    const Impl& im = *impl_;
    switch (im.kind) {
    case Impl::Kind::power: {
        double p = 0.5 * (im.upsilon + 2.0);
        double base = z * p / std::sqrt(im.varsigma);
        if (!(base > 0.0)) throw DomainError("PCT inverse: z outside the image of (0, inf)");
        return std::pow(base, 1.0 / p);
    }
    case Impl::Kind::log:
        return std::exp(z / std::sqrt(im.varsigma));
    case Impl::Kind::numeric: {
        if (z < im.zt.front() || z > im.zt.back())
            throw DomainError("PCT inverse: z outside the tabulated interval");
        auto it = std::upper_bound(im.zt.begin(), im.zt.end(), z);
        std::size_t i = std::min(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - im.zt.begin() - 1, 0)),
                                 im.zt.size() - 2);
        double lo = im.rt[i], hi = im.rt[i + 1];
        double r = lo + (hi - lo) * (z - im.zt[i]) / (im.zt[i + 1] - im.zt[i]);
        for (int iter = 0; iter < 60; ++iter) {
            double f = forward(r) - z;
            if (f > 0.0)
                hi = r;
            else
                lo = r;
            double step = f / jacobian(r);
            double next = r - step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // safeguard
            if (std::fabs(next - r) <= 1e-14 * std::max(1.0, std::fabs(r))) return next;
            r = next;
        }
        return r;
    }
    }
    throw SolverError("corrupt mapping");
}

double PCTMapping::jacobian(double r) const { return std::sqrt(positive_mass(impl_->mass, r)); }

Interval PCTMapping::r_domain() const { return impl_->r_dom; }

Interval PCTMapping::z_domain() const { return impl_->z_dom; }

bool PCTMapping::closed_form() const { return impl_->kind != Impl::Kind::numeric; }

double u_d(const MassProfile& m, double r, int d) {
    if (!(r > 0.0)) throw DomainError("u_d: r must be positive");
    if (d < 1) throw std::invalid_argument("u_d: dimension must be >= 1");
    if (d == 1) return 0.0;
    double mv = positive_mass(m, r);
    return m.d1(r) * static_cast<double>(d - 1) / (2.0 * r * mv * mv);
}

double lambda_eff(double upsilon, double ell_d, int d) {
    if (upsilon == -2.0)
        throw std::invalid_argument(
            "lambda_eff: upsilon = -2 has no power-law lambda; use the inverse-square special case");
    double half = 0.5 * upsilon + 1.0;
    double radicand = half * half + 4.0 * ell_d * (ell_d + 1.0) + 2.0 * upsilon * (1.0 - d);
    if (radicand < 0.0) {
        std::ostringstream os;
        os << "complex effective angular momentum: radicand " << radicand << " < 0 for upsilon = "
           << upsilon << ", l_d = " << ell_d << ", d = " << d;
        throw ComplexLambdaError(os.str());
    }
    return -0.5 + std::sqrt(radicand) / std::fabs(upsilon + 2.0);
}

Rational lambda_product_exact(const Rational& upsilon, const Rational& ell_d, int d) {
    if (upsilon == Rational(-2))
        throw std::invalid_argument("lambda_product_exact: upsilon = -2 is the special case");
    Rational half = upsilon / Rational(2) + Rational(1);
    Rational radicand = half * half + Rational(4) * ell_d * (ell_d + Rational(1)) +
                        Rational(2) * upsilon * (Rational(1) - Rational(d));
    if (radicand.sign() < 0)
        throw ComplexLambdaError("complex effective angular momentum: radicand " + radicand.str() +
                                 " < 0");
    Rational denom = (upsilon + Rational(2)) * (upsilon + Rational(2));
    return radicand / denom - Rational(1, 4);
}

ReferenceModel ReferenceModel::oscillator(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("oscillator reference needs k > 0");
    return ReferenceModel(Family::oscillator, k);
}

ReferenceModel ReferenceModel::coulomb(double e2) {
    if (!(e2 > 0.0)) throw std::invalid_argument("coulomb reference needs e2 > 0");
    return ReferenceModel(Family::coulomb, e2);
}

double ReferenceModel::energy(int n_r, double big_l) const {
    if (n_r < 0) throw std::invalid_argument("reference energy: n_r must be >= 0");
    switch (family_) {
    case Family::oscillator:
        return std::sqrt(param_) * (4.0 * n_r + 2.0 * big_l + 3.0);
    case Family::coulomb: {
        double n = n_r + big_l + 1.0;
        if (!(n > 0.0))
            throw std::invalid_argument("coulomb reference energy needs n_r + L + 1 > 0");
        return -param_ * param_ / (4.0 * n * n);
    }
    }
    throw SolverError("corrupt reference model");
}

double ReferenceModel::potential(double z) const {
    switch (family_) {
    case Family::oscillator:
        return param_ * z * z;
    case Family::coulomb:
        if (z == 0.0) throw EvalError("coulomb reference potential is singular at Z = 0");
        return -param_ / z;
    }
    throw SolverError("corrupt reference model");
}

std::string ReferenceModel::name() const {
    std::ostringstream os;
    if (family_ == Family::oscillator)
        os << "oscillator(k=" << param_ << ")";
    else
        os << "coulomb(e2=" << param_ << ")";
    return os.str();
}

MappedTarget map_reference_to_target(const ReferenceModel& ref, const MassProfile& m, int d,
                                     int ell, int n_max, Parity parity) {
    if (m.family() != Profile::Family::power_law && m.family() != Profile::Family::constant)
        throw std::invalid_argument("map_reference_to_target needs a power-law mass profile");
    double varsigma = m.family() == Profile::Family::constant ? m.param("value") : m.param("coef");
    double upsilon = m.family() == Profile::Family::constant ? 0.0 : m.param("power");
    if (upsilon == -2.0)
        throw std::invalid_argument(
            "map_reference_to_target: upsilon = -2 routes to special_case_inverse_square");
    if (n_max < 0) throw std::invalid_argument("map_reference_to_target: n_max must be >= 0");

    double ld = d == 1 ? l_d(parity) : l_d(ell, d);
    double lambda = lambda_eff(upsilon, ld, d);

    double p = 0.5 * (upsilon + 2.0);
    PotentialProfile target = [&] {
        switch (ref.family()) {
        case ReferenceModel::Family::oscillator:
            // k Z(r)^2 = k varsigma r^{upsilon+2} / p^2
            return Profile::power_law(ref.parameter() * varsigma / (p * p), upsilon + 2.0);
        case ReferenceModel::Family::coulomb:
            if (!(upsilon > -2.0))
                throw std::invalid_argument("coulomb reference needs Z > 0, i.e. upsilon > -2");
            // -e2 / Z(r) = -e2 p / (sqrt(varsigma) r^p)
            return Profile::power_law(-ref.parameter() * p / std::sqrt(varsigma), -p);
        }
        throw SolverError("corrupt reference model");
    }();

    Spectrum predicted;
    predicted.solver = SolverKind::predicted;
    for (int n = 0; n <= n_max; ++n)
        predicted.entries.push_back({n, ref.energy(n, lambda), n, 0.0, true});

    MappedTarget out{std::move(target), std::move(predicted),
                     PCTMapping::build(m, m.domain().lo, m.domain().hi), lambda, ld};
    return out;
}

InverseSquareCase special_case_inverse_square(const MassProfile& m, const PotentialProfile& V,
                                              int d, int ell, Parity parity) {
    if (m.family() != Profile::Family::power_law || m.param("power") != -2.0)
        throw std::invalid_argument(
            "special_case_inverse_square needs a power-law mass with upsilon = -2");
    double varsigma = m.param("coef");
    double ld = d == 1 ? l_d(parity) : l_d(ell, d);

    InverseSquareCase c{0.0, varsigma, ld, PCTMapping::build(m, m.domain().lo, m.domain().hi), {}};
    c.u_tilde = (ld * (ld + 1.0) + static_cast<double>(d - 1)) / varsigma;
    PCTMapping map = c.mapping;
    c.potential_in_z = [map, V](double z) { return V.value(map.inverse(z)); };
    return c;
}

std::vector<double> inverse_square_predicted(const InverseSquareCase& c, const ReferenceModel& ref,
                                             int n_max, std::optional<double> ref_l) {
    if (ref.family() == ReferenceModel::Family::coulomb)
        throw SolverError("upsilon = -2 mapping: only s-states (L = 0) and d = 1 parity states "
                          "(L = -1) are available, and the coulomb reference is singular on the "
                          "full line");
    std::vector<double> towers;
    if (ref_l) {
        if (*ref_l != 0.0 && *ref_l != -1.0)
            throw SolverError("upsilon = -2 mapping: only s-states (L = 0) and d = 1 parity "
                              "states (L = -1) are available from the reference");
        towers = {*ref_l};
    } else {
        towers = {-1.0, 0.0};
    }
    std::set<double> merged;
    for (double L : towers)
        for (int n = 0; n <= n_max; ++n) merged.insert(ref.energy(n, L) + c.u_tilde);
    std::vector<double> out(merged.begin(), merged.end());
    if (out.size() > static_cast<std::size_t>(n_max) + 1) out.resize(n_max + 1);
    return out;
}

GridFunction wavefunction_pullback(const PCTMapping& map, const MassProfile& m,
                                   const GridFunction& phi_in_z) {
    const UniformGrid& zg = phi_in_z.grid();
    Interval zdom = map.z_domain();
    const double ztol = 1e-9 * (1.0 + std::fabs(zdom.lo) + std::fabs(zdom.hi));
    if (zg.x0 < zdom.lo - ztol || zg.x_end() > zdom.hi + ztol)
        throw std::invalid_argument("wavefunction_pullback: phi grid extends beyond the mapping");

    double r_lo = map.inverse(std::max(zg.x0, zdom.lo));
    double r_hi = map.inverse(std::min(zg.x_end(), zdom.hi));

    std::vector<double> zs(zg.n), re(zg.n), im(zg.n);
    for (std::size_t i = 0; i < zg.n; ++i) {
        zs[i] = zg.x(i);
        re[i] = phi_in_z[i].real();
        im[i] = phi_in_z[i].imag();
    }

    UniformGrid rg{r_lo, (r_hi - r_lo) / static_cast<double>(zg.n - 1), zg.n};
    std::vector<Complex> values(zg.n);
    for (std::size_t i = 0; i < zg.n; ++i) {
        double r = rg.x(i);
        double z = map.forward(r);
        double factor = std::pow(positive_mass(m, r), 0.25);
        values[i] = factor * Complex(num::interp_cubic(zs, re, z), num::interp_cubic(zs, im, z));
    }
    return GridFunction(rg, std::move(values));
}

} // namespace pdm
