#include "pdm/ordering.hpp"

#include "pdm/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace pdm {

namespace {

OrderingParameters from_exact(const Rational& a, const Rational& b, std::string name) {
    OrderingParameters o;
    Rational g = Rational(-1) - a - b;
    o.alpha = a.to_double();
    o.beta = b.to_double();
    o.gamma = g.to_double();
    o.exact = {a, b, g};
    o.name = std::move(name);
    return o;
}

} // namespace

OrderingParameters make_ordering(double alpha, double beta, std::string name) {
    try {
        return from_exact(Rational::from_double(alpha), Rational::from_double(beta), std::move(name));
    } catch (const std::overflow_error&) {
        OrderingParameters o;
        o.alpha = alpha;
        o.beta = beta;
        o.gamma = -1.0 - alpha - beta;
        o.name = std::move(name);
        return o;
    }
}

OrderingParameters make_ordering(const Rational& alpha, const Rational& beta, std::string name) {
    return from_exact(alpha, beta, std::move(name));
}

const std::vector<OrderingParameters>& ordering_catalog() {
    static const std::vector<OrderingParameters> catalog = {
        make_ordering(Rational(-1), Rational(0), "gora_williams"),
        make_ordering(Rational(0), Rational(-1), "ben_daniel_duke"),
        make_ordering(Rational(-1, 2), Rational(0), "zhu_kroemer"),
        make_ordering(Rational(0), Rational(-1, 2), "li_kuhn"),
        make_ordering(Rational(-1, 4), Rational(-1, 2), "mm"),
    };
    return catalog;
}

OrderingParameters find_ordering(const std::string& spec) {
    for (const auto& o : ordering_catalog())
        if (o.name == spec) return o;
    if (spec.rfind("custom:", 0) == 0) {
        std::string body = spec.substr(7);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("custom ordering needs two components: custom:<alpha>,<beta>");
        try {
            Rational a = Rational::parse(body.substr(0, comma));
            Rational b = Rational::parse(body.substr(comma + 1));
            return make_ordering(a, b);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("bad custom ordering '") + spec + "': " + e.what());
        }
    }
    throw std::invalid_argument("unknown ordering '" + spec +
                                "' (expected gora_williams, ben_daniel_duke, zhu_kroemer, li_kuhn, "
                                "mm, or custom:<alpha>,<beta>)");
}

KineticCoefficients kinetic_coefficients(const OrderingParameters& o) {
    KineticCoefficients k;
    if (o.exact) {
        const Rational& a = (*o.exact)[0];
        const Rational& b = (*o.exact)[1];
        try {
            Rational lap = (Rational(1) + b) / Rational(2);
            Rational grad = a * (a + b + Rational(1)) + b + Rational(1);
            k.exact = {lap, grad};
            k.c_lap = lap.to_double();
            k.c_grad = grad.to_double();
            return k;
        } catch (const std::overflow_error&) {
            // fall through to doubles
        }
    }
    k.c_lap = 0.5 * (1.0 + o.beta);
    k.c_grad = o.alpha * (o.alpha + o.beta + 1.0) + o.beta + 1.0;
    return k;
}

std::vector<OrderingParameters> solve_parameters_from_coefficients(const Rational& c_lap,
                                                                   const Rational& c_grad) {
    Rational beta = Rational(2) * c_lap - Rational(1);
    Rational p = beta + Rational(1); // = 2 c_lap
    Rational q = p - c_grad;
    Rational disc = p * p - Rational(4) * q;
    if (disc.sign() < 0)
        throw NoRealOrderingError("no real ordering: discriminant " + disc.str() + " is negative");

    std::vector<OrderingParameters> result;
    if (disc.is_zero()) {
        result.push_back(make_ordering(-p / Rational(2), beta));
        return result;
    }
    if (auto root = disc.sqrt_exact()) {
        Rational two(2);
        result.push_back(make_ordering((-p + *root) / two, beta));
        result.push_back(make_ordering((-p - *root) / two, beta));
        return result;
    }
    // Irrational roots: exactness is lost for alpha and gamma.
    double pd = p.to_double();
    double s = std::sqrt(disc.to_double());
    double bd = beta.to_double();
    OrderingParameters hi, lo;
    hi.alpha = (-pd + s) / 2.0;
    lo.alpha = (-pd - s) / 2.0;
    hi.beta = lo.beta = bd;
    hi.gamma = -1.0 - hi.alpha - bd;
    lo.gamma = -1.0 - lo.alpha - bd;
    result.push_back(hi);
    result.push_back(lo);
    return result;
}

std::vector<OrderingParameters> solve_parameters_from_coefficients(double c_lap, double c_grad) {
    return solve_parameters_from_coefficients(Rational::from_double(c_lap),
                                              Rational::from_double(c_grad));
}

double effective_potential_1d(const OrderingParameters& o, const MassProfile& m,
                              const PotentialProfile& V, double x) {
    KineticCoefficients k = kinetic_coefficients(o);
    double mv = m.value(x);
    double md1 = m.d1(x);
    double md2 = m.d2(x);
    return k.c_lap * md2 / (mv * mv) - k.c_grad * md1 * md1 / (mv * mv * mv) + V.value(x);
}

double effective_potential_radial(const OrderingParameters& o, const MassProfile& m,
                                  const PotentialProfile& V, double r, int d, LaplacianMode mode) {
    if (r <= 0.0) throw DomainError("effective_potential_radial: r must be positive");
    if (d < 1) throw std::invalid_argument("effective_potential_radial: dimension must be >= 1");
    KineticCoefficients k = kinetic_coefficients(o);
    double mv = m.value(r);
    double md1 = m.d1(r);
    double md2 = m.d2(r);
    if (mode == LaplacianMode::full_laplacian) md2 += (d - 1) * md1 / r;
    return k.c_lap * md2 / (mv * mv) - k.c_grad * md1 * md1 / (mv * mv * mv) + V.value(r);
}

OrderingComparison compare_orderings(const std::vector<OrderingParameters>& orderings,
                                     const MassProfile& m, const PotentialProfile& V,
                                     const std::vector<double>& grid) {
    if (orderings.empty() || grid.empty())
        throw std::invalid_argument("compare_orderings: orderings and grid must be non-empty");

    OrderingComparison cmp;
    cmp.r = grid;
    for (std::size_t i = 0; i < orderings.size(); ++i) {
        const auto& o = orderings[i];
        cmp.names.push_back(o.name.empty() ? "ordering" + std::to_string(i) : o.name);
        std::vector<double> col;
        col.reserve(grid.size());
        for (double x : grid) col.push_back(effective_potential_1d(o, m, V, x));
        cmp.vtilde.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < orderings.size(); ++i) {
        for (std::size_t j = i + 1; j < orderings.size(); ++j) {
            std::vector<double> col(grid.size());
            for (std::size_t p = 0; p < grid.size(); ++p)
                col[p] = cmp.vtilde[i][p] - cmp.vtilde[j][p];
            cmp.diff_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            cmp.diffs.push_back(std::move(col));
        }
    }
    return cmp;
}

} // namespace pdm
