#include "pdm/operators.hpp"

#include "pdm/errors.hpp"
#include "pdm/log.hpp"

#include <cmath>
#include <stdexcept>

namespace pdm {

namespace {

void require_same_grid(const UniformGrid& a, const UniformGrid& b, const char* who) {
    if (!(a == b)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

double mass_at(const MassProfile& m, double x) {
    double v = m.value(x);
    if (!(v > 0.0))
        throw NonPositiveMassError("mass profile " + m.describe() + " is not positive at r = " +
                                   std::to_string(x));
    return v;
}

} // namespace

ScalingPair scaling_pair(const MassProfile& m, const UniformGrid& grid) {
    if (grid.n < 5) throw std::invalid_argument("scaling_pair: grid needs at least 5 points");
    ScalingPair sp;
    sp.grid = grid;
    sp.f.resize(grid.n);
    sp.g.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        double x = grid.x(i);
        double mv = mass_at(m, x);
        sp.f[i] = 1.0 / std::sqrt(mv);
        // G = F'/2 with F' = -m'/(2 m^{3/2})
        sp.g[i] = -m.d1(x) / (4.0 * mv * std::sqrt(mv));
    }
    return sp;
}

GridFunction apply_pi(const ScalingPair& sp, const GridFunction& psi) {
    require_same_grid(sp.grid, psi.grid(), "apply_pi");
    const std::size_t n = psi.size();
    const double h = psi.grid().h;

    std::vector<Complex> fpsi(n);
    for (std::size_t i = 0; i < n; ++i) fpsi[i] = sp.f[i] * psi[i];
    std::vector<Complex> dpsi = derivative1(psi.values(), h);
    std::vector<Complex> dfpsi = derivative1(fpsi, h);

    const Complex minus_i(0.0, -1.0);
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = minus_i * 0.5 * (sp.f[i] * dpsi[i] + dfpsi[i]);
    return GridFunction(psi.grid(), std::move(out));
}

namespace {

// Shared kernel: -(1/m) psi'' + (m'/m^2) psi' + [c_lap m''/m^2 - c_grad m'^2/m^3] psi
GridFunction apply_recast_kinetic(double c_lap, double c_grad, const MassProfile& m,
                                  const GridFunction& psi) {
    const UniformGrid& grid = psi.grid();
    const std::size_t n = psi.size();

    std::vector<Complex> d1 = derivative1(psi.values(), grid.h);
    std::vector<Complex> d2 = derivative2(psi.values(), grid.h);
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = grid.x(i);
        double mv = mass_at(m, x);
        double m1 = m.d1(x);
        double m2 = m.d2(x);
        double vterm = c_lap * m2 / (mv * mv) - c_grad * m1 * m1 / (mv * mv * mv);
        out[i] = -d2[i] / mv + (m1 / (mv * mv)) * d1[i] + vterm * psi[i];
    }
    return GridFunction(grid, std::move(out));
}

} // namespace

GridFunction apply_pi_squared(const MassProfile& m, const GridFunction& psi) {
    return apply_recast_kinetic(0.25, 0.4375, m, psi);
}

GridFunction apply_von_roos_kinetic(const OrderingParameters& o, const MassProfile& m,
                                    const GridFunction& psi) {
    KineticCoefficients k = kinetic_coefficients(o);
    return apply_recast_kinetic(k.c_lap, k.c_grad, m, psi);
}

GridFunction apply_factorized(const MassProfile& m, const PotentialProfile& V,
                              const GridFunction& psi) {
    const UniformGrid& grid = psi.grid();
    const std::size_t n = psi.size();

    std::vector<double> mq(n); // m^{1/4}
    for (std::size_t i = 0; i < n; ++i) mq[i] = std::pow(mass_at(m, grid.x(i)), 0.25);

    std::vector<Complex> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = psi[i] / mq[i];
    w = derivative1(w, grid.h);
    for (std::size_t i = 0; i < n; ++i) w[i] /= mq[i] * mq[i];
    w = derivative1(w, grid.h);

    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = -w[i] / mq[i] + V.value(grid.x(i)) * psi[i];
    return GridFunction(grid, std::move(out));
}

HermiticityResult hermiticity_defect(const ScalingPair& sp, const GridFunction& phi,
                                     const GridFunction& psi) {
    require_same_grid(sp.grid, phi.grid(), "hermiticity_defect");
    require_same_grid(sp.grid, psi.grid(), "hermiticity_defect");

    HermiticityResult res;
    const std::size_t n = phi.size();
    for (const GridFunction* f : {&phi, &psi}) {
        double peak = f->max_abs();
        double edge = std::max(std::abs((*f)[0]), std::abs((*f)[n - 1]));
        if (peak > 0.0 && edge > 1e-8 * peak) {
            res.boundary_warning = true;
            log::warn("hermiticity_defect: boundary amplitude " + std::to_string(edge / peak) +
                      " of peak; compact support is assumed");
        }
    }

    GridFunction pi_phi = apply_pi(sp, phi);
    GridFunction pi_psi = apply_pi(sp, psi);
    res.defect = std::abs(inner_product(pi_phi, psi) - inner_product(phi, pi_psi));
    return res;
}

} // namespace pdm
