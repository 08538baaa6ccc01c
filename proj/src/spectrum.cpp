#include "pdm/spectrum.hpp"

#include <stdexcept>

namespace pdm {

double l_d(int ell, int d) {
    if (d < 2) throw std::invalid_argument("l_d(ell, d) needs d >= 2; use the parity form for d = 1");
    if (ell < 0) throw std::invalid_argument("l_d: ell must be >= 0");
    return static_cast<double>(ell) + 0.5 * static_cast<double>(d - 3);
}

double l_d(Parity parity) {
    switch (parity) {
    case Parity::even:
        return -1.0;
    case Parity::odd:
        return 0.0;
    case Parity::none:
        break;
    }
    throw std::invalid_argument("d = 1 problems need an even or odd parity tag");
}

double RadialProblem::effective_l() const {
    return dimension == 1 ? l_d(parity) : l_d(ell, dimension);
}

void RadialProblem::validate() const {
    if (dimension < 1) throw std::invalid_argument("radial problem: dimension must be >= 1");
    if (dimension == 1) {
        if (parity == Parity::none)
            throw std::invalid_argument("radial problem: d = 1 needs parity = even or odd");
    } else if (ell < 0) {
        throw std::invalid_argument("radial problem: ell must be >= 0");
    }
    if (!(r_min > 0.0)) throw std::invalid_argument("radial problem: r_min must be positive");
    if (!(r_max > r_min)) throw std::invalid_argument("radial problem: r_max must exceed r_min");
    if (grid_n < 50) throw std::invalid_argument("radial problem: grid_n must be >= 50");
    if (!(energy_tol > 0.0)) throw std::invalid_argument("radial problem: energy_tol must be positive");
}

std::string solver_name(SolverKind s) {
    switch (s) {
    case SolverKind::shooting:
        return "shoot";
    case SolverKind::fd_z:
        return "fd";
    case SolverKind::predicted:
        return "predicted";
    }
    return "?";
}

const SpectrumEntry* Spectrum::find(int n_r) const {
    for (const auto& e : entries)
        if (e.n_r == n_r) return &e;
    return nullptr;
}

} // namespace pdm
