#include "pdm/radial.hpp"

#include "pdm/errors.hpp"
#include "pdm/log.hpp"
#include "pdm/pct.hpp"
#include "pdm/quadrature.hpp"
#include "pdm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pdm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double positive_mass(const MassProfile& m, double r) {
    double v = m.value(r);
    if (!(v > 0.0))
        throw NonPositiveMassError("mass profile " + m.describe() + " is not positive at r = " +
                                   std::to_string(r));
    return v;
}

// Effective potential of the transformed (constant-coefficient kinetic)
// problem: l_d(l_d+1)/(r^2 m) + V + [ordering/mode terms] - U_d. For the mm
// ordering in literal mode the bracket vanishes identically.
struct ZFormPotential {
    const RadialProblem& p;
    bool full_mode; // apply the problem's laplacian_mode (shooting view)
    double ll;      // l_d (l_d + 1)
    double c_lap, c_grad;

    ZFormPotential(const RadialProblem& prob, bool use_problem_mode)
        : p(prob), full_mode(use_problem_mode &&
                             prob.laplacian_mode == LaplacianMode::full_laplacian) {
        double ld = p.effective_l();
        ll = ld * (ld + 1.0);
        KineticCoefficients k = kinetic_coefficients(p.ordering);
        c_lap = k.c_lap;
        c_grad = k.c_grad;
    }

    double operator()(double r) const {
        double mv = positive_mass(p.mass, r);
        double m1 = p.mass.d1(r);
        double m2 = p.mass.d2(r);
        double m2eff = full_mode ? m2 + (p.dimension - 1) * m1 / r : m2;
        double delta = (c_lap * m2eff - 0.25 * m2) / (mv * mv) -
                       (c_grad - 0.4375) * m1 * m1 / (mv * mv * mv);
        double shift = p.dimension > 1 ? m1 * (p.dimension - 1) / (2.0 * r * mv * mv) : 0.0;
        return ll / (r * r * mv) + p.potential.value(r) + delta - shift;
    }
};

// ---------------------------------------------------------------------------
// shooting solver
// ---------------------------------------------------------------------------

std::vector<double> build_shooting_mesh(const RadialProblem& p) {
    std::vector<double> pts;
    pts.reserve(3 * p.grid_n);

    const double span = p.r_max - p.r_min;
    for (std::size_t i = 0; i < p.grid_n; ++i)
        pts.push_back(p.r_min + span * static_cast<double>(i) / static_cast<double>(p.grid_n - 1));

    // geometric refinement near r_min resolves the centrifugal turn-on
    double uniform_h = span / static_cast<double>(p.grid_n - 1);
    double stop = std::min(p.r_min + 4.0 * uniform_h, p.r_max);
    for (double r = p.r_min; r < stop; r *= 1.05) pts.push_back(r);

    // pullback of a uniform PCT grid equidistributes the local wavelength
    // for strongly varying masses
    bool constant_mass = p.mass.family() == Profile::Family::constant ||
                         (p.mass.family() == Profile::Family::power_law &&
                          p.mass.param("power") == 0.0);
    if (!constant_mass) {
        PCTMapping map = PCTMapping::build(p.mass, p.r_min, p.r_max);
        double z_lo = map.forward(p.r_min), z_hi = map.forward(p.r_max);
        for (std::size_t i = 1; i + 1 < p.grid_n; ++i) {
            double z = z_lo + (z_hi - z_lo) * static_cast<double>(i) / static_cast<double>(p.grid_n - 1);
            pts.push_back(map.inverse(z));
        }
    }

    std::sort(pts.begin(), pts.end());
    std::vector<double> mesh;
    mesh.reserve(pts.size());
    mesh.push_back(p.r_min);
    for (double r : pts)
        if (r - mesh.back() > 1e-10 * std::max(std::fabs(r), p.r_min) && r < p.r_max)
            mesh.push_back(r);
    mesh.push_back(p.r_max);
    return mesh;
}

// Coefficients of R'' = (P - E M) R + Q R' sampled at mesh nodes and
// midpoints (index 2i = node i, 2i+1 = midpoint of cell i).
struct ShootingCoeffs {
    std::vector<double> mesh;
    std::vector<double> P, Q, M;
    std::vector<double> w; // transformed-frame potential at the mesh nodes

    explicit ShootingCoeffs(const RadialProblem& p) : mesh(build_shooting_mesh(p)) {
        const std::size_t n = mesh.size();
        P.resize(2 * n - 1);
        Q.resize(2 * n - 1);
        M.resize(2 * n - 1);
        w.resize(n);

        double ld = p.effective_l();
        double ll = ld * (ld + 1.0);
        ZFormPotential wz(p, /*use_problem_mode=*/true);

        auto fill = [&](std::size_t idx, double r) {
            double mv = positive_mass(p.mass, r);
            double m1 = p.mass.d1(r);
            double vt = effective_potential_radial(p.ordering, p.mass, p.potential, r, p.dimension,
                                                   p.laplacian_mode);
            P[idx] = ll / (r * r) + mv * vt -
                     (p.dimension > 1 ? (m1 / mv) * (p.dimension - 1) / (2.0 * r) : 0.0);
            Q[idx] = m1 / mv;
            M[idx] = mv;
        };
        for (std::size_t i = 0; i < n; ++i) {
            fill(2 * i, mesh[i]);
            if (i + 1 < n) fill(2 * i + 1, 0.5 * (mesh[i] + mesh[i + 1]));
            w[i] = wz(mesh[i]);
        }
    }
};

struct ShotResult {
    int nodes = 0;
    double end_value = 0.0;
    double end_over_max = 0.0;
};

// One outward RK4 march at energy E; optionally records R at the mesh nodes
// (unscaled marches renormalize against overflow, which keeps node counts
// and signs but not amplitudes, so recording disables renormalization).
ShotResult integrate(const ShootingCoeffs& c, const RadialProblem& p, double E,
                     std::vector<double>* record = nullptr) {
    const std::size_t n = c.mesh.size();
    double R = 0.0, S = 1.0;
    if (p.dimension == 1 && p.parity == Parity::even) {
        R = 1.0;
        S = 0.0;
    }
    if (record) {
        record->clear();
        record->reserve(n);
        record->push_back(R);
    }

    ShotResult res;
    double max_abs = std::fabs(R);
    int last_sign = R > 0.0 ? 1 : R < 0.0 ? -1 : 0;

    auto deriv = [&](std::size_t idx, double r_, double s_, double& dr, double& ds) {
        dr = s_;
        ds = (c.P[idx] - E * c.M[idx]) * r_ + c.Q[idx] * s_;
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = c.mesh[i + 1] - c.mesh[i];
        double k1r, k1s, k2r, k2s, k3r, k3s, k4r, k4s;
        deriv(2 * i, R, S, k1r, k1s);
        deriv(2 * i + 1, R + 0.5 * h * k1r, S + 0.5 * h * k1s, k2r, k2s);
        deriv(2 * i + 1, R + 0.5 * h * k2r, S + 0.5 * h * k2s, k3r, k3s);
        deriv(2 * i + 2, R + h * k3r, S + h * k3s, k4r, k4s);
        R += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        S += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);

        if (!std::isfinite(R) || !std::isfinite(S))
            throw SolverError("shooting integration overflowed at r = " +
                              std::to_string(c.mesh[i + 1]) +
                              (record ? " while recording the eigenfunction" : ""));

        int sign = R > 0.0 ? 1 : R < 0.0 ? -1 : 0;
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++res.nodes;
            last_sign = sign;
        }
        max_abs = std::max(max_abs, std::fabs(R));
        if (record) {
            record->push_back(R);
        } else {
            double mag = std::max(std::fabs(R), std::fabs(S));
            if (mag > 1e250) { // linear problem: positive rescaling is free
                R /= mag;
                S /= mag;
                max_abs /= mag;
            }
        }
    }
    res.end_value = R;
    res.end_over_max = max_abs > 0.0 ? std::fabs(R) / max_abs : 0.0;
    return res;
}

bool level_reliable(const std::vector<double>& mesh, const std::vector<double>& w,
                    const std::vector<double>& mass_nodes, double E) {
    double min_ppw = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        double kin = E - w[i];
        if (kin <= 0.0) continue;
        double dz = std::sqrt(mass_nodes[i]) * (mesh[i + 1] - mesh[i]);
        min_ppw = std::min(min_ppw, 2.0 * M_PI / (std::sqrt(kin) * dz));
    }
    return min_ppw >= 20.0;
}

Spectrum solve_shooting_impl(const RadialProblem& p, int n_max, bool with_est) {
    p.validate();
    if (n_max < 0) throw std::invalid_argument("solve_shooting: n_max must be >= 0");

    ShootingCoeffs c(p);
    std::vector<double> mass_nodes(c.mesh.size());
    for (std::size_t i = 0; i < c.mesh.size(); ++i) mass_nodes[i] = c.M[2 * i];

    Spectrum spec;
    spec.solver = SolverKind::shooting;

    double floor = *std::min_element(c.w.begin(), c.w.end());
    double ceiling = c.w.back();
    if (!(ceiling > floor)) {
        for (int k = 0; k <= n_max; ++k)
            spec.missing.push_back({k, "no binding energy window: W(r_max) <= min W"});
        return spec;
    }

    auto nodes_at = [&](double E) { return integrate(c, p, E).nodes; };

    double lo = floor - 1e-3 * (1.0 + std::fabs(floor));
    for (int guard = 0; nodes_at(lo) > 0 && guard < 60; ++guard)
        lo -= std::exp2(guard) * (1.0 + std::fabs(lo));

    int ceiling_nodes = nodes_at(ceiling);
    Spectrum coarse;
    if (with_est && p.grid_n >= 100) {
        RadialProblem half = p;
        half.grid_n = p.grid_n / 2;
        coarse = solve_shooting_impl(half, n_max, false);
    }

    for (int k = 0; k <= n_max; ++k) {
        if (ceiling_nodes <= k) {
            std::ostringstream os;
            os << "no node transition below the continuum threshold W(r_max) = " << ceiling
               << " (found " << ceiling_nodes << " bound levels)";
            spec.missing.push_back({k, os.str()});
            continue;
        }
        double a = lo, b = ceiling;
        for (int iter = 0; iter < 260 && b - a > p.energy_tol * std::max(1.0, std::fabs(a)); ++iter) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (nodes_at(mid) <= k)
                a = mid;
            else
                b = mid;
        }
        double energy = 0.5 * (a + b);
        log::debug("shooting level " + std::to_string(k) + ": E = " + std::to_string(energy) +
                   ", bracket width " + std::to_string(b - a));

        SpectrumEntry e;
        e.n_r = k;
        e.energy = energy;
        e.node_count = integrate(c, p, a).nodes;
        e.est_error = kNaN;
        if (with_est) {
            if (const SpectrumEntry* ce = coarse.find(k)) e.est_error = std::fabs(energy - ce->energy);
        }
        e.reliable = level_reliable(c.mesh, c.w, mass_nodes, energy);
        if (!e.reliable)
            log::info("shooting level " + std::to_string(k) +
                      " has fewer than 20 points per oscillation; treat it as unreliable");
        spec.entries.push_back(e);
        lo = b; // nodes(b) = k+1: valid lower bracket for the next level
    }
    return spec;
}

// ---------------------------------------------------------------------------
// finite differences in the PCT coordinate
// ---------------------------------------------------------------------------

struct FdSetup {
    PCTMapping map;
    std::vector<double> z, r, w;
    double h = 0.0;
    bool neumann_inner = false; // even-parity d = 1
    num::Tridiagonal t;
    std::size_t offset = 0; // grid index of the first matrix row
};

FdSetup fd_setup(const RadialProblem& p) {
    FdSetup s{PCTMapping::build(p.mass, p.r_min, p.r_max), {}, {}, {}, 0.0, false, {}, 0};
    const std::size_t n = p.grid_n;
    double z_lo = s.map.forward(p.r_min);
    double z_hi = s.map.forward(p.r_max);
    s.h = (z_hi - z_lo) / static_cast<double>(n - 1);

    s.z.resize(n);
    s.r.resize(n);
    s.w.resize(n);
    ZFormPotential wz(p, /*use_problem_mode=*/false);
    for (std::size_t i = 0; i < n; ++i) {
        s.z[i] = z_lo + s.h * static_cast<double>(i);
        s.r[i] = i == 0 ? p.r_min : i == n - 1 ? p.r_max : s.map.inverse(s.z[i]);
        s.w[i] = wz(s.r[i]);
    }

    s.neumann_inner = p.dimension == 1 && p.parity == Parity::even;
    const double inv_h2 = 1.0 / (s.h * s.h);
    if (s.neumann_inner) {
        // reflecting inner end: row 0 couples to row 1 with weight -2/h^2;
        // a diagonal similarity makes it symmetric with off = sqrt(2)/h^2
        const std::size_t m = n - 1; // rows 0 .. n-2 (Dirichlet at the outer face)
        s.offset = 0;
        s.t.diag.resize(m);
        s.t.off.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) s.t.diag[i] = 2.0 * inv_h2 + s.w[i];
        for (std::size_t i = 1; i < m; ++i) s.t.off[i] = -inv_h2;
        s.t.off[1] = -std::sqrt(2.0) * inv_h2;
    } else {
        const std::size_t m = n - 2; // interior rows with Dirichlet ends
        s.offset = 1;
        s.t.diag.resize(m);
        s.t.off.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) s.t.diag[i] = 2.0 * inv_h2 + s.w[i + 1];
        for (std::size_t i = 1; i < m; ++i) s.t.off[i] = -inv_h2;
    }
    return s;
}

int count_nodes(const std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::fabs(x));
    int nodes = 0, last = 0;
    for (double x : v) {
        if (std::fabs(x) <= 1e-8 * peak) continue; // exponential tails carry sign noise
        int sign = x > 0.0 ? 1 : -1;
        if (last != 0 && sign != last) ++nodes;
        last = sign;
    }
    return nodes;
}

Spectrum solve_fd_z_impl(const RadialProblem& p, int n_max, bool with_est) {
    p.validate();
    if (n_max < 0) throw std::invalid_argument("solve_fd_z: n_max must be >= 0");

    FdSetup s = fd_setup(p);
    Spectrum spec;
    spec.solver = SolverKind::fd_z;

    double ceiling = s.w.back();

    Spectrum coarse;
    if (with_est && p.grid_n >= 100) {
        RadialProblem half = p;
        half.grid_n = p.grid_n / 2;
        coarse = solve_fd_z_impl(half, n_max, false);
    }

    for (int k = 0; k <= n_max; ++k) {
        if (static_cast<std::size_t>(k) >= s.t.size()) {
            spec.missing.push_back({k, "matrix smaller than the requested level"});
            continue;
        }
        double lambda = num::eigenvalue(s.t, k, 1e-12);
        if (lambda >= ceiling) {
            std::ostringstream os;
            os << "eigenvalue " << lambda << " is above the continuum threshold W(r_max) = "
               << ceiling;
            spec.missing.push_back({k, os.str()});
            continue;
        }
        std::vector<double> v = num::eigenvector(s.t, lambda);
        if (s.neumann_inner) v[0] *= std::sqrt(2.0); // undo the similarity scaling

        SpectrumEntry e;
        e.n_r = k;
        e.energy = lambda;
        e.node_count = count_nodes(v);
        e.est_error = kNaN;
        if (with_est) {
            if (const SpectrumEntry* ce = coarse.find(k)) e.est_error = std::fabs(lambda - ce->energy);
        }
        double min_ppw = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.w.size(); ++i) {
            double kin = lambda - s.w[i];
            if (kin > 0.0) min_ppw = std::min(min_ppw, 2.0 * M_PI / (std::sqrt(kin) * s.h));
        }
        e.reliable = min_ppw >= 20.0;
        if (!e.reliable)
            log::info("fd level " + std::to_string(k) +
                      " has fewer than 20 points per oscillation; treat it as unreliable");
        spec.entries.push_back(e);
    }
    return spec;
}

} // namespace

Spectrum solve_shooting(const RadialProblem& p, int n_max) {
    return solve_shooting_impl(p, n_max, true);
}

Spectrum solve_fd_z(const RadialProblem& p, int n_max) { return solve_fd_z_impl(p, n_max, true); }

// A single-sided shooting record carries the growing admixture through the
// outer forbidden region, so the eigenfunction comes from the global FD
// eigenvector in Z pulled back to r instead.
GridFunction eigenfunction(const RadialProblem& p, int n_r) {
    p.validate();
    if (n_r < 0) throw std::invalid_argument("eigenfunction: n_r must be >= 0");

    FdSetup s = fd_setup(p);
    if (static_cast<std::size_t>(n_r) >= s.t.size())
        throw SolverError("level n_r = " + std::to_string(n_r) + " exceeds the grid resolution");
    double lambda = num::eigenvalue(s.t, n_r, 1e-12);
    if (lambda >= s.w.back())
        throw SolverError("level n_r = " + std::to_string(n_r) +
                          " not found: eigenvalue above the continuum threshold W(r_max)");

    std::vector<double> v = num::eigenvector(s.t, lambda);
    if (s.neumann_inner) v[0] *= std::sqrt(2.0);
    if (count_nodes(v) != n_r)
        throw SolverError("eigenfunction node count does not match n_r = " + std::to_string(n_r));

    const std::size_t n = p.grid_n;
    std::vector<Complex> phi_vals(n, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) phi_vals[i + s.offset] = v[i];
    GridFunction phi(UniformGrid{s.z[0], s.h, n}, std::move(phi_vals));

    GridFunction R = wavefunction_pullback(s.map, p.mass, phi);

    auto rv = R.real_values();
    std::vector<double> xs(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = R.grid().x(i);
        sq[i] = rv[i] * rv[i];
    }
    double nrm = std::sqrt(num::trapezoid(xs, sq));
    if (!(nrm > 0.0)) throw SolverError("eigenfunction has zero norm");
    double peak = 0.0;
    for (double x : rv) peak = std::max(peak, std::fabs(x));
    double sign = 1.0;
    for (double x : rv) {
        if (std::fabs(x) > 0.1 * peak) {
            sign = x > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    for (double& x : rv) x *= sign / nrm;
    return GridFunction(R.grid(), rv);
}

} // namespace pdm
