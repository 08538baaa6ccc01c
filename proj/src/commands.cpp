#include "pdm/commands.hpp"

#include "pdm/config.hpp"
#include "pdm/errors.hpp"
#include "pdm/log.hpp"
#include "pdm/operators.hpp"
#include "pdm/pct.hpp"
#include "pdm/radial.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

namespace pdm::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            out_ = &file_;
        } else {
            out_ = &std::cout;
        }
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            *out_ << (i ? "," : "") << cells[i];
        *out_ << "\n";
    }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

template <typename F>
int guarded(F&& body) {
    try {
        body();
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "[pdm error] %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "[pdm error] %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "[pdm error] %s\n", e.what());
        return 3;
    }
}

void report_missing(const Spectrum& s) {
    for (const auto& m : s.missing)
        log::warn(solver_name(s.solver) + ": level " + std::to_string(m.n_r) + " missing: " +
                  m.reason);
}

ReferenceModel parse_reference(const std::string& spec) {
    auto colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto eq = rest.find('=');
    std::string key = eq == std::string::npos ? "" : rest.substr(0, eq);
    double value = kNaN;
    if (eq != std::string::npos) {
        const char* b = rest.c_str() + eq + 1;
        char* end = nullptr;
        value = std::strtod(b, &end);
        if (end == b || *end != '\0') value = kNaN;
    }
    if (family == "oscillator" && key == "k" && !std::isnan(value))
        return ReferenceModel::oscillator(value);
    if (family == "coulomb" && key == "e2" && !std::isnan(value))
        return ReferenceModel::coulomb(value);
    throw ConfigError("bad --reference '" + spec +
                      "' (expected oscillator:k=<val> or coulomb:e2=<val>)");
}

bool is_mm(const OrderingParameters& o) { return o.alpha == -0.25 && o.beta == -0.5; }

} // namespace

int run_solve(const std::string& config_path, const SolveOptions& opts) {
    return guarded([&] {
        if (opts.solver != "fd" && opts.solver != "shoot" && opts.solver != "both")
            throw ConfigError("--solver must be fd, shoot or both (got '" + opts.solver + "')");
        ProblemConfig cfg = load_config(config_path);
        RadialProblem p = cfg.to_problem();

        std::vector<Spectrum> results;
        if (opts.solver != "shoot") results.push_back(solve_fd_z(p, cfg.n_max));
        if (opts.solver != "fd") results.push_back(solve_shooting(p, cfg.n_max));

        CsvWriter csv(opts.out);
        csv.row({"n_r", "E", "solver", "node_count", "est_error"});
        for (const Spectrum& s : results) {
            report_missing(s);
            for (const auto& e : s.entries)
                csv.row({std::to_string(e.n_r), fmt(e.energy), solver_name(s.solver),
                         std::to_string(e.node_count), fmt(e.est_error)});
        }
    });
}

int run_effpot(const std::string& config_path, const EffpotOptions& opts) {
    return guarded([&] {
        ProblemConfig cfg = load_config(config_path);
        if (!cfg.potential) throw ConfigError("missing mandatory section [potential]");

        std::vector<OrderingParameters> orderings;
        if (opts.orderings.empty()) {
            orderings.push_back(cfg.ordering);
        } else {
            for (const auto& name : opts.orderings) {
                try {
                    orderings.push_back(find_ordering(name));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        }

        std::vector<std::string> names;
        for (std::size_t i = 0; i < orderings.size(); ++i)
            names.push_back(orderings[i].name.empty() ? "custom" + std::to_string(i)
                                                      : orderings[i].name);

        std::vector<std::string> header = {"r", "V"};
        for (const auto& n : names) header.push_back("Vtilde_" + n);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                header.push_back("diff_" + names[i] + "_vs_" + names[j]);

        CsvWriter csv(opts.out);
        csv.row(header);
        const std::size_t rows = cfg.grid_n;
        for (std::size_t k = 0; k < rows; ++k) {
            double r = cfg.r_min +
                       (cfg.r_max - cfg.r_min) * static_cast<double>(k) / static_cast<double>(rows - 1);
            std::vector<double> vt(orderings.size());
            for (std::size_t i = 0; i < orderings.size(); ++i)
                vt[i] = effective_potential_radial(orderings[i], cfg.mass, *cfg.potential, r,
                                                   cfg.dimension, cfg.laplacian_mode);
            std::vector<std::string> cells = {fmt(r), fmt(cfg.potential->value(r))};
            for (double v : vt) cells.push_back(fmt(v));
            for (std::size_t i = 0; i < vt.size(); ++i)
                for (std::size_t j = i + 1; j < vt.size(); ++j)
                    cells.push_back(fmt(vt[i] - vt[j]));
            csv.row(cells);
        }
    });
}

int run_pct(const std::string& config_path, const PctOptions& opts) {
    return guarded([&] {
        if (opts.reference.empty())
            throw ConfigError("pct needs --reference oscillator:k=<val> or coulomb:e2=<val>");
        ReferenceModel ref = parse_reference(opts.reference);
        ProblemConfig cfg = load_config(config_path);

        if (!is_mm(cfg.ordering))
            throw ConfigError("the pct mapping assumes the mm ordering; remove the override");
        if (cfg.laplacian_mode != LaplacianMode::literal_radial)
            throw ConfigError("pct predictions hold for laplacian_mode = literal_radial");

        double upsilon;
        if (cfg.mass.family() == Profile::Family::power_law)
            upsilon = cfg.mass.param("power");
        else if (cfg.mass.family() == Profile::Family::constant)
            upsilon = 0.0;
        else
            throw ConfigError("pct needs a power-law (or constant) [mass] section");

        std::vector<double> predicted;
        PotentialProfile target = Profile::constant(0.0); // replaced below
        double u_tilde = kNaN, lambda = kNaN;

        if (upsilon == -2.0) {
            if (!cfg.potential)
                throw ConfigError("missing mandatory section [potential] (the upsilon = -2 case "
                                  "keeps the configured target potential)");
            InverseSquareCase c = special_case_inverse_square(cfg.mass, *cfg.potential,
                                                              cfg.dimension, cfg.ell, cfg.parity);
            predicted = inverse_square_predicted(c, ref, cfg.n_max, opts.ref_l);
            target = *cfg.potential;
            u_tilde = c.u_tilde;
            std::fprintf(stderr, "u_tilde_d = %s\n", fmt(u_tilde).c_str());
        } else {
            if (opts.ref_l)
                throw ConfigError("--ref-L only applies to the upsilon = -2 special case; the "
                                  "power-law mapping fixes L = lambda");
            if (cfg.potential)
                throw ConfigError("pct derives [potential] from the reference for upsilon != -2; "
                                  "remove the section");
            MappedTarget t = map_reference_to_target(ref, cfg.mass, cfg.dimension, cfg.ell,
                                                     cfg.n_max, cfg.parity);
            for (const auto& e : t.predicted.entries) predicted.push_back(e.energy);
            target = t.target_potential;
            lambda = t.lambda;
            std::fprintf(stderr, "lambda = %s\n", fmt(lambda).c_str());
        }

        ProblemConfig solved = cfg;
        solved.potential = target;
        RadialProblem p = solved.to_problem();
        Spectrum sh = solve_shooting(p, cfg.n_max);
        Spectrum fd = solve_fd_z(p, cfg.n_max);
        report_missing(sh);
        report_missing(fd);

        CsvWriter csv(opts.out);
        csv.row({"n_r", "E_predicted", "E_shooting", "E_fd", "rel_dev"});
        for (int n = 0; n < static_cast<int>(predicted.size()); ++n) {
            const SpectrumEntry* es = sh.find(n);
            const SpectrumEntry* ef = fd.find(n);
            double dev = kNaN;
            for (const SpectrumEntry* e : {es, ef}) {
                if (e == nullptr) continue;
                double d = std::fabs(e->energy - predicted[n]) /
                           std::max(std::fabs(predicted[n]), 1e-300);
                if (std::isnan(dev) || d > dev) dev = d;
            }
            csv.row({std::to_string(n), fmt(predicted[n]), fmt(es ? es->energy : kNaN),
                     fmt(ef ? ef->energy : kNaN), fmt(dev)});
        }

        if (!opts.out.empty()) {
            PCTMapping map = build_mapping(cfg.mass, cfg.r_min, cfg.r_max);
            CsvWriter mcsv(opts.out + ".mapping.csv");
            mcsv.row({"r", "Z", "U_d", "V_eff"});
            const int rows = 200;
            for (int i = 0; i < rows; ++i) {
                double r = cfg.r_min + (cfg.r_max - cfg.r_min) * i / (rows - 1.0);
                double ud = u_d(cfg.mass, r, cfg.dimension);
                mcsv.row({fmt(r), fmt(map.forward(r)), fmt(ud),
                          fmt(target.value(r) - ud)});
            }
        } else {
            log::info("pct: pass --out to also get the (r, Z, U_d, V_eff) mapping table");
        }
    });
}

namespace {

// ---------------------------------------------------------------------------
// verify-operator battery
// ---------------------------------------------------------------------------

struct VerifyRow {
    std::string name;
    std::size_t n;
    double residual;
    double order; // NaN when not applicable
    bool pass;
};

UniformGrid vbox(double a, double b, std::size_t n) {
    return {a, (b - a) / static_cast<double>(n - 1), n};
}

// residual families; each returns a relative inf-norm residual at grid size n
double plane_wave_residual(double a, double b, std::size_t n) {
    const double k = 2.0;
    UniformGrid g = vbox(a, b, n);
    MassProfile unit(Profile::constant(1.0));
    ScalingPair sp = scaling_pair(unit, g);
    GridFunction psi =
        GridFunction::sample(g, [&](double x) { return std::exp(Complex(0.0, k * x)); });
    GridFunction out = apply_pi(sp, psi);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) err = std::max(err, std::abs(out[i] - k * psi[i]));
    return err / k;
}

double pi_hand_expanded_residual(const MassProfile& m, double a, double b, std::size_t n) {
    UniformGrid g = vbox(a, b, n);
    ScalingPair sp = scaling_pair(m, g);
    const double c = 0.5 * (a + b), w = (b - a) / 10.0;
    GridFunction psi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
    GridFunction out = apply_pi(sp, psi);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        double x = g.x(i);
        double p = std::exp(-(x - c) * (x - c) / (w * w));
        double dp = -2.0 * (x - c) / (w * w) * p;
        Complex exact = Complex(0.0, -1.0) * (sp.f[i] * dp + sp.g[i] * p);
        err = std::max(err, std::abs(out[i] - exact));
        scale = std::max(scale, std::abs(exact));
    }
    return err / scale;
}

double mm_identity_residual(const MassProfile& m, double a, double b, std::size_t n) {
    UniformGrid g = vbox(a, b, n);
    const double c = 0.5 * (a + b), w = (b - a) / 10.0;
    GridFunction psi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
    GridFunction p2 = apply_pi_squared(m, psi);
    GridFunction vr = apply_von_roos_kinetic(find_ordering("mm"), m, psi);
    return max_abs_diff(p2, vr) / std::max(p2.max_abs(), 1e-300);
}

double pi_twice_residual(const MassProfile& m, double a, double b, std::size_t n) {
    UniformGrid g = vbox(a, b, n);
    ScalingPair sp = scaling_pair(m, g);
    const double c = 0.5 * (a + b), w = (b - a) / 10.0;
    GridFunction psi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
    GridFunction twice = apply_pi(sp, apply_pi(sp, psi));
    GridFunction closed = apply_pi_squared(m, psi);
    return max_abs_diff(twice, closed, 4) / std::max(closed.max_abs(), 1e-300);
}

double factorized_residual(const MassProfile& m, const PotentialProfile& V, double a, double b,
                           std::size_t n) {
    UniformGrid g = vbox(a, b, n);
    const double c = 0.5 * (a + b), w = (b - a) / 10.0;
    GridFunction psi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
    GridFunction fac = apply_factorized(m, V, psi);
    GridFunction ref = apply_pi_squared(m, psi);
    for (std::size_t i = 0; i < g.n; ++i) ref[i] += V.value(g.x(i)) * psi[i];
    return max_abs_diff(fac, ref, 4) / std::max(ref.max_abs(), 1e-300);
}

double hermiticity_residual(const MassProfile& m, double a, double b, std::size_t n) {
    UniformGrid g = vbox(a, b, n);
    ScalingPair sp = scaling_pair(m, g);
    const double c = 0.5 * (a + b), w = (b - a) / 10.0;
    GridFunction phi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c - 0.3 * w) * (x - c - 0.3 * w) / (w * w)); });
    GridFunction psi = GridFunction::sample_real(
        g, [&](double x) { return std::exp(-(x - c + 0.2 * w) * (x - c + 0.2 * w) / (w * w)); });
    HermiticityResult h = hermiticity_defect(sp, phi, psi);
    return h.defect / (norm(phi) * norm(psi));
}

} // namespace

int run_verify_operator(const std::string& config_path, const VerifyOperatorOptions& opts) {
    int battery_status = 0;
    int rc = guarded([&] {
        ProblemConfig cfg = load_config(config_path);
        if (!cfg.potential) throw ConfigError("missing mandatory section [potential]");
        const double a = cfg.r_min, b = cfg.r_max;
        const std::size_t n0 = cfg.grid_n;
        const std::size_t sizes[3] = {n0, 2 * n0, 4 * n0};

        enum class Rule { order2, identity, hermitian };
        struct Family {
            std::string name;
            Rule rule;
            std::function<double(std::size_t)> residual;
        };
        std::vector<Family> families = {
            {"pi_plane_wave_constant_mass", Rule::order2,
             [&](std::size_t n) { return plane_wave_residual(a, b, n); }},
            {"pi_vs_hand_expanded", Rule::order2,
             [&](std::size_t n) { return pi_hand_expanded_residual(cfg.mass, a, b, n); }},
            {"pi_squared_vs_von_roos_mm", Rule::identity,
             [&](std::size_t n) { return mm_identity_residual(cfg.mass, a, b, n); }},
            {"pi_twice_vs_closed_form", Rule::order2,
             [&](std::size_t n) { return pi_twice_residual(cfg.mass, a, b, n); }},
            {"factorized_vs_pi_squared_plus_v", Rule::order2,
             [&](std::size_t n) { return factorized_residual(cfg.mass, *cfg.potential, a, b, n); }},
            {"hermiticity_defect", Rule::hermitian,
             [&](std::size_t n) { return hermiticity_residual(cfg.mass, a, b, n); }},
        };

        std::vector<VerifyRow> rows;
        for (const auto& fam : families) {
            double prev = kNaN;
            for (std::size_t si = 0; si < 3; ++si) {
                double res = fam.residual(sizes[si]);
                double order = kNaN;
                bool pass = true;
                switch (fam.rule) {
                case Rule::order2:
                    if (si > 0) {
                        order = std::log2(prev / res);
                        pass = order > 1.6 && order < 2.4;
                    }
                    break;
                case Rule::identity:
                    pass = res <= 1e-12;
                    break;
                case Rule::hermitian:
                    pass = res <= 1e-8;
                    break;
                }
                rows.push_back({fam.name, sizes[si], res, order, pass});
                prev = res;
            }
        }

        CsvWriter csv(opts.out);
        csv.row({"test_name", "grid_N", "residual_inf", "observed_order"});
        for (const auto& r : rows) {
            csv.row({r.name, std::to_string(r.n), fmt(r.residual), fmt(r.order)});
            if (!r.pass) {
                log::warn("verify-operator: " + r.name + " at N = " + std::to_string(r.n) +
                          " failed (residual " + fmt(r.residual) + ", order " + fmt(r.order) + ")");
                battery_status = 3;
            }
        }
    });
    return rc != 0 ? rc : battery_status;
}

int run_orderings(const std::string& out) {
    return guarded([&] {
        CsvWriter csv(out);
        csv.row({"name", "alpha", "beta", "gamma", "c_lap", "c_grad"});
        for (const auto& o : ordering_catalog()) {
            KineticCoefficients k = kinetic_coefficients(o);
            csv.row({o.name, fmt(o.alpha), fmt(o.beta), fmt(o.gamma), fmt(k.c_lap), fmt(k.c_grad)});
        }
    });
}

} // namespace pdm::cli
