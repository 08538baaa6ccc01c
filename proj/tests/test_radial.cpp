#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/errors.hpp"
#include "pdm/radial.hpp"

#include <cmath>

using namespace pdm;

namespace {

const MassProfile kUnitMass = make_power_law(1.0, 0.0);

RadialProblem oscillator_d3(int ell = 0) {
    RadialProblem p(kUnitMass, Profile::power_law(1.0, 2.0));
    p.dimension = 3;
    p.ell = ell;
    p.r_max = 9.0;
    p.grid_n = 1000;
    return p;
}

void check_monotone_nodes(const Spectrum& s) {
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        CHECK(s.entries[i].node_count == s.entries[i].n_r);
        if (i > 0) CHECK(s.entries[i].energy > s.entries[i - 1].energy);
    }
}

} // namespace

TEST_CASE("dimension-shifted angular momentum") {
    CHECK(l_d(0, 3) == 0.0);
    CHECK(l_d(0, 5) == 1.0);
    CHECK(l_d(1, 3) == 1.0);
    CHECK(l_d(2, 2) == 1.5);
    CHECK(l_d(Parity::odd) == 0.0);
    CHECK(l_d(Parity::even) == -1.0);
    CHECK_THROWS_AS(l_d(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(l_d(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(l_d(Parity::none), std::invalid_argument);
}

TEST_CASE("constant-mass oscillator spectrum from both solvers") {
    RadialProblem p = oscillator_d3();
    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum s = solver(p, 2);
        REQUIRE(s.entries.size() == 3);
        for (int n = 0; n <= 2; ++n) {
            double exact = 4.0 * n + 3.0;
            CHECK(s.entries[n].energy == doctest::Approx(exact).epsilon(1e-3));
        }
        check_monotone_nodes(s);
        CHECK(s.missing.empty());
    }
}

TEST_CASE("cross-solver agreement on the oscillator is tight") {
    RadialProblem p = oscillator_d3();
    Spectrum sh = solve_shooting(p, 2);
    Spectrum fd = solve_fd_z(p, 2);
    for (int n = 0; n <= 2; ++n) {
        double a = sh.find(n)->energy, b = fd.find(n)->energy;
        CHECK(std::fabs(a - b) / std::fabs(a) < 1e-3);
    }
}

TEST_CASE("hydrogen-like ground state at e^2 = 2") {
    RadialProblem p(kUnitMass, Profile::power_law(-2.0, -1.0));
    p.r_max = 16.0;
    p.grid_n = 1500;
    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum s = solver(p, 0);
        REQUIRE(s.entries.size() == 1);
        CHECK(s.entries[0].energy == doctest::Approx(-1.0).epsilon(5e-3));
        CHECK(s.entries[0].node_count == 0);
    }
}

TEST_CASE("levels above the box continuum threshold are reported missing") {
    RadialProblem p(kUnitMass, Profile::power_law(-2.0, -1.0));
    p.r_max = 16.0;
    p.grid_n = 1200;
    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum s = solver(p, 3);
        // E_2 = -1/9 and E_3 = -1/16 sit above W(r_max) = -0.125
        CHECK(s.find(0) != nullptr);
        CHECK(s.find(1) != nullptr);
        CHECK(s.find(2) == nullptr);
        CHECK(s.find(3) == nullptr);
        REQUIRE(s.missing.size() == 2);
        CHECK(s.missing[0].reason.find("threshold") != std::string::npos);
    }
}

TEST_CASE("zero potential on a box binds nothing and raises nothing") {
    RadialProblem p(kUnitMass, Profile::constant(0.0));
    p.r_max = 10.0;
    p.grid_n = 400;
    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum s = solver(p, 2);
        CHECK(s.entries.empty());
        CHECK(s.missing.size() == 3);
    }
}

TEST_CASE("PDM target problem m = r^2, V = r^4/4 at d = 3, l = 1") {
    RadialProblem p(make_power_law(1.0, 2.0), Profile::power_law(0.25, 4.0));
    p.dimension = 3;
    p.ell = 1;
    p.r_max = 8.0;
    p.grid_n = 1500;
    Spectrum sh = solve_shooting(p, 1);
    Spectrum fd = solve_fd_z(p, 1);
    for (int n = 0; n <= 1; ++n) {
        double exact = 4.0 * n + 3.0; // lambda = 0 oscillator tower
        REQUIRE(sh.find(n) != nullptr);
        REQUIRE(fd.find(n) != nullptr);
        CHECK(sh.find(n)->energy == doctest::Approx(exact).epsilon(5e-3));
        CHECK(fd.find(n)->energy == doctest::Approx(exact).epsilon(5e-3));
        CHECK(std::fabs(sh.find(n)->energy - fd.find(n)->energy) / exact < 1e-3);
    }
    check_monotone_nodes(sh);
    check_monotone_nodes(fd);
}

TEST_CASE("inverse-square mass with a log-squared potential") {
    // m = r^-2, V = (ln r)^2, d = 3, l = 0: spectrum (2n+1) + 2
    RadialProblem p(make_power_law(1.0, -2.0), parse_profile("ln(x)^2", "x"));
    p.dimension = 3;
    p.ell = 0;
    p.r_min = 1e-6;
    p.r_max = 2981.0; // Z = ln r spans about (-13.8, 8)
    p.grid_n = 2000;
    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum s = solver(p, 1);
        REQUIRE(s.entries.size() == 2);
        CHECK(s.entries[0].energy == doctest::Approx(3.0).epsilon(5e-3));
        CHECK(s.entries[1].energy == doctest::Approx(5.0).epsilon(5e-3));
        check_monotone_nodes(s);
    }
}

TEST_CASE("inter-dimensional degeneracy at constant mass") {
    RadialProblem a = oscillator_d3(1); // d = 3, l = 1
    RadialProblem b = oscillator_d3(0);
    b.dimension = 5; // same l_d = 1
    Spectrum sa = solve_fd_z(a, 1), sb = solve_fd_z(b, 1);
    for (int n = 0; n <= 1; ++n)
        CHECK(std::fabs(sa.find(n)->energy - sb.find(n)->energy) /
                  std::fabs(sa.find(n)->energy) <
              1e-3);
}

TEST_CASE("d = 1 parity spectra for the constant-mass oscillator") {
    RadialProblem even(kUnitMass, Profile::power_law(1.0, 2.0));
    even.dimension = 1;
    even.parity = Parity::even;
    even.r_max = 9.0;
    even.grid_n = 1000;
    RadialProblem odd = even;
    odd.parity = Parity::odd;

    for (auto solver : {solve_shooting, solve_fd_z}) {
        Spectrum se = solver(even, 1);
        Spectrum so = solver(odd, 1);
        REQUIRE(se.entries.size() == 2);
        REQUIRE(so.entries.size() == 2);
        // full-line levels 2k+1 split into even {1, 5} and odd {3, 7}
        CHECK(se.entries[0].energy == doctest::Approx(1.0).epsilon(5e-3));
        CHECK(so.entries[0].energy == doctest::Approx(3.0).epsilon(5e-3));
        CHECK(se.entries[1].energy == doctest::Approx(5.0).epsilon(5e-3));
        CHECK(so.entries[1].energy == doctest::Approx(7.0).epsilon(5e-3));
        // interleaving
        CHECK(se.entries[0].energy < so.entries[0].energy);
        CHECK(so.entries[0].energy < se.entries[1].energy);
        CHECK(se.entries[1].energy < so.entries[1].energy);
    }
}

TEST_CASE("d = 1 parity interleaving survives a position-dependent mass") {
    MassProfile m(Profile::rational(1.0, 1.0, 1.0, 0.0)); // 1 + x^2, symmetric
    RadialProblem even(m, Profile::power_law(1.0, 2.0));
    even.dimension = 1;
    even.parity = Parity::even;
    even.r_max = 9.0;
    even.grid_n = 1200;
    RadialProblem odd = even;
    odd.parity = Parity::odd;

    Spectrum se = solve_shooting(even, 1);
    Spectrum so = solve_shooting(odd, 1);
    REQUIRE(se.entries.size() == 2);
    REQUIRE(so.entries.size() == 2);
    CHECK(se.entries[0].energy < so.entries[0].energy);
    CHECK(so.entries[0].energy < se.entries[1].energy);
    CHECK(se.entries[1].energy < so.entries[1].energy);

    Spectrum fe = solve_fd_z(even, 1);
    for (int n = 0; n <= 1; ++n)
        CHECK(std::fabs(fe.find(n)->energy - se.find(n)->energy) /
                  std::fabs(se.find(n)->energy) <
              1e-3);
}

TEST_CASE("fd eigenvalues converge at second order in h") {
    double errs[3];
    std::size_t grids[3] = {250, 500, 1000};
    for (int i = 0; i < 3; ++i) {
        RadialProblem p = oscillator_d3();
        p.grid_n = grids[i];
        Spectrum s = solve_fd_z(p, 0);
        errs[i] = std::fabs(s.entries[0].energy - 3.0);
    }
    for (int i = 0; i + 1 < 3; ++i) {
        double order = std::log2(errs[i] / errs[i + 1]);
        CHECK(order == doctest::Approx(2.0).epsilon(0.25));
    }
}

TEST_CASE("est_error tracks the real discretization error") {
    RadialProblem p = oscillator_d3();
    p.grid_n = 500;
    Spectrum s = solve_fd_z(p, 0);
    double real_err = std::fabs(s.entries[0].energy - 3.0);
    CHECK(s.entries[0].est_error > 0.1 * real_err);
    CHECK(s.entries[0].est_error < 30.0 * real_err);
}

TEST_CASE("coarse grids flag high levels as unreliable") {
    RadialProblem p = oscillator_d3();
    p.grid_n = 60;
    Spectrum s = solve_fd_z(p, 8);
    REQUIRE(s.find(0) != nullptr);
    REQUIRE(s.find(8) != nullptr);
    CHECK(s.find(0)->reliable);
    CHECK_FALSE(s.find(8)->reliable);
}

TEST_CASE("eigenfunctions are normalized with the right node counts") {
    RadialProblem p = oscillator_d3();
    SUBCASE("ground state matches the closed form within 1% pointwise") {
        GridFunction R = eigenfunction(p, 0);
        auto rv = R.real_values();
        // normalized R(r) = 2/pi^{1/4} r exp(-r^2/2), peak ~0.912 at r = 1
        double C = 2.0 / std::pow(M_PI, 0.25);
        double peak = 0.0;
        for (std::size_t i = 0; i < rv.size(); ++i) {
            double r = R.grid().x(i);
            peak = std::max(peak, std::fabs(C * r * std::exp(-0.5 * r * r)));
        }
        for (std::size_t i = 0; i < rv.size(); ++i) {
            double r = R.grid().x(i);
            double exact = C * r * std::exp(-0.5 * r * r);
            CHECK(std::fabs(rv[i] - exact) < 0.01 * peak);
        }
        int nodes = 0, last = 0;
        for (double v : rv) {
            if (std::fabs(v) < 1e-8 * peak) continue;
            int sgn = v > 0.0 ? 1 : -1;
            if (last != 0 && sgn != last) ++nodes;
            last = sgn;
        }
        CHECK(nodes == 0);
    }
    SUBCASE("norm is 1 to 1e-8") {
        for (int n : {0, 2}) {
            GridFunction R = eigenfunction(p, n);
            double acc = 0.0;
            auto rv = R.real_values();
            for (std::size_t i = 0; i + 1 < rv.size(); ++i)
                acc += 0.5 * (rv[i] * rv[i] + rv[i + 1] * rv[i + 1]) * R.grid().h;
            CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    SUBCASE("asking for an unbound level raises") {
        RadialProblem free(kUnitMass, Profile::constant(0.0));
        free.r_max = 10.0;
        free.grid_n = 300;
        CHECK_THROWS_AS(eigenfunction(free, 0), SolverError);
    }
}

TEST_CASE("problem validation catches bad setups") {
    RadialProblem p = oscillator_d3();
    p.r_min = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = oscillator_d3();
    p.grid_n = 10;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = oscillator_d3();
    p.dimension = 1; // parity missing
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = oscillator_d3();
    p.ell = -2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
