#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/errors.hpp"
#include "pdm/ordering.hpp"
#include "pdm/rational.hpp"

#include <cmath>

using namespace pdm;

TEST_CASE("rational arithmetic basics") {
    Rational a(1, 4), b(7, 16);
    CHECK((a + b) == Rational(11, 16));
    CHECK((a * b) == Rational(7, 64));
    CHECK((a - b) == Rational(-3, 16));
    CHECK((a / b) == Rational(4, 7));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));

    CHECK(Rational::from_double(0.25) == Rational(1, 4));
    CHECK(Rational::from_double(-0.4375) == Rational(-7, 16));
    CHECK(Rational::from_double(3.0) == Rational(3));

    CHECK(Rational::parse("7/16") == Rational(7, 16));
    CHECK(Rational::parse("-0.25") == Rational(-1, 4));
    CHECK(Rational::parse("2e-3") == Rational(1, 500));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);

    CHECK(*Rational(9, 16).sqrt_exact() == Rational(3, 4));
    CHECK(!Rational(1, 2).sqrt_exact().has_value());
    CHECK(!Rational(-1, 4).sqrt_exact().has_value());
}

TEST_CASE("make_ordering fixes gamma from the constraint") {
    OrderingParameters o = make_ordering(-0.25, -0.5);
    CHECK(o.alpha == -0.25);
    CHECK(o.beta == -0.5);
    CHECK(o.gamma == -0.25);
    REQUIRE(o.is_exact());
    CHECK((*o.exact)[2] == Rational(-1, 4));

    OrderingParameters zk = make_ordering(-0.5, 0.0);
    CHECK(zk.gamma == -0.5);

    OrderingParameters gwm = make_ordering(0.0, 0.0);
    CHECK(gwm.gamma == -1.0);
}

TEST_CASE("catalog holds the five named orderings") {
    const auto& cat = ordering_catalog();
    REQUIRE(cat.size() == 5);
    for (const auto& o : cat) {
        REQUIRE(o.is_exact());
        Rational sum = (*o.exact)[0] + (*o.exact)[1] + (*o.exact)[2];
        CHECK(sum == Rational(-1)); // constraint holds exactly
    }

    OrderingParameters zk = find_ordering("zhu_kroemer");
    CHECK(zk.alpha == -0.5);
    CHECK(zk.beta == 0.0);
    CHECK(zk.gamma == -0.5);

    OrderingParameters mm = find_ordering("mm");
    CHECK(mm.alpha == -0.25);
    CHECK(mm.beta == -0.5);
    CHECK(mm.gamma == -0.25);

    OrderingParameters lk = find_ordering("li_kuhn");
    CHECK(lk.alpha == 0.0);
    CHECK(lk.beta == -0.5);
    CHECK(lk.gamma == -0.5);

    OrderingParameters gw = find_ordering("gora_williams");
    CHECK(gw.alpha == -1.0);
    CHECK(gw.beta == 0.0);

    OrderingParameters bdd = find_ordering("ben_daniel_duke");
    CHECK(bdd.beta == -1.0);
    CHECK(bdd.gamma == 0.0);

    CHECK_THROWS_AS(find_ordering("weyl"), std::invalid_argument);
}

TEST_CASE("custom ordering specs parse exactly") {
    OrderingParameters c = find_ordering("custom:-0.25,-0.5");
    OrderingParameters mm = find_ordering("mm");
    CHECK(c.alpha == mm.alpha);
    CHECK(c.beta == mm.beta);
    CHECK(c.gamma == mm.gamma);

    OrderingParameters f = find_ordering("custom:-1/4,-1/2");
    CHECK(f.alpha == mm.alpha);

    CHECK_THROWS_AS(find_ordering("custom:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(find_ordering("custom:a,b"), std::invalid_argument);
}

TEST_CASE("kinetic coefficients for the catalog") {
    auto coeffs = [](const char* name) {
        KineticCoefficients k = kinetic_coefficients(find_ordering(name));
        REQUIRE(k.exact.has_value());
        return std::array<Rational, 2>{(*k.exact)[0], (*k.exact)[1]};
    };
    CHECK(coeffs("mm") == std::array<Rational, 2>{Rational(1, 4), Rational(7, 16)});
    CHECK(coeffs("zhu_kroemer") == std::array<Rational, 2>{Rational(1, 2), Rational(3, 4)});
    CHECK(coeffs("gora_williams") == std::array<Rational, 2>{Rational(1, 2), Rational(1)});
    CHECK(coeffs("li_kuhn") == std::array<Rational, 2>{Rational(1, 4), Rational(1, 2)});
    CHECK(coeffs("ben_daniel_duke") == std::array<Rational, 2>{Rational(0), Rational(0)});
}

TEST_CASE("coefficient matching recovers orderings") {
    SUBCASE("the (1/4, 7/16) pair has the exact double root (-1/4, -1/2, -1/4)") {
        auto sols = solve_parameters_from_coefficients(Rational(1, 4), Rational(7, 16));
        REQUIRE(sols.size() == 1);
        REQUIRE(sols[0].is_exact());
        CHECK((*sols[0].exact)[0] == Rational(-1, 4));
        CHECK((*sols[0].exact)[1] == Rational(-1, 2));
        CHECK((*sols[0].exact)[2] == Rational(-1, 4));
    }
    SUBCASE("(1/2, 3/4) gives the Zhu-Kroemer double root") {
        auto sols = solve_parameters_from_coefficients(Rational(1, 2), Rational(3, 4));
        REQUIRE(sols.size() == 1);
        CHECK((*sols[0].exact)[0] == Rational(-1, 2));
        CHECK((*sols[0].exact)[1] == Rational(0));
    }
    SUBCASE("(1/2, 1) gives Gora-Williams and its mirror, descending alpha") {
        auto sols = solve_parameters_from_coefficients(Rational(1, 2), Rational(1));
        REQUIRE(sols.size() == 2);
        CHECK((*sols[0].exact)[0] == Rational(0));
        CHECK((*sols[0].exact)[2] == Rational(-1));
        CHECK((*sols[1].exact)[0] == Rational(-1));
        CHECK((*sols[1].exact)[2] == Rational(0));
    }
    SUBCASE("negative discriminant has no real ordering") {
        CHECK_THROWS_AS(solve_parameters_from_coefficients(Rational(1, 2), Rational(1, 2)),
                        NoRealOrderingError);
    }
    SUBCASE("double overloads accept exactly representable values") {
        auto sols = solve_parameters_from_coefficients(0.25, 0.4375);
        REQUIRE(sols.size() == 1);
        CHECK(sols[0].alpha == -0.25);
    }
    SUBCASE("irrational roots fall back to doubles") {
        // c_lap = 1/2 -> beta = 0; disc = 1 - 4(1 - 7/8) = 1/2
        auto sols = solve_parameters_from_coefficients(Rational(1, 2), Rational(7, 8));
        REQUIRE(sols.size() == 2);
        CHECK_FALSE(sols[0].is_exact());
        double s = std::sqrt(0.5);
        CHECK(sols[0].alpha == doctest::Approx((-1.0 + s) / 2.0).epsilon(1e-15));
        CHECK(sols[1].alpha == doctest::Approx((-1.0 - s) / 2.0).epsilon(1e-15));
        CHECK(sols[0].alpha + sols[0].beta + sols[0].gamma == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("round trip: solve(kinetic(o)) contains o for every catalog entry") {
    for (const auto& o : ordering_catalog()) {
        KineticCoefficients k = kinetic_coefficients(o);
        REQUIRE(k.exact.has_value());
        auto sols = solve_parameters_from_coefficients((*k.exact)[0], (*k.exact)[1]);
        bool found = false;
        for (const auto& s : sols) {
            REQUIRE(s.is_exact());
            if ((*s.exact)[0] == (*o.exact)[0] && (*s.exact)[1] == (*o.exact)[1]) found = true;
        }
        CHECK_MESSAGE(found, "catalog entry ", o.name, " not recovered");
    }
}

TEST_CASE("effective potential is invariant under alpha <-> gamma exchange") {
    MassProfile m(Profile::rational(1.0, 1.0, 1.0, 0.0)); // 1 + x^2
    PotentialProfile V = Profile::power_law(1.0, 2.0);
    // pairs (alpha, beta); the swapped triple is make_ordering(gamma, beta)
    const double cases[][2] = {{-0.25, -0.5}, {0.3, -0.7}, {-1.2, 0.4}, {0.0, 0.0}};
    for (const auto& c : cases) {
        OrderingParameters o = make_ordering(c[0], c[1]);
        OrderingParameters swapped = make_ordering(o.gamma, o.beta);
        CHECK(swapped.gamma == doctest::Approx(o.alpha).epsilon(1e-14));
        for (double x : {0.5, 1.0, 2.0}) {
            double a = effective_potential_1d(o, m, V, x);
            double b = effective_potential_1d(swapped, m, V, x);
            CHECK(a == doctest::Approx(b).epsilon(1e-13));
        }
    }
}

TEST_CASE("constant mass leaves the potential unchanged for every ordering") {
    MassProfile m(Profile::constant(1.0));
    PotentialProfile V = Profile::power_law(0.25, 4.0);
    for (const auto& o : ordering_catalog())
        for (double x : {0.2, 1.0, 3.0})
            CHECK(effective_potential_1d(o, m, V, x) == doctest::Approx(V.value(x)).epsilon(1e-15));
}

TEST_CASE("effective potential for exponential mass under the mm ordering") {
    // m = e^{2x}, V = 0: Vt = (1/4) 4 e^{-2x} - (7/16) 4 e^{-2x} = -(3/4) e^{-2x}
    MassProfile m(Profile::exponential(1.0, 2.0));
    PotentialProfile V = Profile::constant(0.0);
    OrderingParameters mm = find_ordering("mm");
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
        double expect = -0.75 * std::exp(-2.0 * x);
        CHECK(effective_potential_1d(mm, m, V, x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("mm effective potential difference from V matches its two-term form") {
    MassProfile m(Profile::rational(1.0, 1.0, 1.0, 0.0));
    PotentialProfile V = Profile::power_law(1.0, 2.0);
    OrderingParameters mm = find_ordering("mm");
    for (double x = 0.1; x < 5.0; x += 0.37) {
        double lhs = effective_potential_1d(mm, m, V, x) - V.value(x);
        double mv = m.value(x), m1 = m.d1(x), m2 = m.d2(x);
        double rhs = 0.25 * m2 / (mv * mv) - 0.4375 * m1 * m1 / (mv * mv * mv);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("radial effective potential modes") {
    MassProfile m = make_power_law(1.0, 2.0);
    PotentialProfile V = Profile::constant(0.0);
    OrderingParameters mm = find_ordering("mm");

    // m = r^2 at r = 1, d = 3: literal (1/4)(2) - (7/16)(4) = -5/4
    CHECK(effective_potential_radial(mm, m, V, 1.0, 3) == doctest::Approx(-1.25).epsilon(1e-14));
    // full Laplacian replaces m'' by m'' + 2 m'/r = 6: (1/4)(6) - 7/4 = -1/4
    CHECK(effective_potential_radial(mm, m, V, 1.0, 3, LaplacianMode::full_laplacian) ==
          doctest::Approx(-0.25).epsilon(1e-14));

    // the two modes differ by c_lap (d-1) m'/(r m^2)
    for (double r : {0.5, 1.0, 2.0}) {
        double lit = effective_potential_radial(mm, m, V, r, 3);
        double ful = effective_potential_radial(mm, m, V, r, 3, LaplacianMode::full_laplacian);
        double expect = 0.25 * 2.0 * m.d1(r) / (r * m.value(r) * m.value(r));
        CHECK(ful - lit == doctest::Approx(expect).epsilon(1e-12));
    }

    MassProfile c(Profile::constant(2.0));
    PotentialProfile W = Profile::power_law(1.0, 2.0);
    for (double r : {0.5, 1.5}) {
        CHECK(effective_potential_radial(mm, c, W, r, 5) == doctest::Approx(W.value(r)));
        CHECK(effective_potential_radial(mm, c, W, r, 5, LaplacianMode::full_laplacian) ==
              doctest::Approx(W.value(r)));
    }

    CHECK_THROWS_AS(effective_potential_radial(mm, m, V, -1.0, 3), DomainError);
    CHECK_THROWS_AS(effective_potential_radial(mm, m, V, 1.0, 0), std::invalid_argument);
}

TEST_CASE("compare_orderings emits per-ordering columns and pairwise differences") {
    MassProfile m(Profile::rational(1.0, 1.0, 1.0, 0.0));
    PotentialProfile V = Profile::constant(0.0);
    std::vector<double> grid = {0.5, 1.0, 1.5, 2.0};

    SUBCASE("mm vs zhu_kroemer difference has the analytic coefficient form") {
        auto cmp = compare_orderings({find_ordering("mm"), find_ordering("zhu_kroemer")}, m, V, grid);
        REQUIRE(cmp.diffs.size() == 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double r = grid[i];
            double mv = m.value(r), m1 = m.d1(r), m2 = m.d2(r);
            // (1/4 - 1/2) m''/m^2 - (7/16 - 3/4) m'^2/m^3
            double expect = -0.25 * m2 / (mv * mv) + 0.3125 * m1 * m1 / (mv * mv * mv);
            CHECK(cmp.diffs[0][i] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("single ordering produces no difference columns") {
        auto cmp = compare_orderings({find_ordering("mm")}, m, V, grid);
        CHECK(cmp.vtilde.size() == 1);
        CHECK(cmp.diffs.empty());
    }
    SUBCASE("constant mass gives identically zero differences") {
        MassProfile cm(Profile::constant(3.0));
        auto cmp = compare_orderings({find_ordering("mm"), find_ordering("li_kuhn")}, cm, V, grid);
        for (double d : cmp.diffs[0]) CHECK(d == 0.0);
    }
    SUBCASE("empty inputs are rejected") {
        CHECK_THROWS_AS(compare_orderings({}, m, V, grid), std::invalid_argument);
        CHECK_THROWS_AS(compare_orderings({find_ordering("mm")}, m, V, {}), std::invalid_argument);
    }
}
