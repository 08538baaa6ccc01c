#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/commands.hpp"
#include "pdm/config.hpp"
#include "pdm/errors.hpp"

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pdm;
using namespace pdm::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pdm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string out(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

const std::string kOscillator = R"(# oscillator
[mass]
family = constant
value = 1

[potential]
family = power_law
coef = 1
power = 2

[problem]
d = 3
ell = 0

[solver]
r_max = 9
grid_n = 500
n_max = 1
)";

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("full config round trip") {
        ProblemConfig cfg = parse_config_text(kOscillator, "test");
        CHECK(cfg.dimension == 3);
        CHECK(cfg.ell == 0);
        CHECK(cfg.grid_n == 500);
        CHECK(cfg.n_max == 1);
        CHECK(cfg.r_max == 9.0);
        CHECK(cfg.mass.family() == Profile::Family::constant);
        REQUIRE(cfg.potential.has_value());
        CHECK(cfg.potential->value(2.0) == doctest::Approx(4.0));
        CHECK(cfg.ordering.name == "mm");
        RadialProblem p = cfg.to_problem();
        CHECK(p.grid_n == 500);
    }
    SUBCASE("missing [mass] names the section") {
        try {
            parse_config_text("[potential]\nfamily = constant\nvalue = 0\n", "test");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("[mass]") != std::string::npos);
        }
    }
    SUBCASE("unknown keys are rejected by name") {
        try {
            parse_config_text("[mass]\nfamily = constant\nvalue = 1\nbogus = 3\n", "test");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("bogus") != std::string::npos);
        }
    }
    SUBCASE("unknown sections are rejected") {
        CHECK_THROWS_AS(parse_config_text("[junk]\nx = 1\n", "test"), ConfigError);
    }
    SUBCASE("missing [potential] surfaces when building the problem") {
        ProblemConfig cfg = parse_config_text("[mass]\nfamily = constant\nvalue = 1\n", "test");
        try {
            cfg.to_problem();
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("[potential]") != std::string::npos);
        }
    }
    SUBCASE("expression shortcut and var override") {
        ProblemConfig cfg = parse_config_text(
            "[mass]\nexpr = 1 + x^2\nvar = x\n[potential]\nfamily = constant\nvalue = 0\n", "test");
        CHECK(cfg.mass.value(2.0) == doctest::Approx(5.0));
    }
    SUBCASE("bad values are reported") {
        CHECK_THROWS_AS(parse_config_text("[mass]\nfamily = constant\nvalue = abc\n", "test"),
                        ConfigError);
        CHECK_THROWS_AS(
            parse_config_text("[mass]\nfamily = power_law\ncoef = -1\npower = 2\n", "test"),
            ConfigError);
        CHECK_THROWS_AS(parse_config_text(
                            "[mass]\nfamily = constant\nvalue = 1\n[problem]\nparity = sideways\n",
                            "test"),
                        ConfigError);
        CHECK_THROWS_AS(
            parse_config_text("[mass]\nfamily = constant\nvalue = 1\nvalue = 2\n", "test"),
            ConfigError);
        CHECK_THROWS_AS(parse_config_text("[mass]\nfamily constant\n", "test"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("key = 1\n", "test"), ConfigError);
    }
    SUBCASE("custom orderings parse in [problem]") {
        ProblemConfig cfg = parse_config_text("[mass]\nfamily = constant\nvalue = 1\n"
                                              "[problem]\nordering = custom:-0.25,-0.5\n",
                                              "test");
        CHECK(cfg.ordering.alpha == -0.25);
        CHECK(cfg.ordering.beta == -0.5);
    }
}

TEST_CASE("solve command") {
    TempDir tmp;
    std::string cfg = tmp.file("osc.ini", kOscillator);

    SUBCASE("both solvers agree and report nodes") {
        std::string out = tmp.out("spec.csv");
        CHECK(run_solve(cfg, {"both", out}) == 0);
        auto rows = read_csv(out);
        REQUIRE(rows.size() == 5); // header + 2 fd + 2 shoot
        CHECK(rows[0] == std::vector<std::string>{"n_r", "E", "solver", "node_count", "est_error"});
        CHECK(rows[1][2] == "fd");
        CHECK(rows[3][2] == "shoot");
        double e_fd = std::stod(rows[1][1]);
        double e_sh = std::stod(rows[3][1]);
        CHECK(e_fd == doctest::Approx(3.0).epsilon(1e-2));
        CHECK(e_sh == doctest::Approx(3.0).epsilon(1e-2));
        CHECK(std::stod(rows[2][1]) == doctest::Approx(7.0).epsilon(1e-2));
        CHECK(rows[1][3] == "0");
        CHECK(rows[2][3] == "1");
    }
    SUBCASE("identical runs produce byte-identical output") {
        std::string a = tmp.out("a.csv"), b = tmp.out("b.csv");
        CHECK(run_solve(cfg, {"both", a}) == 0);
        CHECK(run_solve(cfg, {"both", b}) == 0);
        CHECK(slurp(a) == slurp(b));
    }
    SUBCASE("missing mass section exits 2") {
        std::string bad = tmp.file("bad.ini", "[potential]\nfamily = constant\nvalue = 0\n");
        CHECK(run_solve(bad, {"both", tmp.out("x.csv")}) == 2);
    }
    SUBCASE("missing potential exits 2") {
        std::string bad = tmp.file("bad2.ini", "[mass]\nfamily = constant\nvalue = 1\n");
        CHECK(run_solve(bad, {"both", tmp.out("x.csv")}) == 2);
    }
    SUBCASE("unknown solver choice exits 2") {
        CHECK(run_solve(cfg, {"numerov", tmp.out("x.csv")}) == 2);
    }
    SUBCASE("unreadable config exits 2") {
        CHECK(run_solve(tmp.out("nope.ini"), {"both", tmp.out("x.csv")}) == 2);
    }
}

TEST_CASE("effpot command") {
    TempDir tmp;
    const std::string base = R"([mass]
family = rational
a = 1
b = 1
c = 1
d = 0

[potential]
family = power_law
coef = 1
power = 2

[problem]
d = 3
ell = 0

[solver]
r_min = 0.5
r_max = 4
grid_n = 64
)";
    std::string cfg = tmp.file("m.ini", base);

    SUBCASE("difference column matches the analytic coefficient form") {
        std::string out = tmp.out("eff.csv");
        CHECK(run_effpot(cfg, {{"mm", "zhu_kroemer"}, out}) == 0);
        auto rows = read_csv(out);
        REQUIRE(rows.size() == 65);
        CHECK(rows[0] ==
              std::vector<std::string>{"r", "V", "Vtilde_mm", "Vtilde_zhu_kroemer",
                                       "diff_mm_vs_zhu_kroemer"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            double r = std::stod(rows[i][0]);
            double m = 1.0 + r * r, m1 = 2.0 * r, m2 = 2.0;
            double expect = -0.25 * m2 / (m * m) + 0.3125 * m1 * m1 / (m * m * m);
            CHECK(std::stod(rows[i][4]) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    SUBCASE("custom triple equal to mm is byte-identical") {
        std::string a = tmp.out("mm.csv"), b = tmp.out("custom.csv");
        CHECK(run_effpot(cfg, {{"mm"}, a}) == 0);
        CHECK(run_effpot(cfg, {{"custom:-0.25,-0.5"}, b}) == 0);
        std::string sa = slurp(a), sb = slurp(b);
        // headers differ by the column name; compare data bytes
        CHECK(sa.substr(sa.find('\n')) == sb.substr(sb.find('\n')));
    }
    SUBCASE("constant mass leaves Vtilde equal to V") {
        std::string ccfg = tmp.file("c.ini", R"([mass]
family = constant
value = 1

[potential]
family = power_law
coef = 1
power = 2

[solver]
r_min = 0.5
r_max = 4
grid_n = 32
)");
        std::string out = tmp.out("ceff.csv");
        CHECK(run_effpot(ccfg, {{"mm"}, out}) == 0);
        for (auto& row : read_csv(out))
            if (row[0] != "r") CHECK(row[1] == row[2]); // byte-identical doubles
    }
    SUBCASE("unknown ordering exits 2") {
        CHECK(run_effpot(cfg, {{"weyl"}, tmp.out("x.csv")}) == 2);
    }
}

TEST_CASE("pct command") {
    TempDir tmp;
    const std::string power_mass = R"([mass]
family = power_law
coef = 1
power = 2

[problem]
d = 3
ell = 1

[solver]
r_max = 8
grid_n = 1000
n_max = 2
)";

    SUBCASE("power-law mapping predicts and verifies the spectrum") {
        std::string cfg = tmp.file("pct.ini", power_mass);
        std::string out = tmp.out("pct.csv");
        CHECK(run_pct(cfg, {"oscillator:k=1", std::nullopt, out}) == 0);
        auto rows = read_csv(out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] ==
              std::vector<std::string>{"n_r", "E_predicted", "E_shooting", "E_fd", "rel_dev"});
        for (int n = 0; n <= 2; ++n) {
            CHECK(std::stod(rows[n + 1][1]) == doctest::Approx(4.0 * n + 3.0).epsilon(1e-12));
            CHECK(std::stod(rows[n + 1][4]) <= 5e-3);
        }
        auto mapping = read_csv(out + ".mapping.csv");
        REQUIRE(mapping.size() == 201);
        CHECK(mapping[0] == std::vector<std::string>{"r", "Z", "U_d", "V_eff"});
        // spot-check Z = r^2/2 and U_d = 2/r^4 on a data row
        double r = std::stod(mapping[100][0]);
        CHECK(std::stod(mapping[100][1]) == doctest::Approx(r * r / 2.0).epsilon(1e-10));
        CHECK(std::stod(mapping[100][2]) == doctest::Approx(2.0 / std::pow(r, 4)).epsilon(1e-10));
    }
    SUBCASE("complex lambda exits 3") {
        std::string cfg = tmp.file("bad.ini", R"([mass]
family = power_law
coef = 1
power = 2

[problem]
d = 3
ell = 0
)");
        CHECK(run_pct(cfg, {"oscillator:k=1", std::nullopt, tmp.out("x.csv")}) == 3);
    }
    SUBCASE("potential section is rejected for the power-law route") {
        std::string cfg = tmp.file("withv.ini", power_mass + "\n[potential]\nexpr = r^2\n");
        CHECK(run_pct(cfg, {"oscillator:k=1", std::nullopt, tmp.out("x.csv")}) == 2);
    }
    SUBCASE("inverse-square route reports the constant shift") {
        std::string cfg = tmp.file("inv.ini", R"([mass]
family = power_law
coef = 1
power = -2

[potential]
expr = ln(r)^2

[problem]
d = 3
ell = 0

[solver]
r_min = 1e-6
r_max = 2981
grid_n = 1200
n_max = 2
)");
        std::string out = tmp.out("inv.csv");
        CHECK(run_pct(cfg, {"oscillator:k=1", std::nullopt, out}) == 0);
        auto rows = read_csv(out);
        REQUIRE(rows.size() == 4);
        for (int n = 0; n <= 2; ++n) {
            CHECK(std::stod(rows[n + 1][1]) == doctest::Approx(2.0 * n + 3.0).epsilon(1e-12));
            CHECK(std::stod(rows[n + 1][4]) <= 5e-3);
        }
        // reference L outside {0, -1} cites the restriction and exits 3
        CHECK(run_pct(cfg, {"oscillator:k=1", 1.0, tmp.out("y.csv")}) == 3);
        // coulomb reference is unavailable on the full line
        CHECK(run_pct(cfg, {"coulomb:e2=2", std::nullopt, tmp.out("z.csv")}) == 3);
    }
    SUBCASE("bad reference spec exits 2") {
        std::string cfg = tmp.file("pct2.ini", power_mass);
        CHECK(run_pct(cfg, {"morse:a=1", std::nullopt, tmp.out("x.csv")}) == 2);
        CHECK(run_pct(cfg, {"oscillator:k=oops", std::nullopt, tmp.out("x.csv")}) == 2);
        CHECK(run_pct(cfg, {"", std::nullopt, tmp.out("x.csv")}) == 2);
    }
    SUBCASE("non-mm ordering is rejected") {
        std::string cfg = tmp.file("zk.ini", power_mass + "\n[problem]\nordering = zhu_kroemer\n");
        // duplicate [problem] section header reuses the map; ordering applies
        CHECK(run_pct(cfg, {"oscillator:k=1", std::nullopt, tmp.out("x.csv")}) == 2);
    }
}

TEST_CASE("verify-operator command") {
    TempDir tmp;
    std::string cfg = tmp.file("verify.ini", R"([mass]
expr = 1 + x^2
var = x

[potential]
expr = x^2
var = x

[solver]
r_min = -8
r_max = 8
grid_n = 200
)");
    std::string out = tmp.out("verify.csv");
    CHECK(run_verify_operator(cfg, {out}) == 0);
    auto rows = read_csv(out);
    REQUIRE(rows.size() == 19); // header + 6 families x 3 sizes
    CHECK(rows[0] ==
          std::vector<std::string>{"test_name", "grid_N", "residual_inf", "observed_order"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 4);
        const std::string& name = rows[i][0];
        double res = std::stod(rows[i][2]);
        if (name == "pi_squared_vs_von_roos_mm") CHECK(res <= 1e-12);
        if (name == "hermiticity_defect") CHECK(res <= 1e-8);
        if (!rows[i][3].empty() && name != "pi_squared_vs_von_roos_mm" &&
            name != "hermiticity_defect") {
            double order = std::stod(rows[i][3]);
            CHECK(order == doctest::Approx(2.0).epsilon(0.25));
        }
    }
}

TEST_CASE("orderings command lists the catalog") {
    TempDir tmp;
    std::string out = tmp.out("orderings.csv");
    CHECK(run_orderings(out) == 0);
    auto rows = read_csv(out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] ==
          std::vector<std::string>{"name", "alpha", "beta", "gamma", "c_lap", "c_grad"});
    CHECK(rows[5][0] == "mm");
    CHECK(rows[5][1] == "-0.25");
    CHECK(rows[5][2] == "-0.5");
    CHECK(rows[5][4] == "0.25");
    CHECK(rows[5][5] == "0.4375");
    CHECK(rows[3][0] == "zhu_kroemer");
}
