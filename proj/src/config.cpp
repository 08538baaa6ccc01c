#include "pdm/config.hpp"

#include "pdm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace pdm::cli {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const Entry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("key '" + key + "' (line " + std::to_string(e.line) +
                          "): '" + e.value + "' is not a number");
    return v;
}

long to_integer(const std::string& key, const Entry& e) {
    double v = to_number(key, e);
    long i = static_cast<long>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "' (line " + std::to_string(e.line) +
                          "): '" + e.value + "' is not an integer");
    return i;
}

class SectionReader {
public:
    SectionReader(const std::string& name, Section& s) : name_(name), s_(s) {}

    std::optional<std::string> text(const std::string& key) {
        auto it = s_.find(key);
        if (it == s_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }
    std::optional<double> number(const std::string& key) {
        auto it = s_.find(key);
        if (it == s_.end()) return std::nullopt;
        it->second.used = true;
        return to_number(key, it->second);
    }
    std::optional<long> integer(const std::string& key) {
        auto it = s_.find(key);
        if (it == s_.end()) return std::nullopt;
        it->second.used = true;
        return to_integer(key, it->second);
    }
    double require_number(const std::string& key) {
        auto v = number(key);
        if (!v)
            throw ConfigError("section [" + name_ + "] is missing the mandatory key '" + key + "'");
        return *v;
    }
    void reject_unused() const {
        for (const auto& [key, entry] : s_)
            if (!entry.used)
                throw ConfigError("unknown key '" + key + "' in section [" + name_ + "] (line " +
                                  std::to_string(entry.line) + ")");
    }

private:
    std::string name_;
    Section& s_;
};

Profile build_profile(const std::string& section, Section& raw, bool is_mass) {
    SectionReader r(section, raw);
    std::optional<std::string> family = r.text("family");
    std::optional<std::string> expr = r.text("expr");
    if (!family && expr) family = "expression";
    if (!family)
        throw ConfigError("section [" + section + "] needs 'family' (or an 'expr' key)");

    Profile p = [&]() -> Profile {
        if (*family == "constant") {
            return Profile::constant(r.require_number("value"));
        }
        if (*family == "power_law") {
            auto coef = r.number("coef");
            if (!coef) coef = r.number("varsigma");
            auto power = r.number("power");
            if (!power) power = r.number("upsilon");
            if (!coef || !power)
                throw ConfigError("section [" + section +
                                  "] power_law needs 'coef' and 'power' (aliases: varsigma, "
                                  "upsilon)");
            if (is_mass && !(*coef > 0.0))
                throw ConfigError("section [" + section + "]: mass coefficient must be positive");
            return Profile::power_law(*coef, *power);
        }
        if (*family == "exponential") {
            return Profile::exponential(r.require_number("scale"), r.require_number("rate"));
        }
        if (*family == "rational") {
            return Profile::rational(r.require_number("a"), r.require_number("b"),
                                     r.require_number("c"), r.require_number("d"));
        }
        if (*family == "expression") {
            if (!expr) expr = r.text("expr");
            if (!expr)
                throw ConfigError("section [" + section + "] expression family needs 'expr'");
            std::string var = r.text("var").value_or("r");
            try {
                return Profile::expression(*expr, var);
            } catch (const ParseError& e) {
                throw ConfigError("section [" + section + "] expr: " + e.what());
            }
        }
        throw ConfigError("section [" + section + "]: unknown family '" + *family +
                          "' (constant, power_law, exponential, rational, expression)");
    }();
    r.reject_unused();
    return p;
}

} // namespace

RadialProblem ProblemConfig::to_problem() const {
    if (!potential)
        throw ConfigError("missing mandatory section [potential]");
    RadialProblem p(mass, *potential);
    p.dimension = dimension;
    p.ell = ell;
    p.parity = parity;
    p.ordering = ordering;
    p.laplacian_mode = laplacian_mode;
    p.r_min = r_min;
    p.r_max = r_max;
    p.grid_n = grid_n;
    p.energy_tol = e_tol;
    return p;
}

ProblemConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string line, current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "mass" && current != "potential" && current != "problem" &&
                current != "solver")
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" +
                                  current + "]");
            sections[current];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        if (current.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        auto [it, inserted] = sections[current].emplace(key, Entry{value, lineno, false});
        if (!inserted)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                              "'");
    }

    auto mass_it = sections.find("mass");
    if (mass_it == sections.end())
        throw ConfigError(origin + ": missing mandatory section [mass]");
    ProblemConfig cfg{MassProfile(build_profile("mass", mass_it->second, true))};

    if (auto it = sections.find("potential"); it != sections.end())
        cfg.potential = build_profile("potential", it->second, false);

    if (auto it = sections.find("problem"); it != sections.end()) {
        SectionReader r("problem", it->second);
        if (auto d = r.integer("d")) cfg.dimension = static_cast<int>(*d);
        if (auto l = r.integer("ell")) cfg.ell = static_cast<int>(*l);
        if (auto par = r.text("parity")) {
            if (*par == "even")
                cfg.parity = Parity::even;
            else if (*par == "odd")
                cfg.parity = Parity::odd;
            else
                throw ConfigError("key 'parity': expected even or odd, got '" + *par + "'");
        }
        if (auto o = r.text("ordering")) {
            try {
                cfg.ordering = find_ordering(*o);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("key 'ordering': ") + e.what());
            }
        }
        if (auto m = r.text("laplacian_mode")) {
            if (*m == "literal_radial")
                cfg.laplacian_mode = LaplacianMode::literal_radial;
            else if (*m == "full_laplacian")
                cfg.laplacian_mode = LaplacianMode::full_laplacian;
            else
                throw ConfigError("key 'laplacian_mode': expected literal_radial or "
                                  "full_laplacian, got '" + *m + "'");
        }
        r.reject_unused();
    }

    if (auto it = sections.find("solver"); it != sections.end()) {
        SectionReader r("solver", it->second);
        if (auto v = r.number("r_min")) cfg.r_min = *v;
        if (auto v = r.number("r_max")) cfg.r_max = *v;
        if (auto v = r.integer("grid_n")) {
            if (*v < 5) throw ConfigError("key 'grid_n': must be at least 5");
            cfg.grid_n = static_cast<std::size_t>(*v);
        }
        if (auto v = r.integer("n_max")) {
            if (*v < 0) throw ConfigError("key 'n_max': must be >= 0");
            cfg.n_max = static_cast<int>(*v);
        }
        if (auto v = r.number("e_tol")) cfg.e_tol = *v;
        r.reject_unused();
    }
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace pdm::cli
