#include "pdm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdm {

namespace {

void validate(const UniformGrid& g, const std::vector<Complex>& v) {
    if (g.n < 5) throw std::invalid_argument("grid needs at least 5 points");
    if (!(g.h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (v.size() != g.n) throw std::invalid_argument("value count does not match the grid");
    for (const Complex& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("grid function values must be finite");
}

} // namespace

GridFunction::GridFunction(UniformGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    validate(grid_, values_);
}

GridFunction::GridFunction(UniformGrid grid, const std::vector<double>& values)
    : grid_(grid), values_(values.begin(), values.end()) {
    validate(grid_, values_);
}

GridFunction GridFunction::sample(const UniformGrid& grid, const std::function<Complex(double)>& f) {
    std::vector<Complex> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::sample_real(const UniformGrid& grid,
                                       const std::function<double(double)>& f) {
    std::vector<Complex> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const Complex& c : values_) m = std::max(m, std::abs(c));
    return m;
}

std::vector<double> GridFunction::real_values() const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = values_[i].real();
    return v;
}

std::vector<Complex> derivative1(const std::vector<Complex>& f, double h) {
    const std::size_t n = f.size();
    std::vector<Complex> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

std::vector<Complex> derivative2(const std::vector<Complex>& f, double h) {
    const std::size_t n = f.size();
    const double h2 = h * h;
    std::vector<Complex> d(n);
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("inner product needs matching grids");
    const std::size_t n = f.size();
    Complex acc = 0.5 * (std::conj(f[0]) * g[0] + std::conj(f[n - 1]) * g[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) acc += std::conj(f[i]) * g[i];
    return acc * f.grid().h;
}

double norm(const GridFunction& f) { return std::sqrt(inner_product(f, f).real()); }

double max_abs_diff(const GridFunction& a, const GridFunction& b, std::size_t skip_ends) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("max_abs_diff needs matching grids");
    double m = 0.0;
    for (std::size_t i = skip_ends; i + skip_ends < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace pdm
