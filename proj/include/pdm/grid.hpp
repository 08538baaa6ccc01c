#ifndef PDM_GRID_HPP
#define PDM_GRID_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace pdm {

using Complex = std::complex<double>;

/// Uniformly spaced points x0, x0+h, ..., x0+(n-1)h.
struct UniformGrid {
    double x0 = 0.0;
    double h = 1.0;
    std::size_t n = 0;

    double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
    double x_end() const { return x(n - 1); }
    bool operator==(const UniformGrid&) const = default;
};

/// Complex sample values over a uniform grid. Construction validates
/// n >= 5, h > 0 and finiteness of all values.
class GridFunction {
public:
    GridFunction(UniformGrid grid, std::vector<Complex> values);
    GridFunction(UniformGrid grid, const std::vector<double>& values);

    static GridFunction sample(const UniformGrid& grid, const std::function<Complex(double)>& f);
    static GridFunction sample_real(const UniformGrid& grid, const std::function<double(double)>& f);

    const UniformGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Complex>& values() const { return values_; }
    std::vector<Complex>& values() { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    double max_abs() const;
    std::vector<double> real_values() const;

private:
    UniformGrid grid_;
    std::vector<Complex> values_;
};

/// Second-order first derivative: central in the interior, one-sided
/// three-point stencils at the endpoints.
std::vector<Complex> derivative1(const std::vector<Complex>& f, double h);

/// Second-order second derivative with matching endpoint treatment.
std::vector<Complex> derivative2(const std::vector<Complex>& f, double h);

/// Trapezoid-rule inner product <f, g> = h * sum_i w_i conj(f_i) g_i.
Complex inner_product(const GridFunction& f, const GridFunction& g);

double norm(const GridFunction& f);

/// Largest |a_i - b_i| over a common index range, skipping `skip_ends`
/// points at each boundary.
double max_abs_diff(const GridFunction& a, const GridFunction& b, std::size_t skip_ends = 0);

} // namespace pdm

#endif
