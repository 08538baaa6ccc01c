#include "pdm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdm::num {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    double whole = simpson(fa, fm, fb, a, b);
    return adapt(f, a, b, fa, fm, fb, whole, tol, 48);
}

double interp_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 4) throw std::invalid_argument("interp_cubic: need >= 4 nodes");
    x = std::clamp(x, xs.front(), xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - xs.begin());
    std::size_t start = idx >= 2 ? idx - 2 : 0;
    start = std::min(start, n - 4);

    double result = 0.0;
    for (std::size_t i = start; i < start + 4; ++i) {
        double w = 1.0;
        for (std::size_t j = start; j < start + 4; ++j)
            if (j != i) w *= (x - xs[j]) / (xs[i] - xs[j]);
        result += w * ys[i];
    }
    return result;
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("trapezoid: need matching vectors with >= 2 nodes");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        acc += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
    return acc;
}

} // namespace pdm::num
