#include "pdm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pdm::num {

namespace {

void check(const Tridiagonal& t) {
    if (t.diag.empty() || t.off.size() != t.diag.size())
        throw std::invalid_argument("tridiagonal: off array must match diag array in size");
}

double pivmin(const Tridiagonal& t) {
    double max_e2 = 0.0;
    for (std::size_t i = 1; i < t.off.size(); ++i) max_e2 = std::max(max_e2, t.off[i] * t.off[i]);
    return std::numeric_limits<double>::min() * std::max(1.0, max_e2);
}

// LU with partial pivoting of a general tridiagonal matrix (sub, d, sup of
// size n-1, n, n-1), then repeated solves: the standard gttrf/gtts2 scheme.
class PivotedTridiagonalLU {
public:
    PivotedTridiagonalLU(std::vector<double> sub, std::vector<double> d, std::vector<double> sup)
        : dl_(std::move(sub)), d_(std::move(d)), du_(std::move(sup)) {
        const std::size_t n = d_.size();
        du2_.assign(n > 2 ? n - 2 : 0, 0.0);
        swap_.assign(n > 1 ? n - 1 : 0, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
                if (d_[i] == 0.0) d_[i] = 1e-300;
                double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
                if (i + 2 < n) du2_[i] = 0.0;
            } else {
                swap_[i] = true;
                double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
            }
        }
        if (d_[n - 1] == 0.0) d_[n - 1] = 1e-300;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swap_[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl_[i] * b[i];
        }
        b[n - 1] /= d_[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
        for (std::size_t ii = n; ii >= 3; --ii) {
            std::size_t i = ii - 3;
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
        }
    }

private:
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<bool> swap_;
};

} // namespace

std::pair<double, double> gershgorin_bounds(const Tridiagonal& t) {
    check(t);
    const std::size_t n = t.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = (i > 0 ? std::fabs(t.off[i]) : 0.0) + (i + 1 < n ? std::fabs(t.off[i + 1]) : 0.0);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    return {lo, hi};
}

int count_below(const Tridiagonal& t, double x) {
    check(t);
    const double piv = pivmin(t);
    int cnt = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double e2 = i > 0 ? t.off[i] * t.off[i] : 0.0;
        q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
        if (std::fabs(q) <= piv) q = -piv;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

double eigenvalue(const Tridiagonal& t, int k, double abs_tol) {
    check(t);
    if (k < 0 || static_cast<std::size_t>(k) >= t.size())
        throw std::invalid_argument("tridiagonal eigenvalue index out of range");
    auto [lo, hi] = gershgorin_bounds(t);
    double pad = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
    lo -= pad;
    hi += pad;
    for (int iter = 0; iter < 200 && hi - lo > abs_tol; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // hit double spacing
        if (count_below(t, mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvector(const Tridiagonal& t, double lambda) {
    check(t);
    const std::size_t n = t.size();
    auto [glo, ghi] = gershgorin_bounds(t);
    double scale = std::max(std::fabs(glo), std::fabs(ghi)) + 1.0;
    double shifted = lambda + 1e-12 * scale; // keep the factorization nonsingular

    std::vector<double> sub(n > 1 ? n - 1 : 0), sup(n > 1 ? n - 1 : 0), d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shifted;
    for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = sup[i] = t.off[i + 1];
    PivotedTridiagonalLU lu(std::move(sub), std::move(d), std::move(sup));

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 0; iter < 3; ++iter) {
        lu.solve(v);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("inverse iteration failed to converge");
        for (double& x : v) x /= nrm;
    }
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::fabs(x));
    for (double x : v) {
        if (std::fabs(x) > 1e-8 * peak) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            break;
        }
    }
    return v;
}

} // namespace pdm::num
