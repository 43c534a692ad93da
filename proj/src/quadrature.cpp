#include "willmore/quadrature.hpp"

#include <algorithm>
#include <vector>

namespace willmore {

double quadratic_panel_integral(double x0, double x1, double x2, double f0, double f1, double f2,
                                double lo, double hi) {
    // Newton form around x0.
    const double a = x1 - x0;
    const double d1 = (f1 - f0) / a;
    const double d2 = ((f2 - f1) / (x2 - x1) - d1) / (x2 - x0);
    auto antideriv = [&](double y) { return y * (f0 + y * (0.5 * d1 + d2 * (y / 3.0 - 0.5 * a))); };
    return antideriv(hi - x0) - antideriv(lo - x0);
}

namespace {

void check_grid(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size()) throw std::invalid_argument("composite_simpson: size mismatch");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("composite_simpson: grid not strictly increasing");
}

double simpson_value(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
    double sum = 0.0;
    std::size_t k = 0;
    for (; k + 2 < n; k += 2) sum += quadratic_panel_integral(x[k], x[k + 1], x[k + 2], f[k], f[k + 1], f[k + 2], x[k], x[k + 2]);
    if (k + 1 < n) {
        // odd number of intervals: trailing interval from the last three nodes
        sum += quadratic_panel_integral(x[n - 3], x[n - 2], x[n - 1], f[n - 3], f[n - 2], f[n - 1], x[n - 2], x[n - 1]);
    }
    return sum;
}

}  // namespace

QuadratureResult composite_simpson(std::span<const double> x, std::span<const double> f) {
    check_grid(x, f);
    QuadratureResult out;
    out.evaluations = x.size();
    out.value = simpson_value(x, f);
    const std::size_t intervals = x.size() > 0 ? x.size() - 1 : 0;
    if (intervals >= 4 && intervals % 2 == 0) {
        std::vector<double> xc, fc;
        xc.reserve(intervals / 2 + 1);
        fc.reserve(intervals / 2 + 1);
        for (std::size_t i = 0; i < x.size(); i += 2) {
            xc.push_back(x[i]);
            fc.push_back(f[i]);
        }
        out.error = std::abs(out.value - simpson_value(xc, fc)) / 15.0;
    } else {
        double trap = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) trap += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
        out.error = std::abs(out.value - trap);
    }
    return out;
}

double piecewise_quadratic_integral(std::span<const double> x, std::span<const double> f, double lo, double hi) {
    check_grid(x, f);
    const std::size_t n = x.size();
    if (n < 2 || hi <= lo) return 0.0;
    lo = std::max(lo, x.front());
    hi = std::min(hi, x.back());
    if (hi <= lo) return 0.0;
    if (n == 2) {
        auto lin = [&](double t) { return f[0] + (f[1] - f[0]) * (t - x[0]) / (x[1] - x[0]); };
        return 0.5 * (hi - lo) * (lin(lo) + lin(hi));
    }
    double sum = 0.0;
    std::size_t k = 0;
    for (; k + 2 < n; k += 2) {
        const double a = std::max(lo, x[k]);
        const double b = std::min(hi, x[k + 2]);
        if (b > a) sum += quadratic_panel_integral(x[k], x[k + 1], x[k + 2], f[k], f[k + 1], f[k + 2], a, b);
    }
    if (k + 1 < n) {
        const double a = std::max(lo, x[n - 2]);
        const double b = std::min(hi, x[n - 1]);
        if (b > a) sum += quadratic_panel_integral(x[n - 3], x[n - 2], x[n - 1], f[n - 3], f[n - 2], f[n - 1], a, b);
    }
    return sum;
}

void simpson_weights(std::span<const double> x, std::span<double> w) {
    if (w.size() != x.size()) throw std::invalid_argument("simpson_weights: size mismatch");
    std::fill(w.begin(), w.end(), 0.0);
    const std::size_t n = x.size();
    if (n < 2) return;
    // Weights are linear functionals; recover them by integrating unit vectors panel-wise.
    auto add_panel = [&](std::size_t i0, double lo, double hi) {
        for (int j = 0; j < 3; ++j) {
            double e[3] = {0.0, 0.0, 0.0};
            e[j] = 1.0;
            w[i0 + j] += quadratic_panel_integral(x[i0], x[i0 + 1], x[i0 + 2], e[0], e[1], e[2], lo, hi);
        }
    };
    if (n == 2) {
        w[0] = w[1] = 0.5 * (x[1] - x[0]);
        return;
    }
    std::size_t k = 0;
    for (; k + 2 < n; k += 2) add_panel(k, x[k], x[k + 2]);
    if (k + 1 < n) add_panel(n - 3, x[n - 2], x[n - 1]);
}

}  // namespace willmore
