#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace willmore {

struct QuadratureSettings {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_depth = 40;
    // Number of equal panels the interval is split into before adaptive
    // bisection starts. Guards against sampling a narrow feature only at
    // its flat ends.
    int initial_panels = 16;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;

    QuadratureResult& operator+=(const QuadratureResult& o) {
        value += o.value;
        error += o.error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

namespace detail {

template <class F>
double adaptive_simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb,
                             double whole, double tol, int depth, QuadratureResult& out) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Lyness criterion; the Richardson-corrected sum is returned.
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || m <= a || b <= m) {
        if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.converged = false;
        out.error += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, out) +
           adaptive_simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b].
///
/// The interval is first cut into `initial_panels` equal panels; each panel
/// is bisected until the two-level Simpson difference meets its share of
/// max(abs_tol, rel_tol * |coarse estimate|). `error` accumulates the
/// Richardson estimates |S2 - S1| / 15 of the accepted panels.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, const QuadratureSettings& q = {}) {
    QuadratureResult out;
    if (a == b) return out;
    if (!(a < b)) throw std::invalid_argument("adaptive_simpson: empty or reversed interval");
    const int panels = q.initial_panels > 0 ? q.initial_panels : 1;
    const double h = (b - a) / panels;

    // Coarse pass fixes the relative tolerance scale.
    double coarse = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double x0 = a + k * h;
        const double x1 = k + 1 == panels ? b : x0 + h;
        coarse += (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    out.evaluations += 3 * static_cast<std::size_t>(panels);
    const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(coarse)) / panels;

    for (int k = 0; k < panels; ++k) {
        const double x0 = a + k * h;
        const double x1 = k + 1 == panels ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        out.evaluations += 3;
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        out.value += detail::adaptive_simpson_step(f, x0, f0, xm, fm, x1, f1, whole, tol, q.max_depth, out);
    }
    return out;
}

/// Integral over [x0,x2] (or a sub-range [lo,hi] of it) of the quadratic
/// through (x0,f0), (x1,f1), (x2,f2). With lo = x0, hi = x2 this is the
/// non-uniform Simpson rule.
double quadratic_panel_integral(double x0, double x1, double x2, double f0, double f1, double f2,
                                double lo, double hi);

/// Composite Simpson rule on an arbitrary strictly increasing grid.
///
/// Consecutive interval pairs form Simpson panels; an odd trailing interval
/// is integrated with the quadratic through the last three nodes. The error
/// estimate is |S_h - S_2h| / 15 when the coarse grid (every second node) is
/// itself a valid Simpson grid, otherwise the Simpson/trapezoid difference.
QuadratureResult composite_simpson(std::span<const double> x, std::span<const double> f);

/// Integral over [lo,hi] ⊆ [x.front(), x.back()] of the same piecewise
/// quadratic interpolant that composite_simpson integrates.
double piecewise_quadratic_integral(std::span<const double> x, std::span<const double> f, double lo,
                                    double hi);

/// Simpson weights w with sum_i w_i f_i == composite_simpson(x, f).value.
void simpson_weights(std::span<const double> x, std::span<double> w);

}  // namespace willmore
