#pragma once

// Scalar-generic kernels shared by the sampled-curve energy and the flow
// gradient (which instantiates them with dual numbers).

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace willmore::detail {

using std::sqrt;

/// Willmore energy per unit parameter of a surface of revolution with
/// profile (r(s), h(s)): (pi/2) (k1 + k2)^2 r |c'|, where k1 is the signed
/// planar curvature and k2 = h' / (r |c'|) the parallel-circle curvature.
/// Vanishes on the axis, where k2 -> k1 and the weight r is zero.
template <class T>
T willmore_density(const T& r, const T& dr, const T& dh, const T& ddr, const T& ddh) {
    if (r == 0.0) return T(0.0);
    const T speed2 = dr * dr + dh * dh;
    const T speed = sqrt(speed2);
    const T k1 = (dr * ddh - dh * ddr) / (speed2 * speed);
    const T k2 = dh / (r * speed);
    const T H2 = (k1 + k2) * (k1 + k2);
    return (std::numbers::pi / 2.0) * H2 * r * speed;
}

/// Graph form of the same density with r = t: the integrand
/// 2 pi (t h'' + h' + h'^3)^2 / (4 t (1 + h'^2)^(5/2)).
template <class T>
T graph_density(const T& t, const T& h1, const T& h2) {
    const T l2 = 1.0 + h1 * h1;
    const T num = t * h2 + h1 + h1 * h1 * h1;
    return 2.0 * std::numbers::pi * num * num / (4.0 * t * l2 * l2 * sqrt(l2));
}

/// Fornberg finite-difference weights on an arbitrary stencil for the first
/// and second derivative at x0.
template <class T, std::size_t N>
void fd_weights(const T& x0, const std::array<T, N>& x, std::array<T, N>& d1, std::array<T, N>& d2) {
    // c[k][j]: weight of node j for derivative k, built incrementally.
    T c[3][N];
    for (int k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < N; ++j) c[k][j] = T(0.0);
    c[0][0] = T(1.0);
    T c1 = T(1.0);
    T c4 = x[0] - x0;
    for (std::size_t i = 1; i < N; ++i) {
        const int mn = static_cast<int>(i < 2 ? i : 2);
        T c2 = T(1.0);
        const T c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const T c3 = x[i] - x[j];
            c2 = c2 * c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (double(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - double(k) * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    for (std::size_t j = 0; j < N; ++j) {
        d1[j] = c[1][j];
        d2[j] = c[2][j];
    }
}

}  // namespace willmore::detail
