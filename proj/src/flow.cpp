#include "willmore/flow.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/AutoDiff>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "willmore/discrete.hpp"
#include "willmore/errors.hpp"
#include "willmore/profile_io.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTermNodes = 9;
using TermAD = Eigen::AutoDiffScalar<Eigen::Matrix<double, 2 * kTermNodes, 1>>;

// Node data over [lo, hi] with mirror ghosts past axis ends.
template <class T>
struct Window {
    long lo, hi, n;
    AxisContact contact;
    const T* r;
    const T* h;
    const T* X;  // chord coordinate, any origin

    void get(long j, T& rr, T& hh, T& xx) const {
        if (j < 0) {
            rr = -r[-j - lo];
            hh = h[-j - lo];
            xx = 2.0 * X[0 - lo] - X[-j - lo];
        } else if (j > n - 1) {
            const long m = 2 * (n - 1) - j;
            rr = -r[m - lo];
            hh = h[m - lo];
            xx = 2.0 * X[n - 1 - lo] - X[m - lo];
        } else {
            rr = r[j - lo];
            hh = h[j - lo];
            xx = X[j - lo];
        }
    }
};

template <class T>
struct LocalJet {
    T r, dr, dh, ddr, ddh;
};

template <class T>
LocalJet<T> local_jet(long i, const Window<T>& w) {
    const long first = w.contact.start ? -2 : 0, last = w.contact.end ? w.n + 1 : w.n - 1;
    const long s0 = std::clamp(i - 2, first, last - 4);
    std::array<T, 5> xs, rs, hs, d1, d2;
    for (int k = 0; k < 5; ++k) w.get(s0 + k, rs[k], hs[k], xs[k]);
    T ri, hi, xi;
    w.get(i, ri, hi, xi);
    detail::fd_weights(xi, xs, d1, d2);
    LocalJet<T> j{ri, T(0.0), T(0.0), T(0.0), T(0.0)};
    for (int k = 0; k < 5; ++k) {
        j.dr += d1[k] * rs[k];
        j.dh += d1[k] * hs[k];
        j.ddr += d2[k] * rs[k];
        j.ddh += d2[k] * hs[k];
    }
    return j;
}

// Trapezoid weight (with end corrections) of node i times its density.
template <class T>
T node_term(long i, const Window<T>& w) {
    const LocalJet<T> j = local_jet(i, w);
    const T f = detail::willmore_density(j.r, j.dr, j.dh, j.ddr, j.ddh);
    T W(0.0);
    if (i > 0) W += 0.5 * (w.X[i - w.lo] - w.X[i - 1 - w.lo]);
    if (i + 1 < w.n) W += 0.5 * (w.X[i + 1 - w.lo] - w.X[i - w.lo]);
    // End corrections of the trapezoid rule from one-sided differences.
    if (i <= 1) W += (i == 0 ? -1.0 : 1.0) * (w.X[1 - w.lo] - w.X[0 - w.lo]) / 12.0;
    if (i >= w.n - 2) W += (i == w.n - 1 ? -1.0 : 1.0) * (w.X[w.n - 1 - w.lo] - w.X[w.n - 2 - w.lo]) / 12.0;
    return W * f;
}

// Height of an axis end from the even fit h = h0 + a r^2 through its two neighbours.
template <class T>
T axis_height(const T& r1, const T& r2, const T& h1, const T& h2) {
    const T a = r1 * r1, b = r2 * r2;
    return (b * h1 - a * h2) / (b - a);
}

template <class T>
void project_ends(AxisContact c, std::vector<T>& r, std::vector<T>& h, long lo, long hi, long n) {
    if (c.start && lo == 0) h[0] = axis_height(r[1], r[2], h[1], h[2]);
    if (c.end && hi == n - 1) {
        const long e = n - 1 - lo;
        h[e] = axis_height(r[e - 1], r[e - 2], h[e - 1], h[e - 2]);
    }
}

void require_odd(const ProfileCurve& c) {
    if (c.size() % 2 == 0) throw ParameterError("discrete energy needs an odd number of nodes");
}

std::vector<double> chord(const ProfileCurve& c) {
    std::vector<double> X(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i)
        X[i] = X[i - 1] + std::hypot(c.r()[i] - c.r()[i - 1], c.h()[i] - c.h()[i - 1]);
    return X;
}

ProfileCurve curve_from(std::vector<double> r, std::vector<double> h, AxisContact contact) {
    const long n = static_cast<long>(r.size());
    project_ends(contact, r, h, 0, n - 1, n);
    std::vector<double> s(r.size(), 0.0);
    for (std::size_t i = 1; i < r.size(); ++i) s[i] = s[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), contact, std::nullopt, loose);
}

std::vector<LocalJet<double>> all_jets(const ProfileCurve& c) {
    const auto X = chord(c);
    const long n = static_cast<long>(c.size());
    Window<double> w{0, n - 1, n, c.contact(), c.r().data(), c.h().data(), X.data()};
    std::vector<LocalJet<double>> out;
    for (long i = 0; i < n; ++i) out.push_back(local_jet(i, w));
    return out;
}

}  // namespace

double discrete_energy(const ProfileCurve& c) {
    require_odd(c);
    const long n = static_cast<long>(c.size());
    std::vector<double> r = c.r(), h = c.h();
    project_ends(c.contact(), r, h, 0, n - 1, n);
    std::vector<double> X(n, 0.0);
    for (long i = 1; i < n; ++i) X[i] = X[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);
    Window<double> w{0, n - 1, n, c.contact(), r.data(), h.data(), X.data()};
    double E = 0.0;
    for (long i = 0; i < n; ++i) E += node_term(i, w);
    return E;
}

NodeGradient discrete_gradient(const ProfileCurve& c) {
    require_odd(c);
    const long n = static_cast<long>(c.size());
    NodeGradient g;
    g.dr.assign(n, 0.0);
    g.dh.assign(n, 0.0);
    // Term i depends on nodes i-4 .. i+4 only; one derivative slot per coordinate.
    std::vector<TermAD> r, h, X;
    for (long i = 0; i < n; ++i) {
        const long lo = std::max(0L, i - 4), hi = std::min(n - 1, i + 4);
        const std::size_t m = static_cast<std::size_t>(hi - lo + 1);
        r.assign(m, TermAD());
        h.assign(m, TermAD());
        X.assign(m, TermAD());
        for (long j = lo; j <= hi; ++j) {
            const auto k = static_cast<int>(j - lo);
            r[k] = TermAD(c.r()[j], 2 * kTermNodes, 2 * k);
            h[k] = TermAD(c.h()[j], 2 * kTermNodes, 2 * k + 1);
        }
        project_ends(c.contact(), r, h, lo, hi, n);
        X[0] = TermAD(0.0, TermAD::DerType::Zero());
        for (std::size_t k = 1; k < m; ++k) {
            const TermAD dr = r[k] - r[k - 1], dh = h[k] - h[k - 1];
            X[k] = X[k - 1] + sqrt(dr * dr + dh * dh);
        }
        Window<TermAD> w{lo, hi, n, c.contact(), r.data(), h.data(), X.data()};
        const TermAD E = node_term(i, w);
        for (long j = lo; j <= hi; ++j) {
            g.dr[j] += E.derivatives()[2 * (j - lo)];
            g.dh[j] += E.derivatives()[2 * (j - lo) + 1];
        }
    }
    if (c.contact().start) g.dr.front() = g.dh.front() = 0.0;
    if (c.contact().end) g.dr.back() = g.dh.back() = 0.0;
    return g;
}

// ---------------------------------------------------------------------------
// Nodes

std::optional<std::size_t> neck_local_min(const ProfileCurve& c) {
    const std::size_t n = c.size();
    const auto& r = c.r();
    std::optional<std::size_t> best;
    for (std::size_t i = 2; i + 2 < n; ++i)
        if (r[i] <= r[i - 1] && r[i] <= r[i + 1] && (!best || r[i] < r[*best])) best = i;
    return best;
}

std::size_t neck_index(const ProfileCurve& c) {
    if (const auto i = neck_local_min(c)) return *i;
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        if (c.r()[i] < c.r()[best]) best = i;
    return best;
}

namespace {

std::vector<double> node_density(const ProfileCurve& c, double weight) {
    const auto jets = all_jets(c);
    const double L = c.length();
    std::vector<double> rho(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& j = jets[i];
        const double sp = std::hypot(j.dr, j.dh);
        const double k1 = (j.dr * j.ddh - j.dh * j.ddr) / (sp * sp * sp);
        const double k2 = j.r > 0.0 ? j.dh / (j.r * sp) : k1;
        rho[i] = 1.0 + weight * L * (std::abs(k1) + std::abs(k2));
    }
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> s = rho;
        for (std::size_t i = 1; i + 1 < rho.size(); ++i) s[i] = 0.25 * rho[i - 1] + 0.5 * rho[i] + 0.25 * rho[i + 1];
        rho = s;
    }
    return rho;
}

// Largest over smallest of (spacing x target density).
double spacing_ratio(const ProfileCurve& c, double weight) {
    const auto rho = node_density(c, weight);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const double q = std::hypot(c.r()[i + 1] - c.r()[i], c.h()[i + 1] - c.h()[i]) * 0.5 * (rho[i] + rho[i + 1]);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    return hi / lo;
}

}  // namespace

ProfileCurve redistribute(const ProfileCurve& c, std::size_t nodes, double weight) {
    if (nodes < 5 || nodes % 2 == 0) throw ParameterError("redistribute: node count must be odd and >= 5");
    const auto X = chord(c);
    const auto jets = all_jets(c);
    const auto rho = node_density(c, weight);
    const std::size_t n = c.size();
    std::vector<double> M(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) M[i] = M[i - 1] + 0.5 * (rho[i] + rho[i - 1]) * (X[i] - X[i - 1]);
    std::vector<double> r(nodes), h(nodes);
    std::size_t k = 0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double target = M.back() * double(j) / double(nodes - 1);
        while (k + 2 < n && M[k + 1] < target) ++k;
        const double u = std::clamp((target - M[k]) / (M[k + 1] - M[k]), 0.0, 1.0);
        // Cubic Hermite in the chord coordinate with five-point tangents.
        const double dx = X[k + 1] - X[k];
        const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
        const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
        r[j] = h00 * c.r()[k] + h10 * dx * jets[k].dr + h01 * c.r()[k + 1] + h11 * dx * jets[k + 1].dr;
        h[j] = h00 * c.h()[k] + h10 * dx * jets[k].dh + h01 * c.h()[k + 1] + h11 * dx * jets[k + 1].dh;
    }
    if (c.contact().start) r.front() = 0.0;
    if (c.contact().end) r.back() = 0.0;
    for (std::size_t j = 1; j + 1 < nodes; ++j)
        if (!(r[j] > 0.0)) throw RefinementRequired("redistribute: resampled node on the axis", j);
    return curve_from(std::move(r), std::move(h), c.contact());
}

// ---------------------------------------------------------------------------
// Flow

namespace {

std::vector<double> lumped_mass(const ProfileCurve& c, const std::vector<double>& X) {
    const std::size_t n = c.size();
    const auto& r = c.r();
    std::vector<double> m(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) m[i] += (X[i] - X[i - 1]) * (3 * r[i] + r[i - 1]) / 8;
        if (i + 1 < n) m[i] += (X[i + 1] - X[i]) * (3 * r[i] + r[i + 1]) / 8;
        m[i] *= 2 * kPi;
    }
    return m;
}

// Descent direction along node normals: interior node i moves by a_i n_i with
// a = -(P^T A P)^{-1} P^T g, where A is the metric per coordinate and P maps
// normal amplitudes to (r, h). Axis ends stay put (their height is dependent).
void direction(const ProfileCurve& c, const NodeGradient& g, FlowMetric metric, std::vector<double>& d_r,
               std::vector<double>& d_h) {
    using Trip = Eigen::Triplet<double>;
    using Sparse = Eigen::SparseMatrix<double>;
    const std::size_t n = c.size();
    const int ni = static_cast<int>(n);
    const auto X = chord(c);
    const auto m = lumped_mass(c, X);
    const auto jets = all_jets(c);
    const std::size_t v0 = c.contact().start ? 1 : 0, v1 = c.contact().end ? n - 1 : n;
    const int nv = static_cast<int>(v1 - v0);
    std::vector<double> nr(n), nh(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sp = std::hypot(jets[i].dr, jets[i].dh);
        nr[i] = jets[i].dh / sp;
        nh[i] = -jets[i].dr / sp;
    }
    std::vector<Trip> pr, ph;
    for (std::size_t i = v0; i < v1; ++i) {
        pr.emplace_back(int(i), int(i - v0), nr[i]);
        ph.emplace_back(int(i), int(i - v0), nh[i]);
    }
    Sparse Pr(ni, nv), Ph(ni, nv);
    Pr.setFromTriplets(pr.begin(), pr.end());
    Ph.setFromTriplets(ph.begin(), ph.end());

    std::vector<Trip> mw;
    for (std::size_t i = 0; i < n; ++i) mw.emplace_back(int(i), int(i), m[i]);
    Sparse Mw(ni, ni);
    Mw.setFromTriplets(mw.begin(), mw.end());

    Sparse A;
    if (metric == FlowMetric::l2) {
        A = Sparse(Pr.transpose() * Mw * Pr) + Sparse(Ph.transpose() * Mw * Ph);
    } else {
        const double lref = c.length() / kPi;
        // Scaled by lref^4 so that time has the dimension of the l2 flow.
        const double l4 = lref * lref * lref * lref;
        // Second differences in the chord coordinate; at an axis end r is odd
        // and h even about the end node.
        auto second_difference = [&](bool odd) {
            std::vector<Trip> d2;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == 0 || i + 1 == n) {
                    const bool axis = i == 0 ? c.contact().start : c.contact().end;
                    if (!axis || odd) continue;
                    const std::size_t nb = i == 0 ? 1 : n - 2;
                    const double l = std::abs(X[nb] - X[i]);
                    d2.emplace_back(int(i), int(i), -2.0 / (l * l));
                    d2.emplace_back(int(i), int(nb), 2.0 / (l * l));
                    continue;
                }
                const double a = X[i] - X[i - 1], b = X[i + 1] - X[i];
                d2.emplace_back(int(i), int(i - 1), 2.0 / (a * (a + b)));
                d2.emplace_back(int(i), int(i), -2.0 / (a * b));
                d2.emplace_back(int(i), int(i + 1), 2.0 / (b * (a + b)));
            }
            Sparse D(ni, ni);
            D.setFromTriplets(d2.begin(), d2.end());
            return D;
        };
        // Zeroth-order part scaled by the local curvature, so a thin neck's
        // radius mode is as well conditioned as the bending modes.
        std::vector<Trip> lw;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& j = jets[i];
            const double sp = std::hypot(j.dr, j.dh);
            const double k1 = (j.dr * j.ddh - j.dh * j.ddr) / (sp * sp * sp);
            const double k2 = j.r > 0.0 ? j.dh / (j.r * sp) : k1;
            const double k = 0.5 * (std::abs(k1) + std::abs(k2));
            lw.emplace_back(int(i), int(i), m[i] * (1.0 + l4 * k * k * k * k));
        }
        Sparse L(ni, ni);
        L.setFromTriplets(lw.begin(), lw.end());
        const Sparse Dr = second_difference(true), Dh = second_difference(false);
        const Sparse Ar = l4 * Sparse(Dr.transpose() * Mw * Dr) + L;
        const Sparse Ah = l4 * Sparse(Dh.transpose() * Mw * Dh) + L;
        A = Sparse(Pr.transpose() * Ar * Pr) + Sparse(Ph.transpose() * Ah * Ph);
    }
    Eigen::SimplicialLDLT<Sparse> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw FlowStepFailure("metric factorization failed");
    Eigen::VectorXd ga(nv);
    for (std::size_t i = v0; i < v1; ++i) ga[int(i - v0)] = g.dr[i] * nr[i] + g.dh[i] * nh[i];
    const Eigen::VectorXd a = ldlt.solve(ga);
    d_r.assign(n, 0.0);
    d_h.assign(n, 0.0);
    for (std::size_t i = v0; i < v1; ++i) {
        d_r[i] = -a[int(i - v0)] * nr[i];
        d_h[i] = -a[int(i - v0)] * nh[i];
    }
}

bool valid_trial(const std::vector<double>& r, const std::vector<double>& h) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!std::isfinite(r[i]) || !std::isfinite(h[i])) return false;
    for (std::size_t i = 1; i + 1 < r.size(); ++i)
        if (!(r[i] > 0.0)) return false;
    return true;
}

// Vertex of the parabola through the smallest node and its neighbours.
void fill_neck(FlowState& s) {
    const auto& c = s.profile;
    const std::size_t i = neck_index(c);
    s.has_neck = neck_local_min(c).has_value();
    s.r_min = c.r()[i];
    s.s_min = c.s()[i];
    if (i == 0 || i + 1 >= c.size()) return;
    const double a = c.s()[i - 1] - c.s()[i], b = c.s()[i + 1] - c.s()[i];
    const double fa = c.r()[i - 1] - c.r()[i], fb = c.r()[i + 1] - c.r()[i];
    // r - r_i = p x + q x^2 on x = s - s_i
    const double q = (fa / a - fb / b) / (a - b), p = fa / a - q * a;
    if (!(q > 0.0)) return;
    const double x = std::clamp(-p / (2 * q), a, b);
    s.r_min = c.r()[i] + p * x + q * x * x;
    s.s_min = c.s()[i] + x;
}

}  // namespace

FlowState make_flow_state(const ProfileCurve& init, const FlowControls& ctrl) {
    if (!init.contact().start || !init.contact().end)
        throw ParameterError("flow needs a profile closed on the axis at both ends");
    FlowState s;
    std::size_t nodes = ctrl.nodes;
    if (nodes == 0) nodes = init.size() % 2 ? init.size() : init.size() + 1;
    if (nodes % 2 == 0) ++nodes;
    ProfileCurve base = curve_from(init.r(), init.h(), init.contact());
    if (nodes != base.size() || spacing_ratio(base, ctrl.curvature_weight) > ctrl.redistribute_ratio) {
        base = redistribute(base, nodes, ctrl.curvature_weight);
        s.event = "resampled";
    }
    s.profile = std::move(base);
    s.dt = ctrl.dt;
    s.W = discrete_energy(s.profile);
    s.tau = tangent_lift(s.profile).tau;
    fill_neck(s);
    s.W_step = s.W;
    s.history.push_back({s.t, s.W, s.r_min});
    return s;
}

FlowState flow_step(const FlowState& s, const FlowControls& ctrl) {
    const ProfileCurve& c = s.profile;
    const std::size_t n = c.size();
    const NodeGradient g = discrete_gradient(c);
    std::vector<double> d_r, d_h;
    direction(c, g, ctrl.metric, d_r, d_h);
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += g.dr[i] * d_r[i] + g.dh[i] * d_h[i];
    if (!(slope <= 0.0)) throw FlowStepFailure("direction is not a descent direction");

    double alpha = std::min(s.dt, ctrl.dt_max);
    std::vector<double> r(n), h(n);
    for (int attempt = 0; attempt <= ctrl.max_retries; ++attempt, alpha *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = c.r()[i] + alpha * d_r[i];
            h[i] = c.h()[i] + alpha * d_h[i];
        }
        if (!valid_trial(r, h)) continue;
        ProfileCurve trial;
        try {
            trial = curve_from(r, h, c.contact());
        } catch (const GeometryError&) {
            continue;
        }
        const double W = discrete_energy(trial);
        const double predicted = alpha * slope;
        const bool armijo = W <= s.W + ctrl.armijo * predicted;
        // Below roundoff the Armijo test is meaningless; accept non-increase.
        const bool flat = -predicted < 1e-13 * std::abs(s.W) && W <= s.W + ctrl.energy_tol;
        if (!armijo && !flat) continue;
        double tau = s.tau;
        if (ctrl.keep_turning) {
            try {
                tau = tangent_lift(trial).tau;
            } catch (const RefinementRequired&) {
                continue;
            }
            if (tau != s.tau) continue;
        }
        FlowState out;
        out.profile = std::move(trial);
        out.t = s.t + alpha;
        out.dt = attempt == 0 ? std::min(alpha * ctrl.grow, ctrl.dt_max) : alpha;
        out.W = W;
        out.tau = tau;
        out.step = s.step + 1;
        out.grad_norm = std::sqrt(-slope);
        out.W_step = W;
        out.history = s.history;
        if (spacing_ratio(out.profile, ctrl.curvature_weight) > ctrl.redistribute_ratio) {
            const double before = out.W;
            out.profile = redistribute(out.profile, n, ctrl.curvature_weight);
            out.W = discrete_energy(out.profile);
            std::ostringstream ev;
            ev << "resampled at step " << out.step << ": W " << format_double(before) << " -> "
               << format_double(out.W);
            out.event = ev.str();
        }
        fill_neck(out);
        out.history.push_back({out.t, out.W, out.r_min});
        while (out.history.size() > std::max<std::size_t>(ctrl.history, 1)) out.history.pop_front();
        return out;
    }
    throw FlowStepFailure("no admissible step after " + std::to_string(ctrl.max_retries) +
                          " halvings (near-singular configuration, r_min = " + format_double(s.r_min) + ")");
}

NeckDiagnostic neck_rescale(const FlowState& s, double window) {
    if (!(window > 0.0)) throw ParameterError("neck window must be positive");
    const ProfileCurve& c = s.profile;
    const std::size_t i = neck_index(c);
    NeckDiagnostic d;
    d.r_min = c.r()[i];
    if (!(d.r_min > 0.0)) throw ParameterError("neck_rescale needs r_min > 0");
    d.s_min = c.s()[i];
    d.h_min = c.h()[i];
    const double half = window * d.r_min;
    const double lo = d.s_min - half, hi = d.s_min + half;
    if (lo < c.s().front() || hi > c.s().back()) d.notice = "window clipped to the curve";
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c.s()[j] < lo || c.s()[j] > hi) continue;
        const double rho = c.r()[j] / d.r_min, eta = (c.h()[j] - d.h_min) / d.r_min;
        d.rho.push_back(rho);
        d.eta.push_back(eta);
        d.residual = std::max(d.residual, std::abs(rho - std::cosh(eta)));
    }
    if (s.history.size() >= 3) {
        double mt = 0.0, mr = 0.0;
        for (const auto& e : s.history) {
            mt += e.t;
            mr += e.r_min;
        }
        mt /= double(s.history.size());
        mr /= double(s.history.size());
        double num = 0.0;
        for (const auto& e : s.history) num += (e.t - mt) * (e.r_min - mr);
        d.trend = num < 0.0 ? -1 : (num > 0.0 ? 1 : 0);
    }
    d.is_neck = d.residual < 0.5;
    return d;
}

const char* to_string(FlowTermination t) {
    switch (t) {
        case FlowTermination::converged: return "converged";
        case FlowTermination::singular_stop: return "singular-stop";
        case FlowTermination::budget: return "budget";
    }
    return "budget";
}

Trajectory flow_run(const ProfileCurve& init, const FlowControls& ctrl, bool track_multiplicity) {
    Trajectory tr;
    FlowState s = make_flow_state(init, ctrl);
    const double floor = ctrl.r_floor > 0.0 ? ctrl.r_floor : 1e-3 * init.diameter();
    if (!s.event.empty()) tr.events.push_back("initial profile " + s.event);
    auto record = [&](const FlowState& st) {
        const NeckDiagnostic d = neck_rescale(st, ctrl.neck_window);
        tr.records.push_back({st.step, st.t, st.W, st.r_min, d.residual, st.W_step, st.tau, d.trend,
                              track_multiplicity ? tuple_point_multiplicity(st.profile) : 0});
    };
    auto converged = [&](const FlowState& st, double grad) {
        return grad <= ctrl.grad_tol * std::abs(st.W) && std::abs(st.W - ctrl.W_target) <= ctrl.W_tol;
    };
    record(s);
    // Gradient norm of the initial state decides immediate convergence.
    {
        const NodeGradient g = discrete_gradient(s.profile);
        std::vector<double> d_r, d_h;
        direction(s.profile, g, ctrl.metric, d_r, d_h);
        double slope = 0.0;
        for (std::size_t i = 0; i < s.profile.size(); ++i) slope += g.dr[i] * d_r[i] + g.dh[i] * d_h[i];
        s.grad_norm = std::sqrt(std::max(0.0, -slope));
    }
    tr.termination = FlowTermination::budget;
    if (converged(s, s.grad_norm)) {
        tr.termination = FlowTermination::converged;
    } else if (s.has_neck && s.r_min < floor) {
        tr.termination = FlowTermination::singular_stop;
    } else {
        for (int k = 0; k < ctrl.max_steps; ++k) {
            FlowState next;
            try {
                next = flow_step(s, ctrl);
            } catch (const FlowStepFailure& e) {
                tr.events.push_back(std::string("step failure: ") + e.what());
                tr.termination = neck_rescale(s, ctrl.neck_window).is_neck ? FlowTermination::singular_stop
                                                                             : FlowTermination::budget;
                break;
            }
            s = std::move(next);
            if (!s.event.empty()) tr.events.push_back(s.event);
            record(s);
            if (ctrl.checkpoint_every > 0 && s.step % ctrl.checkpoint_every == 0) tr.checkpoints.push_back(s);
            if (s.has_neck && s.r_min < floor) {
                tr.termination = FlowTermination::singular_stop;
                break;
            }
            if (converged(s, s.grad_norm)) {
                tr.termination = FlowTermination::converged;
                break;
            }
        }
    }
    tr.final_neck = neck_rescale(s, ctrl.neck_window);
    tr.final_state = s;
    tr.checkpoints.push_back(s);
    return tr;
}

std::string Trajectory::to_csv() const {
    std::ostringstream os;
    os << "step,t,W,r_min,residual\n";
    for (const auto& r : records)
        os << r.step << ',' << format_double(r.t) << ',' << format_double(r.W) << ',' << format_double(r.r_min) << ','
           << format_double(r.residual) << '\n';
    return os.str();
}

std::string checkpoint_json(const FlowState& s) {
    nlohmann::ordered_json j;
    j["step"] = s.step;
    j["t"] = s.t;
    j["dt"] = s.dt;
    j["W"] = s.W;
    j["r_min"] = s.r_min;
    j["s_min"] = s.s_min;
    j["tau"] = s.tau;
    j["closed_on_axis"] = {s.profile.contact().start, s.profile.contact().end};
    auto samples = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.profile.size(); ++i)
        samples.push_back({s.profile.s()[i], s.profile.r()[i], s.profile.h()[i]});
    j["samples"] = samples;
    return j.dump(1);
}

std::string Trajectory::final_json() const {
    nlohmann::ordered_json j;
    j["termination"] = to_string(termination);
    j["steps"] = final_state.step;
    j["t"] = final_state.t;
    j["W"] = final_state.W;
    j["tau"] = final_state.tau;
    j["r_min"] = final_state.r_min;
    j["grad_norm"] = final_state.grad_norm;
    j["neck"] = {{"r_min", final_neck.r_min},
                 {"s_min", final_neck.s_min},
                 {"h_min", final_neck.h_min},
                 {"residual", final_neck.residual},
                 {"trend", final_neck.trend},
                 {"is_neck", final_neck.is_neck},
                 {"notice", final_neck.notice},
                 {"window_points", final_neck.rho.size()}};
    j["events"] = events;
    return j.dump(2);
}

}  // namespace willmore
