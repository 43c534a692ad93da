#include "willmore/gluing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "willmore/discrete.hpp"
#include "willmore/errors.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double y) { return std::abs(y) < 1.0 ? std::exp(1.0 / (y * y - 1.0)) : 0.0; }

// Piecewise Chebyshev interpolant of the normalized antiderivative of the bump.
class StepCache {
public:
    static constexpr int kPieces = 64;
    static constexpr int kDegree = 24;

    StepCache() {
        QuadratureSettings q;
        q.abs_tol = 1e-17;
        q.rel_tol = 1e-15;
        q.initial_panels = 4;
        const double width = 2.0 / kPieces;
        std::array<double, kPieces + 1> base{};
        for (int k = 0; k < kPieces; ++k) {
            const double a = -1.0 + k * width;
            base[k + 1] = base[k] + adaptive_simpson(bump, a, a + width, q).value;
        }
        norm_ = base[kPieces];
        for (int k = 0; k < kPieces; ++k) {
            const double a = -1.0 + k * width;
            std::array<double, kDegree> vals;
            for (int m = 0; m < kDegree; ++m) {
                const double xm = std::cos(kPi * (m + 0.5) / kDegree);
                const double x = a + 0.5 * width * (xm + 1.0);
                vals[m] = (base[k] + adaptive_simpson(bump, a, x, q).value) / norm_;
            }
            for (int n = 0; n < kDegree; ++n) {
                double sum = 0.0;
                for (int m = 0; m < kDegree; ++m) sum += vals[m] * std::cos(kPi * n * (m + 0.5) / kDegree);
                coef_[k][n] = (n == 0 ? 1.0 : 2.0) * sum / kDegree;
            }
        }
        double M = 0.0;
        constexpr int kGrid = 100000;
        for (int i = 0; i < kGrid; ++i) {
            const double y = -1.0 + 2.0 * i / (kGrid - 1);
            M = std::max({M, std::abs(d1(y)), std::abs(d2(y))});
        }
        M_ = M;
    }

    double value(double y) const {
        if (y <= -1.0) return 0.0;
        if (y >= 1.0) return 1.0;
        // The step is odd about (0, 1/2); evaluating the lower half only keeps
        // the tail near 1 as accurate as the tail near 0.
        if (y > 0.0) return 1.0 - value(-y);
        const double width = 2.0 / kPieces;
        int k = static_cast<int>((y + 1.0) / width);
        k = std::clamp(k, 0, kPieces - 1);
        const double a = -1.0 + k * width;
        const double x = 2.0 * (y - a) / width - 1.0;
        // Clenshaw recurrence.
        double b1 = 0.0, b2 = 0.0;
        for (int n = kDegree - 1; n >= 1; --n) {
            const double b0 = 2.0 * x * b1 - b2 + coef_[k][n];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + coef_[k][0];
    }
    double d1(double y) const { return bump(y) / norm_; }
    double d2(double y) const {
        if (std::abs(y) >= 1.0) return 0.0;
        const double q = y * y - 1.0;
        return bump(y) * (-2.0 * y / (q * q)) / norm_;
    }
    double norm() const { return norm_; }
    double M() const { return M_; }

private:
    double norm_ = 1.0;
    double M_ = 0.0;
    std::array<std::array<double, kDegree>, kPieces> coef_{};
};

const StepCache& step_cache() {
    static const StepCache cache;
    return cache;
}

}  // namespace

double gluing_step(double y) { return step_cache().value(y); }
double gluing_step_d1(double y) { return step_cache().d1(y); }
double gluing_step_d2(double y) { return step_cache().d2(y); }
double bump_integral() { return step_cache().norm(); }

GluingProfile::GluingProfile(double delta, double center) : delta_(delta), center_(center) {
    if (!(center > 0.0) || !std::isfinite(center)) throw ParameterError("gluing band center must be positive");
    if (!(delta > 0.0 && delta < center))
        throw ParameterError("gluing half-width delta must lie in (0, " + std::to_string(center) + ")");
}

double GluingProfile::M() const { return step_cache().M(); }

double GluingProfile::operator()(double x) const {
    double g;
    if (x <= center_ - delta_)
        g = 0.0;
    else if (x >= center_ + delta_)
        g = 1.0;
    else
        g = std::clamp(gluing_step((x - center_) / delta_), 0.0, 1.0);
    return complement_ ? 1.0 - g : g;
}
double GluingProfile::d1(double x) const {
    if (x <= center_ - delta_ || x >= center_ + delta_) return 0.0;
    const double g = gluing_step_d1((x - center_) / delta_) / delta_;
    return complement_ ? -g : g;
}
double GluingProfile::d2(double x) const {
    if (x <= center_ - delta_ || x >= center_ + delta_) return 0.0;
    const double g = gluing_step_d2((x - center_) / delta_) / (delta_ * delta_);
    return complement_ ? -g : g;
}

GluingProfile GluingProfile::complement() const {
    GluingProfile out = *this;
    out.complement_ = !complement_;
    return out;
}

GluingProfile make_gluing_function(double delta) { return GluingProfile(delta, 1.0); }
GluingProfile make_gluing_function(double delta, double center) { return GluingProfile(delta, center); }

// ---------------------------------------------------------------------------
// Polar / Cartesian conversion

PolarJet to_polar(const CartesianJet& c, double r, double phi) {
    const double co = std::cos(phi), si = std::sin(phi);
    PolarJet p;
    p.u = c.u;
    p.ur = co * c.ux + si * c.uy;
    p.urr = co * co * c.uxx + 2.0 * co * si * c.uxy + si * si * c.uyy;
    p.up = r * (-si * c.ux + co * c.uy);
    p.urp = (-si * c.ux + co * c.uy) + r * (-co * si * c.uxx + (co * co - si * si) * c.uxy + si * co * c.uyy);
    p.upp = -r * (co * c.ux + si * c.uy) + r * r * (si * si * c.uxx - 2.0 * si * co * c.uxy + co * co * c.uyy);
    return p;
}

CartesianJet to_cartesian(const PolarJet& p, double r, double phi) {
    const double co = std::cos(phi), si = std::sin(phi);
    CartesianJet c;
    c.u = p.u;
    c.ux = co * p.ur - si * p.up / r;
    c.uy = si * p.ur + co * p.up / r;
    const double a = p.ur / r + p.upp / (r * r);  // tangential second derivative
    const double m = p.urp / r - p.up / (r * r);  // mixed term
    c.uxx = co * co * p.urr + si * si * a - 2.0 * co * si * m;
    c.uyy = si * si * p.urr + co * co * a + 2.0 * co * si * m;
    c.uxy = co * si * (p.urr - a) + (co * co - si * si) * m;
    return c;
}

double PolarGrid::angle(int j) const { return 2.0 * kPi * j / n_phi; }

// ---------------------------------------------------------------------------
// AnnulusGraph

namespace {

void check_grid(const PolarGrid& g) {
    if (!(g.r_in > 0.0 && g.r_out > g.r_in)) throw ParameterError("annulus radii must satisfy 0 < r_in < r_out");
    if (g.n_r < 4) throw ParameterError("annulus grid needs at least 4 radial intervals");
    if (g.n_phi < 8) throw ParameterError("annulus grid needs at least 8 angular nodes");
}

}  // namespace

AnnulusGraph::AnnulusGraph(PolarGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    check_grid(grid_);
    if (values_.size() != static_cast<std::size_t>(grid_.n_r + 1) * grid_.n_phi)
        throw ParameterError("annulus graph: value count does not match the grid");
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!std::isfinite(values_[k])) throw ParameterError("annulus graph: non-finite value");
}

AnnulusGraph::AnnulusGraph(PolarGrid grid, std::vector<PolarJet> jets, bool radial) : grid_(grid), radial_(radial) {
    check_grid(grid_);
    if (jets.size() != static_cast<std::size_t>(grid_.n_r + 1) * grid_.n_phi)
        throw ParameterError("annulus graph: jet count does not match the grid");
    values_.resize(jets.size());
    for (std::size_t k = 0; k < jets.size(); ++k) {
        const auto& p = jets[k];
        if (!std::isfinite(p.u) || !std::isfinite(p.ur) || !std::isfinite(p.urr) || !std::isfinite(p.up) ||
            !std::isfinite(p.urp) || !std::isfinite(p.upp))
            throw ParameterError("annulus graph: non-finite value");
        values_[k] = p.u;
    }
    jets_ = std::move(jets);
}

AnnulusGraph AnnulusGraph::from_cartesian(const PolarGrid& grid, const std::function<CartesianJet(double, double)>& f) {
    check_grid(grid);
    std::vector<PolarJet> jets(static_cast<std::size_t>(grid.n_r + 1) * grid.n_phi);
    for (int i = 0; i <= grid.n_r; ++i) {
        const double r = grid.radius(i);
        for (int j = 0; j < grid.n_phi; ++j) {
            const double a = grid.angle(j);
            jets[static_cast<std::size_t>(i) * grid.n_phi + j] = to_polar(f(r * std::cos(a), r * std::sin(a)), r, a);
        }
    }
    return AnnulusGraph(grid, std::move(jets), false);
}

AnnulusGraph AnnulusGraph::from_radial(const PolarGrid& grid, const std::function<RadialJet(double)>& f) {
    check_grid(grid);
    std::vector<PolarJet> jets(static_cast<std::size_t>(grid.n_r + 1) * grid.n_phi);
    for (int i = 0; i <= grid.n_r; ++i) {
        const RadialJet rj = f(grid.radius(i));
        PolarJet p;
        p.u = rj.u;
        p.ur = rj.du;
        p.urr = rj.ddu;
        for (int j = 0; j < grid.n_phi; ++j) jets[static_cast<std::size_t>(i) * grid.n_phi + j] = p;
    }
    return AnnulusGraph(grid, std::move(jets), true);
}

AnnulusGraph AnnulusGraph::from_values(const PolarGrid& grid, const std::function<double(double, double)>& f) {
    check_grid(grid);
    std::vector<double> v(static_cast<std::size_t>(grid.n_r + 1) * grid.n_phi);
    for (int i = 0; i <= grid.n_r; ++i) {
        const double r = grid.radius(i);
        for (int j = 0; j < grid.n_phi; ++j) {
            const double a = grid.angle(j);
            v[static_cast<std::size_t>(i) * grid.n_phi + j] = f(r * std::cos(a), r * std::sin(a));
        }
    }
    return AnnulusGraph(grid, std::move(v));
}

AnnulusGraph AnnulusGraph::values_only() const { return AnnulusGraph(grid_, values_); }

std::vector<PolarJet> AnnulusGraph::all_jets() const {
    if (jets_) return *jets_;
    const int nr = grid_.n_r, np = grid_.n_phi;
    std::vector<PolarJet> out(values_.size());
    std::vector<double> x(nr + 1);
    for (int i = 0; i <= nr; ++i) x[i] = grid_.radius(i);
    // Radial five-point stencils, shifted at the boundary circles.
    for (int i = 0; i <= nr; ++i) {
        const int w = std::clamp(i - 2, 0, nr - 4);
        std::array<double, 5> xs, d1, d2;
        for (int k = 0; k < 5; ++k) xs[k] = x[w + k];
        detail::fd_weights(x[i], xs, d1, d2);
        for (int j = 0; j < np; ++j) {
            double a = 0, b = 0;
            for (int k = 0; k < 5; ++k) {
                a += d1[k] * value(w + k, j);
                b += d2[k] * value(w + k, j);
            }
            auto& p = out[index(i, j)];
            p.u = value(i, j);
            p.ur = a;
            p.urr = b;
        }
    }
    // Periodic central differences in phi.
    const double h = 2.0 * kPi / np;
    for (int i = 0; i <= nr; ++i) {
        for (int j = 0; j < np; ++j) {
            auto at = [&](int dj) { return out[index(i, ((j + dj) % np + np) % np)]; };
            auto& p = out[index(i, j)];
            p.up = (-at(2).u + 8.0 * at(1).u - 8.0 * at(-1).u + at(-2).u) / (12.0 * h);
            p.upp = (-at(2).u + 16.0 * at(1).u - 30.0 * p.u + 16.0 * at(-1).u - at(-2).u) / (12.0 * h * h);
            p.urp = (-at(2).ur + 8.0 * at(1).ur - 8.0 * at(-1).ur + at(-2).ur) / (12.0 * h);
        }
    }
    return out;
}

PolarJet AnnulusGraph::jet(int i, int j) const {
    if (jets_) return (*jets_)[index(i, j)];
    return all_jets()[index(i, j)];
}

double AnnulusGraph::c2_norm() const {
    const auto jets = all_jets();
    std::array<double, 6> sup{};
    for (int i = 0; i <= grid_.n_r; ++i) {
        const double r = grid_.radius(i);
        for (int j = 0; j < grid_.n_phi; ++j) {
            const CartesianJet c = to_cartesian(jets[index(i, j)], r, grid_.angle(j));
            const std::array<double, 6> v{c.u, c.ux, c.uy, c.uxx, c.uxy, c.uyy};
            for (int k = 0; k < 6; ++k) sup[k] = std::max(sup[k], std::abs(v[k]));
        }
    }
    return sup[0] + sup[1] + sup[2] + sup[3] + 2.0 * sup[4] + sup[5];
}

AnnulusGraph difference(const AnnulusGraph& a, const AnnulusGraph& b) {
    if (!(a.grid() == b.grid())) throw ParameterError("graphs live on different grids");
    if (a.has_derivatives() && b.has_derivatives()) {
        auto ja = a.all_jets();
        const auto jb = b.all_jets();
        for (std::size_t k = 0; k < ja.size(); ++k) {
            ja[k].u -= jb[k].u;
            ja[k].ur -= jb[k].ur;
            ja[k].urr -= jb[k].urr;
            ja[k].up -= jb[k].up;
            ja[k].urp -= jb[k].urp;
            ja[k].upp -= jb[k].upp;
        }
        return AnnulusGraph(a.grid(), std::move(ja), a.radial() && b.radial());
    }
    std::vector<double> v = a.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values()[k];
    return AnnulusGraph(a.grid(), std::move(v));
}

AnnulusGraph delta_glue(const AnnulusGraph& u1, const AnnulusGraph& u2, const GluingProfile& phi) {
    if (!(u1.grid() == u2.grid())) throw ParameterError("delta_glue: graphs live on different grids");
    const PolarGrid& g = u1.grid();
    if (u1.has_derivatives() && u2.has_derivatives()) {
        const auto& a = u1.all_jets();
        const auto& b = u2.all_jets();
        std::vector<PolarJet> out(a.size());
        for (int i = 0; i <= g.n_r; ++i) {
            const double r = g.radius(i);
            const double f = phi(r), f1 = phi.d1(r), f2 = phi.d2(r);
            for (int j = 0; j < g.n_phi; ++j) {
                const std::size_t k = u1.index(i, j);
                const PolarJet& p = a[k];
                const PolarJet& q = b[k];
                PolarJet& o = out[k];
                const double d = q.u - p.u, dr = q.ur - p.ur;
                o.u = p.u + f * d;
                o.ur = p.ur + f * dr + f1 * d;
                o.urr = p.urr + f * (q.urr - p.urr) + 2.0 * f1 * dr + f2 * d;
                o.up = p.up + f * (q.up - p.up);
                o.urp = p.urp + f * (q.urp - p.urp) + f1 * (q.up - p.up);
                o.upp = p.upp + f * (q.upp - p.upp);
                if (f == 0.0) o = p;
                if (f == 1.0) o = q;
            }
        }
        return AnnulusGraph(g, std::move(out), u1.radial() && u2.radial());
    }
    std::vector<double> v(u1.values().size());
    for (int i = 0; i <= g.n_r; ++i) {
        const double f = phi(g.radius(i));
        for (int j = 0; j < g.n_phi; ++j) {
            const std::size_t k = u1.index(i, j);
            const double a = u1.values()[k], b = u2.values()[k];
            v[k] = f == 0.0 ? a : f == 1.0 ? b : a + f * (b - a);
        }
    }
    return AnnulusGraph(g, std::move(v));
}

// ---------------------------------------------------------------------------
// Energies

namespace {

double graph_integrand(const CartesianJet& c) {
    const double p = c.ux, q = c.uy;
    const double w = 1.0 + p * p + q * q;
    const double H = ((1.0 + q * q) * c.uxx - 2.0 * p * q * c.uxy + (1.0 + p * p) * c.uyy) / (2.0 * w * std::sqrt(w));
    return H * H * std::sqrt(w);
}

}  // namespace

GraphEnergy willmore_energy_graph(const AnnulusGraph& g) {
    const PolarGrid& grid = g.grid();
    const auto jets = g.all_jets();
    std::vector<double> x(grid.n_r + 1), f(grid.n_r + 1);
    for (int i = 0; i <= grid.n_r; ++i) x[i] = grid.radius(i);
    GraphEnergy out;
    const double dphi = 2.0 * kPi / grid.n_phi;
    for (int j = 0; j < grid.n_phi; ++j) {
        const double a = grid.angle(j);
        for (int i = 0; i <= grid.n_r; ++i)
            f[i] = graph_integrand(to_cartesian(jets[g.index(i, j)], x[i], a)) * x[i];
        const QuadratureResult res = composite_simpson(x, f);
        out.value += res.value * dphi;
        out.error += res.error * dphi;
    }
    return out;
}

QuadratureResult willmore_energy_radial(const std::function<RadialJet(double)>& h, double a, double b,
                                        const QuadratureSettings& q) {
    if (!(a > 0.0 && b > a)) throw ParameterError("radial energy needs 0 < a < b");
    auto f = [&h](double t) {
        const RadialJet j = h(t);
        return detail::graph_density(t, j.du, j.ddu);
    };
    return adaptive_simpson(f, a, b, q);
}

DiskNorms disk_norms(const std::function<CartesianJet(double, double)>& f, double radius, int n) {
    std::array<double, 6> sup{};
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double x = -radius + 2.0 * radius * i / n;
            const double y = -radius + 2.0 * radius * j / n;
            if (x * x + y * y > radius * radius) continue;
            const CartesianJet c = f(x, y);
            const std::array<double, 6> v{c.u, c.ux, c.uy, c.uxx, c.uxy, c.uyy};
            for (int k = 0; k < 6; ++k) sup[k] = std::max(sup[k], std::abs(v[k]));
        }
    }
    DiskNorms out;
    out.second = sup[3] + 2.0 * sup[4] + sup[5];
    out.c2 = sup[0] + sup[1] + sup[2] + out.second;
    return out;
}

// ---------------------------------------------------------------------------
// Gluing bound

namespace {

GluingPairRow evaluate_pair(const GluingPair& pair, const GluingProfile& phi, const char* set) {
    GluingPairRow row;
    row.label = pair.label;
    row.set = set;
    row.norm_u1 = pair.u1.c2_norm();
    row.norm_u2 = pair.u2.c2_norm();
    if (row.norm_u1 > 1.0 || row.norm_u2 > 1.0) {
        row.skipped = true;
        row.notice = "hypothesis ||u_i||_C2 <= 1 violated; pair skipped";
        return row;
    }
    row.distance = difference(pair.u2, pair.u1).c2_norm();
    row.w1 = willmore_energy_graph(pair.u1).value;
    row.w_glued = willmore_energy_graph(delta_glue(pair.u1, pair.u2, phi)).value;
    row.excess = row.w_glued - row.w1;
    row.ratio = row.distance > 0.0 ? row.excess / row.distance : 0.0;
    return row;
}

}  // namespace

GluingBoundReport verify_gluing_bound(const std::vector<GluingPair>& fit, const std::vector<GluingPair>& holdout,
                                      const std::vector<GluingPair>& extra, const std::vector<GluingPair>& slope_pairs,
                                      const GluingProfile& phi, const GluingBoundSettings& settings) {
    GluingBoundReport rep;
    rep.delta = phi.delta();
    rep.M = phi.M();
    for (const auto& p : fit) {
        rep.rows.push_back(evaluate_pair(p, phi, "fit"));
        const auto& row = rep.rows.back();
        if (!row.skipped) rep.max_fit_ratio = std::max(rep.max_fit_ratio, row.ratio);
    }
    rep.fitted_C = settings.safety_factor * rep.max_fit_ratio;
    bool ok = true;
    for (const auto& p : holdout) rep.rows.push_back(evaluate_pair(p, phi, "holdout"));
    for (const auto& p : extra) rep.rows.push_back(evaluate_pair(p, phi, "extra"));
    for (auto& row : rep.rows) {
        if (row.skipped) continue;
        // identical pairs: zero excess up to round-off
        row.within_bound = row.excess <= rep.fitted_C * row.distance + 1e-12;
        ok = ok && row.within_bound;
    }

    std::vector<double> lx, ly;
    for (const auto& p : slope_pairs) {
        const GluingPairRow row = evaluate_pair(p, phi, "slope");
        if (row.skipped || row.distance <= 0.0 || row.excess == 0.0) continue;
        rep.slope_norms.push_back(row.distance);
        rep.slope_excess.push_back(row.excess);
        lx.push_back(std::log(row.distance));
        ly.push_back(std::log(std::abs(row.excess)));
    }
    if (lx.size() >= 2) {
        const double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < lx.size(); ++k) {
            sx += lx[k];
            sy += ly[k];
            sxx += lx[k] * lx[k];
            sxy += lx[k] * ly[k];
        }
        rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.slope_ok = std::abs(rep.slope - 1.0) <= 0.15;
    } else {
        rep.slope_ok = slope_pairs.empty();
    }
    rep.passed = ok && rep.slope_ok;
    return rep;
}

std::string GluingBoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["delta"] = delta;
    j["M"] = M;
    j["max_fit_ratio"] = max_fit_ratio;
    j["fitted_C"] = fitted_C;
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["label"] = r.label;
        o["set"] = r.set;
        o["skipped"] = r.skipped;
        if (!r.notice.empty()) o["notice"] = r.notice;
        o["norm_u1"] = r.norm_u1;
        o["norm_u2"] = r.norm_u2;
        if (!r.skipped) {
            o["distance_c2"] = r.distance;
            o["W_u1"] = r.w1;
            o["W_glued"] = r.w_glued;
            o["excess"] = r.excess;
            o["ratio"] = r.ratio;
            o["within_bound"] = r.within_bound;
        }
        rows_json.push_back(o);
    }
    j["pairs"] = rows_json;
    j["slope"] = {{"norms", slope_norms}, {"excess", slope_excess}, {"fitted_slope", slope}, {"ok", slope_ok}};
    j["passed"] = passed;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Corpora

namespace {

struct Wave {
    double amp, kx, ky, phase;
};

struct SmoothField {
    std::array<double, 10> poly{};  // coefficients of 1, x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3
    std::vector<Wave> waves;
    double scale = 1.0;

    CartesianJet operator()(double x, double y) const {
        const auto& c = poly;
        CartesianJet j;
        j.u = c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y + c[6] * x * x * x +
              c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
        j.ux = c[1] + 2 * c[3] * x + c[4] * y + 3 * c[6] * x * x + 2 * c[7] * x * y + c[8] * y * y;
        j.uy = c[2] + c[4] * x + 2 * c[5] * y + c[7] * x * x + 2 * c[8] * x * y + 3 * c[9] * y * y;
        j.uxx = 2 * c[3] + 6 * c[6] * x + 2 * c[7] * y;
        j.uxy = c[4] + 2 * c[7] * x + 2 * c[8] * y;
        j.uyy = 2 * c[5] + 2 * c[8] * x + 6 * c[9] * y;
        for (const auto& w : waves) {
            const double arg = w.kx * x + w.ky * y + w.phase;
            const double co = w.amp * std::cos(arg), si = w.amp * std::sin(arg);
            j.u += co;
            j.ux -= w.kx * si;
            j.uy -= w.ky * si;
            j.uxx -= w.kx * w.kx * co;
            j.uxy -= w.kx * w.ky * co;
            j.uyy -= w.ky * w.ky * co;
        }
        j.u *= scale;
        j.ux *= scale;
        j.uy *= scale;
        j.uxx *= scale;
        j.uxy *= scale;
        j.uyy *= scale;
        return j;
    }
};

SmoothField random_field(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    SmoothField f;
    for (auto& c : f.poly) c = U(rng);
    for (int k = 0; k < 3; ++k) f.waves.push_back({U(rng), 3.0 * U(rng), 3.0 * U(rng), kPi * U(rng)});
    return f;
}

}  // namespace

std::vector<GluingPair> random_gluing_corpus(const PolarGrid& grid, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<GluingPair> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const SmoothField base = random_field(rng);
        const SmoothField dir = random_field(rng);
        const double n1 = 0.2 + 0.7 * U(rng);
        const double eps = (1.0 - n1) * std::pow(10.0, -3.0 * U(rng));
        SmoothField b = base, d = dir;
        b.scale = n1 / AnnulusGraph::from_cartesian(grid, base).c2_norm();
        d.scale = eps / AnnulusGraph::from_cartesian(grid, dir).c2_norm();
        GluingPair p;
        p.label = "random-" + std::to_string(k);
        p.u1 = AnnulusGraph::from_cartesian(grid, b);
        p.u2 = AnnulusGraph::from_cartesian(grid, [b, d](double x, double y) {
            CartesianJet a = b(x, y);
            const CartesianJet e = d(x, y);
            a.u += e.u;
            a.ux += e.ux;
            a.uy += e.uy;
            a.uxx += e.uxx;
            a.uxy += e.uxy;
            a.uyy += e.uyy;
            return a;
        });
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<GluingPair> slope_corpus(const PolarGrid& grid, const std::vector<double>& scales) {
    // Shallow paraboloid; a flat base is a critical point of W and would make
    // the excess quadratic in the perturbation.
    const double a = 0.08;
    auto base = [a](double x, double y) {
        CartesianJet j;
        j.u = a * (x * x + y * y);
        j.ux = 2 * a * x;
        j.uy = 2 * a * y;
        j.uxx = 2 * a;
        j.uyy = 2 * a;
        return j;
    };
    // Gaussian bump centred on the unit circle, normalized to unit C2 norm.
    auto bump2 = [](double x, double y) {
        const double s = 0.1;
        const double dx = x - 1.0, e = std::exp(-(dx * dx + y * y) / s);
        CartesianJet j;
        j.u = e;
        j.ux = -2 * dx / s * e;
        j.uy = -2 * y / s * e;
        j.uxx = (4 * dx * dx / (s * s) - 2 / s) * e;
        j.uyy = (4 * y * y / (s * s) - 2 / s) * e;
        j.uxy = 4 * dx * y / (s * s) * e;
        return j;
    };
    const double bn = AnnulusGraph::from_cartesian(grid, bump2).c2_norm();
    std::vector<GluingPair> out;
    for (double c : scales) {
        GluingPair p;
        p.label = "slope-" + std::to_string(c);
        p.u1 = AnnulusGraph::from_cartesian(grid, base);
        const double k = c / bn;
        p.u2 = AnnulusGraph::from_cartesian(grid, [=](double x, double y) {
            CartesianJet j = base(x, y);
            const CartesianJet b = bump2(x, y);
            j.u += k * b.u;
            j.ux += k * b.ux;
            j.uy += k * b.uy;
            j.uxx += k * b.uxx;
            j.uxy += k * b.uxy;
            j.uyy += k * b.uyy;
            return j;
        });
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace willmore
