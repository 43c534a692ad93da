#include "willmore/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "willmore/discrete.hpp"
#include "willmore/errors.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a;
}

double jet_speed(const Jet& j) { return std::hypot(j.dr, j.dh); }

bool close_points(const Jet& a, const Jet& b, double scale) {
    return std::hypot(a.r - b.r, a.h - b.h) <= 1e-9 * std::max(1.0, scale);
}

}  // namespace

const char* to_string(SegmentRole role) {
    switch (role) {
        case SegmentRole::neck: return "neck";
        case SegmentRole::glue: return "glue";
        case SegmentRole::cap: return "cap";
        case SegmentRole::quarter: return "quarter";
        case SegmentRole::generic: break;
    }
    return "generic";
}

// ---------------------------------------------------------------------------
// ProfilePath

ProfilePath::ProfilePath(std::vector<PathSegment> segments, AxisContact contact)
    : segments_(std::move(segments)), contact_(contact) {
    if (segments_.empty()) throw ParameterError("ProfilePath: no segments");
    double scale = 0.0;
    for (const auto& seg : segments_) {
        if (!seg.eval) throw ParameterError("ProfilePath: segment without evaluator");
        if (!(seg.a < seg.b)) throw ParameterError("ProfilePath: segment interval must satisfy a < b");
        const Jet j = seg.eval(seg.a);
        scale = std::max({scale, std::abs(j.r), std::abs(j.h)});
    }
    for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
        const Jet e = segments_[k].eval(segments_[k].b);
        const Jet s = segments_[k + 1].eval(segments_[k + 1].a);
        if (!close_points(e, s, scale))
            throw ParameterError("ProfilePath: segments " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                 " do not meet");
    }
}

Jet ProfilePath::start() const { return segments_.front().eval(segments_.front().a); }
Jet ProfilePath::end() const { return segments_.back().eval(segments_.back().b); }

ProfilePath ProfilePath::reversed() const {
    std::vector<PathSegment> out;
    out.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        PathSegment seg = *it;
        const double a = it->a, b = it->b;
        auto f = it->eval;
        seg.eval = [f, a, b](double p) {
            Jet j = f(a + b - p);
            j.dr = -j.dr;
            j.dh = -j.dh;
            return j;
        };
        out.push_back(std::move(seg));
    }
    return ProfilePath(std::move(out), {contact_.end, contact_.start});
}

ProfilePath ProfilePath::transformed(double scale, double shift) const {
    if (!(scale > 0.0)) throw ParameterError("ProfilePath::transformed: scale must be positive");
    std::vector<PathSegment> out = segments_;
    for (auto& seg : out) {
        auto f = seg.eval;
        seg.eval = [f, scale, shift](double p) {
            Jet j = f(p);
            j.r *= scale;
            j.h = scale * j.h + shift;
            j.dr *= scale;
            j.dh *= scale;
            j.ddr *= scale;
            j.ddh *= scale;
            return j;
        };
    }
    return ProfilePath(std::move(out), contact_);
}

ProfilePath ProfilePath::mirrored() const {
    std::vector<PathSegment> out = segments_;
    for (auto& seg : out) {
        auto f = seg.eval;
        seg.eval = [f](double p) {
            Jet j = f(p);
            j.h = -j.h;
            j.dh = -j.dh;
            j.ddh = -j.ddh;
            return j;
        };
    }
    return ProfilePath(std::move(out), contact_);
}

ProfilePath ProfilePath::joined(const ProfilePath& next) const {
    std::vector<PathSegment> out = segments_;
    out.insert(out.end(), next.segments_.begin(), next.segments_.end());
    return ProfilePath(std::move(out), {contact_.start, next.contact_.end});
}

ProfileCurve ProfilePath::sample(const SamplingPlan& plan) const {
    constexpr int kProbe = 256;
    const std::size_t nseg = segments_.size();
    std::vector<double> len(nseg, 0.0), turn(nseg, 0.0);
    for (std::size_t k = 0; k < nseg; ++k) {
        const auto& seg = segments_[k];
        double prev_angle = 0.0, prev_speed = 0.0;
        for (int i = 0; i <= kProbe; ++i) {
            const double p = seg.a + (seg.b - seg.a) * i / kProbe;
            const Jet j = seg.eval(p);
            const double sp = jet_speed(j);
            const double ang = std::atan2(j.dh, j.dr);
            if (i > 0) {
                len[k] += 0.5 * (sp + prev_speed) * (seg.b - seg.a) / kProbe;
                turn[k] += std::abs(wrap_angle(ang - prev_angle));
            }
            prev_angle = ang;
            prev_speed = sp;
        }
    }
    const double total_len = std::accumulate(len.begin(), len.end(), 0.0);
    const double total_turn = std::accumulate(turn.begin(), turn.end(), 0.0);

    std::vector<std::size_t> counts(nseg);
    for (std::size_t k = 0; k < nseg; ++k) {
        double w = 0.5 * len[k] / total_len;
        w += total_turn > 0.0 ? 0.5 * turn[k] / total_turn : 0.5 / nseg;
        std::size_t n = static_cast<std::size_t>(std::ceil(w * plan.total_intervals));
        n = std::max(n, plan.min_per_segment);
        n = (n + 3) / 4 * 4;
        counts[k] = std::max<std::size_t>(n, 4);
    }

    std::vector<double> s, r, h;
    ProfileCurve::Derivatives d;
    double s_acc = 0.0;
    QuadratureSettings arc_q;
    arc_q.initial_panels = 1;
    arc_q.rel_tol = 1e-14;
    arc_q.abs_tol = 1e-300;

    for (std::size_t k = 0; k < nseg; ++k) {
        const auto& seg = segments_[k];
        const std::size_t n = counts[k];
        const double dp = (seg.b - seg.a) / static_cast<double>(n);
        auto speed = [&seg](double p) { return jet_speed(seg.eval(p)); };
        for (std::size_t i = (k == 0 ? 0 : 1); i <= n; ++i) {
            const double p = i == n ? seg.b : seg.a + dp * static_cast<double>(i);
            if (i > 0) {
                const double p0 = seg.a + dp * static_cast<double>(i - 1);
                s_acc += adaptive_simpson(speed, p0, p, arc_q).value;
            }
            const Jet j = seg.eval(p);
            const double sp = jet_speed(j);
            if (!(sp > 0.0)) throw RegularityError("ProfilePath::sample: zero speed", s.size());
            const double tr = j.dr / sp, th = j.dh / sp;
            const double dot = (j.ddr * j.dr + j.ddh * j.dh) / (sp * sp);
            s.push_back(s_acc);
            r.push_back(j.r);
            h.push_back(j.h);
            d.dr.push_back(tr);
            d.dh.push_back(th);
            d.ddr.push_back((j.ddr - dot * j.dr) / (sp * sp));
            d.ddh.push_back((j.ddh - dot * j.dh) / (sp * sp));
        }
    }
    if (contact_.start) r.front() = 0.0;
    if (contact_.end) r.back() = 0.0;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), contact_, std::move(d));
}

// ---------------------------------------------------------------------------
// ProfileCurve

ProfileCurve::ProfileCurve(std::vector<double> s, std::vector<double> r, std::vector<double> h, AxisContact contact,
                           std::optional<Derivatives> derivatives, const CurveChecks& checks)
    : s_(std::move(s)), r_(std::move(r)), h_(std::move(h)), contact_(contact), derivatives_(std::move(derivatives)) {
    const std::size_t n = s_.size();
    if (r_.size() != n || h_.size() != n) throw ParameterError("ProfileCurve: s, r, h sizes differ");
    if (n < 5) throw ParameterError("ProfileCurve: at least 5 samples required");
    if (derivatives_) {
        const auto& dv = *derivatives_;
        if (dv.dr.size() != n || dv.dh.size() != n || dv.ddr.size() != n || dv.ddh.size() != n)
            throw ParameterError("ProfileCurve: derivative arrays must match the sample count");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s_[i]) || !std::isfinite(r_[i]) || !std::isfinite(h_[i]))
            throw GeometryError("ProfileCurve: non-finite sample", i);
        if (i > 0 && !(s_[i] > s_[i - 1])) throw GeometryError("ProfileCurve: parameter not strictly increasing", i);
        if (r_[i] < 0.0) throw GeometryError("ProfileCurve: negative radius", i);
        if (i > 0 && r_[i] == r_[i - 1] && h_[i] == h_[i - 1])
            throw RegularityError("ProfileCurve: consecutive samples coincide (zero discrete speed)", i);
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (!(r_[i] > 0.0)) throw RegularityError("ProfileCurve: interior sample on the axis (not immersed)", i);
    auto check_end = [&](bool on_axis, std::size_t i0, std::size_t i1, std::size_t i2) {
        if (!on_axis) return;
        if (r_[i0] != 0.0) throw GeometryError("ProfileCurve: axis end must have r = 0", i0);
        double slope;
        if (derivatives_) {
            slope = std::abs((*derivatives_).dh[i0]) / std::max(std::abs((*derivatives_).dr[i0]), 1e-300);
        } else {
            // h = c0 + c1 r + c2 r^2 through three samples; c1 is the slope at the axis.
            const double r1 = r_[i1], r2 = r_[i2];
            const double g1 = (h_[i1] - h_[i0]) / r1, g2 = (h_[i2] - h_[i0]) / r2;
            slope = std::abs((g1 * r2 - g2 * r1) / (r2 - r1));
        }
        if (!(slope <= checks.perpendicular_tol))
            throw GeometryError("ProfileCurve: curve does not meet the axis perpendicularly", i0);
    };
    check_end(contact_.start, 0, 1, 2);
    check_end(contact_.end, n - 1, n - 2, n - 3);
}

ProfileCurve ProfileCurve::reversed() const {
    const std::size_t n = size();
    std::vector<double> s(n), r(n), h(n);
    const double total = s_.front() + s_.back();
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = total - s_[n - 1 - i];
        r[i] = r_[n - 1 - i];
        h[i] = h_[n - 1 - i];
    }
    std::optional<Derivatives> d;
    if (derivatives_) {
        Derivatives rd;
        const auto& o = *derivatives_;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = n - 1 - i;
            rd.dr.push_back(-o.dr[j]);
            rd.dh.push_back(-o.dh[j]);
            rd.ddr.push_back(o.ddr[j]);
            rd.ddh.push_back(o.ddh[j]);
        }
        d = std::move(rd);
    }
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), {contact_.end, contact_.start}, std::move(d), loose);
}

ProfileCurve ProfileCurve::scaled(double sigma) const {
    if (!(sigma > 0.0)) throw ParameterError("ProfileCurve::scaled: factor must be positive");
    std::vector<double> s = s_, r = r_, h = h_;
    for (auto& v : s) v *= sigma;
    for (auto& v : r) v *= sigma;
    for (auto& v : h) v *= sigma;
    std::optional<Derivatives> d = derivatives_;
    if (d) {
        for (auto& v : d->ddr) v /= sigma;
        for (auto& v : d->ddh) v /= sigma;
    }
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), contact_, std::move(d), loose);
}

ProfileCurve ProfileCurve::without_derivatives() const {
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(s_, r_, h_, contact_, std::nullopt, loose);
}

double ProfileCurve::diameter() const {
    // Extent of the surface of revolution: radial span doubles through the axis.
    const auto [hmin, hmax] = std::minmax_element(h_.begin(), h_.end());
    const double rmax = *std::max_element(r_.begin(), r_.end());
    return std::hypot(2.0 * rmax, *hmax - *hmin);
}

double ProfileCurve::length() const {
    double L = 0.0;
    for (std::size_t i = 1; i < size(); ++i) L += std::hypot(r_[i] - r_[i - 1], h_[i] - h_[i - 1]);
    return L;
}

// ---------------------------------------------------------------------------
// Finite-difference route

namespace {

struct FdData {
    std::vector<double> x;  // chord-length coordinate
    std::vector<double> dr, dh, ddr, ddh;
};

FdData fd_derivatives(const std::vector<double>& r, const std::vector<double>& h, AxisContact contact) {
    const std::size_t n = r.size();
    FdData out;
    out.x.resize(n);
    out.x[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) out.x[i] = out.x[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);

    // Extended arrays with mirror ghosts at axis ends.
    const std::size_t gs = contact.start ? 2 : 0;
    const std::size_t ge = contact.end ? 2 : 0;
    std::vector<double> xe, re, he;
    xe.reserve(n + gs + ge);
    for (std::size_t k = gs; k >= 1; --k) {
        xe.push_back(-out.x[k]);
        re.push_back(-r[k]);
        he.push_back(h[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        xe.push_back(out.x[i]);
        re.push_back(r[i]);
        he.push_back(h[i]);
    }
    for (std::size_t k = 1; k <= ge; ++k) {
        xe.push_back(2.0 * out.x[n - 1] - out.x[n - 1 - k]);
        re.push_back(-r[n - 1 - k]);
        he.push_back(h[n - 1 - k]);
    }
    const std::size_t E = xe.size();
    out.dr.resize(n);
    out.dh.resize(n);
    out.ddr.resize(n);
    out.ddh.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = i + gs;
        std::size_t w = e >= 2 ? e - 2 : 0;
        w = std::min(w, E - 5);
        std::array<double, 5> xs, d1, d2;
        for (int k = 0; k < 5; ++k) xs[k] = xe[w + k];
        detail::fd_weights(xe[e], xs, d1, d2);
        double a = 0, b = 0, c = 0, dd = 0;
        for (int k = 0; k < 5; ++k) {
            a += d1[k] * re[w + k];
            b += d1[k] * he[w + k];
            c += d2[k] * re[w + k];
            dd += d2[k] * he[w + k];
        }
        out.dr[i] = a;
        out.dh[i] = b;
        out.ddr[i] = c;
        out.ddh[i] = dd;
    }
    return out;
}

DensitySamples density_of(const std::vector<double>& r, const std::vector<double>& h, AxisContact contact) {
    FdData fd = fd_derivatives(r, h, contact);
    DensitySamples out;
    out.f.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        out.f[i] = detail::willmore_density(r[i], fd.dr[i], fd.dh[i], fd.ddr[i], fd.ddh[i]);
    out.x = std::move(fd.x);
    return out;
}

}  // namespace

DensitySamples energy_density(const ProfileCurve& curve) {
    if (!curve.has_derivatives()) return density_of(curve.r(), curve.h(), curve.contact());
    DensitySamples out;
    out.x = curve.s();
    out.f.resize(curve.size());
    const auto& d = curve.derivatives();
    for (std::size_t i = 0; i < curve.size(); ++i)
        out.f[i] = detail::willmore_density(curve.r()[i], d.dr[i], d.dh[i], d.ddr[i], d.ddh[i]);
    return out;
}

EnergyBreakdown willmore_energy(const ProfileCurve& curve) {
    EnergyBreakdown out;
    const DensitySamples dens = energy_density(curve);
    const QuadratureResult fine = composite_simpson(dens.x, dens.f);
    out.total.value = fine.value;
    out.total.error = fine.error;
    if (!curve.has_derivatives() && curve.size() >= 9) {
        // Richardson against an independent finite-difference pass on the coarse grid.
        std::vector<double> rc, hc;
        for (std::size_t i = 0; i < curve.size(); i += 2) {
            rc.push_back(curve.r()[i]);
            hc.push_back(curve.h()[i]);
        }
        if ((curve.size() - 1) % 2 == 0) {
            const DensitySamples coarse = density_of(rc, hc, curve.contact());
            out.total.error = std::abs(fine.value - composite_simpson(coarse.x, coarse.f).value) / 15.0;
        }
    }
    out.other = out.total;
    return out;
}

EnergyBreakdown willmore_energy(const ProfilePath& path, const QuadratureSettings& q) {
    EnergyBreakdown out;
    for (const auto& seg : path.segments()) {
        auto f = [&seg](double p) {
            const Jet j = seg.eval(p);
            return detail::willmore_density(j.r, j.dr, j.dh, j.ddr, j.ddh);
        };
        const QuadratureResult res = adaptive_simpson(f, seg.a, seg.b, q);
        EnergyPart* part = &out.other;
        switch (seg.role) {
            case SegmentRole::cap:
            case SegmentRole::quarter: part = &out.cap; break;
            case SegmentRole::glue: part = &out.glue; break;
            case SegmentRole::neck: part = &out.neck; break;
            case SegmentRole::generic: break;
        }
        part->value += res.value;
        part->error += res.error;
        out.total.value += res.value;
        out.total.error += res.error;
        out.converged = out.converged && res.converged;
    }
    return out;
}

double willmore_energy_between(const ProfileCurve& curve, double s_lo, double s_hi) {
    const DensitySamples dens = energy_density(curve);
    if (curve.has_derivatives()) return piecewise_quadratic_integral(dens.x, dens.f, s_lo, s_hi);
    // Map s bounds to the chord coordinate by linear interpolation.
    auto to_x = [&](double sv) {
        const auto& s = curve.s();
        if (sv <= s.front()) return dens.x.front();
        if (sv >= s.back()) return dens.x.back();
        const std::size_t k = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), sv) - s.begin());
        const double t = (sv - s[k - 1]) / (s[k] - s[k - 1]);
        return dens.x[k - 1] + t * (dens.x[k] - dens.x[k - 1]);
    };
    return piecewise_quadratic_integral(dens.x, dens.f, to_x(s_lo), to_x(s_hi));
}

std::vector<std::array<double, 2>> unit_tangents(const ProfileCurve& curve) {
    std::vector<std::array<double, 2>> t(curve.size());
    if (curve.has_derivatives()) {
        const auto& d = curve.derivatives();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double sp = std::hypot(d.dr[i], d.dh[i]);
            t[i] = {d.dr[i] / sp, d.dh[i] / sp};
        }
        return t;
    }
    const FdData fd = fd_derivatives(curve.r(), curve.h(), curve.contact());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double sp = std::hypot(fd.dr[i], fd.dh[i]);
        if (!(sp > 0.0)) throw RegularityError("unit_tangents: vanishing tangent", i);
        t[i] = {fd.dr[i] / sp, fd.dh[i] / sp};
    }
    return t;
}

// ---------------------------------------------------------------------------
// Tangent lift

TangentLift tangent_lift(const ProfileCurve& curve, const LiftSettings& settings) {
    const auto t = unit_tangents(curve);
    TangentLift out;
    out.theta.resize(t.size());
    out.theta[0] = std::atan2(t[0][1], t[0][0]);
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double raw = std::atan2(t[i][1], t[i][0]);
        const double step = wrap_angle(raw - out.theta[i - 1]);
        if (std::abs(step) >= settings.max_step)
            throw RefinementRequired("tangent_lift: tangent angle jumps too far between samples; refine the curve", i);
        out.theta[i] = out.theta[i - 1] + step;
    }
    out.turning = (out.theta.back() - out.theta.front()) / (2.0 * kPi);
    out.tau = out.turning;
    if (curve.contact().start && curve.contact().end) {
        const double snapped = std::round(out.turning - 0.5) + 0.5;
        if (std::abs(snapped - out.turning) < 0.05) out.tau = snapped;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Self-intersections

namespace {

struct Pt {
    double r, h;
};

double cross(Pt o, Pt a, Pt b) { return (a.r - o.r) * (b.h - o.h) - (a.h - o.h) * (b.r - o.r); }

double point_segment_dist(Pt p, Pt a, Pt b, Pt& closest) {
    const double dr = b.r - a.r, dh = b.h - a.h;
    const double L2 = dr * dr + dh * dh;
    double t = L2 > 0 ? ((p.r - a.r) * dr + (p.h - a.h) * dh) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    closest = {a.r + t * dr, a.h + t * dh};
    return std::hypot(p.r - closest.r, p.h - closest.h);
}

// Returns true and a representative point when segments ab and cd intersect
// or come within tol of each other.
bool segments_meet(Pt a, Pt b, Pt c, Pt d, double tol, Pt& where) {
    const double d1 = cross(c, d, a), d2 = cross(c, d, b);
    const double d3 = cross(a, b, c), d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        const double t = d1 / (d1 - d2);
        where = {a.r + t * (b.r - a.r), a.h + t * (b.h - a.h)};
        return true;
    }
    // Touching, collinear, or near miss: smallest endpoint-to-segment distance.
    double best = 1e300;
    Pt q{}, cl{};
    const Pt ends[4] = {a, b, c, d};
    for (int k = 0; k < 4; ++k) {
        const double dist = k < 2 ? point_segment_dist(ends[k], c, d, cl) : point_segment_dist(ends[k], a, b, cl);
        if (dist < best) {
            best = dist;
            q = {0.5 * (ends[k].r + cl.r), 0.5 * (ends[k].h + cl.h)};
        }
    }
    if (best <= tol) {
        where = q;
        return true;
    }
    return false;
}

struct Hit {
    Pt p;
    std::size_t i, j;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

std::vector<TuplePoint> tuple_points(const ProfileCurve& curve, const MultiplicitySettings& settings) {
    const std::size_t n = curve.size();
    const double tol = settings.relative_tol * curve.diameter();
    std::vector<Pt> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {curve.r()[i], curve.h()[i]};

    // Segment bounding boxes, sorted by lower h for a sweep.
    const std::size_t m = n - 1;
    struct Box {
        double r0, r1, h0, h1;
        std::size_t idx;
    };
    std::vector<Box> boxes(m);
    for (std::size_t i = 0; i < m; ++i)
        boxes[i] = {std::min(p[i].r, p[i + 1].r) - tol, std::max(p[i].r, p[i + 1].r) + tol,
                    std::min(p[i].h, p[i + 1].h) - tol, std::max(p[i].h, p[i + 1].h) + tol, i};
    std::sort(boxes.begin(), boxes.end(), [](const Box& x, const Box& y) { return x.h0 < y.h0 || (x.h0 == y.h0 && x.idx < y.idx); });

    std::vector<Hit> hits;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m && boxes[b].h0 <= boxes[a].h1; ++b) {
            const Box& A = boxes[a];
            const Box& B = boxes[b];
            if (B.r0 > A.r1 || A.r0 > B.r1) continue;
            const std::size_t i = std::min(A.idx, B.idx), j = std::max(A.idx, B.idx);
            if (j - i < 2) continue;
            Pt w{};
            if (segments_meet(p[i], p[i + 1], p[j], p[j + 1], tol, w) && w.r > tol) hits.push_back({w, i, j});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });

    // Cluster hits closer than 2 tol.
    std::vector<std::size_t> parent(hits.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a + 1; b < hits.size(); ++b)
            if (std::hypot(hits[a].p.r - hits[b].p.r, hits[a].p.h - hits[b].p.h) <= 2.0 * tol)
                parent[find_root(parent, a)] = find_root(parent, b);

    std::vector<TuplePoint> out;
    std::vector<std::size_t> roots;
    for (std::size_t a = 0; a < hits.size(); ++a)
        if (find_root(parent, a) == a) roots.push_back(a);
    for (std::size_t root : roots) {
        std::vector<std::size_t> segs;
        double sr = 0, sh = 0;
        int cnt = 0;
        for (std::size_t a = 0; a < hits.size(); ++a) {
            if (find_root(parent, a) != root) continue;
            segs.push_back(hits[a].i);
            segs.push_back(hits[a].j);
            sr += hits[a].p.r;
            sh += hits[a].p.h;
            ++cnt;
        }
        std::sort(segs.begin(), segs.end());
        segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
        // Adjacent segments belong to the same pass.
        int passes = 1;
        for (std::size_t k = 1; k < segs.size(); ++k)
            if (segs[k] - segs[k - 1] > 1) ++passes;
        out.push_back({sr / cnt, sh / cnt, passes});
    }
    return out;
}

int tuple_point_multiplicity(const ProfileCurve& curve, const MultiplicitySettings& settings) {
    int n = 1;
    for (const auto& tp : tuple_points(curve, settings)) n = std::max(n, tp.multiplicity);
    return n;
}

LiYauReport liyau_check(const ProfileCurve& curve, double abs_tol, const MultiplicitySettings& m) {
    LiYauReport rep;
    rep.multiplicity = tuple_point_multiplicity(curve, m);
    const EnergyBreakdown e = willmore_energy(curve);
    rep.energy = e.total.value;
    rep.energy_error = e.total.error;
    rep.bound = 4.0 * kPi * rep.multiplicity;
    rep.tolerance = std::max(abs_tol, 10.0 * e.total.error);
    rep.satisfied = rep.energy >= rep.bound - rep.tolerance;
    return rep;
}

}  // namespace willmore
