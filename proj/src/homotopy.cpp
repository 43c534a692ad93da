#include "willmore/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "willmore/errors.hpp"
#include "willmore/profile_io.hpp"
#include "willmore/svg.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;

double sigma(CatSphKind k) { return k == CatSphKind::beta ? 1.0 : -1.0; }

// Arc (R sin psi, c + R cos psi), psi measured from the top pole, traversed
// from psi0 to psi1 (either direction). Split at every listed vertex.
ProfilePath sphere_arc(double R, double c, double psi0, double psi1,
                       const std::vector<std::array<double, 2>>& vertices, const std::string& label) {
    const double lo = std::min(psi0, psi1), hi = std::max(psi0, psi1);
    std::vector<double> cuts{lo};
    for (const auto& v : vertices) {
        if (std::abs(std::hypot(v[0], v[1] - c) - R) > 1e-9 * R) continue;
        const double psi = std::atan2(v[0], v[1] - c);
        if (psi > lo + 1e-9 && psi < hi - 1e-9) cuts.push_back(psi);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    std::vector<PathSegment> segs;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        PathSegment seg;
        seg.role = SegmentRole::cap;
        seg.label = label;
        seg.a = cuts[k];
        seg.b = cuts[k + 1];
        seg.eval = [R, c](double psi) {
            const double sn = std::sin(psi), cs = std::cos(psi);
            Jet j;
            j.r = R * sn;
            j.h = c + R * cs;
            j.dr = R * cs;
            j.dh = -R * sn;
            j.ddr = -R * sn;
            j.ddh = -R * cs;
            return j;
        };
        segs.push_back(std::move(seg));
    }
    ProfilePath p(std::move(segs), {lo == 0.0, hi == kPi});
    return psi0 <= psi1 ? p : p.reversed();
}

// Neck half and glue band of a catenoid sphere, starting at the waist.
ProfilePath neck_half(double lambda, double delta, double R, CatSphKind kind) {
    const auto full = catsph_path({lambda, R, delta, kind}, make_gluing_function(delta));
    const auto& s = full.segments();
    return ProfilePath({s[0], s[1]}, {false, false});
}

}  // namespace

void AttachmentConfig::validate() const {
    CatSphParams{lambda, R_lower, delta, lower}.validate();
    CatSphParams{lambda, R_upper, delta, upper}.validate();
}

void ChainSpec::validate() const {
    if (radii.size() < 2) throw ParameterError("a chain needs at least two spheres");
    if (kinds.size() != 2 * (radii.size() - 1))
        throw ParameterError("a chain of n spheres needs 2(n-1) junction kinds");
    for (std::size_t j = 0; j + 1 < radii.size(); ++j) {
        CatSphParams{lambda, radii[j], delta, kinds[2 * j]}.validate();
        CatSphParams{lambda, radii[j + 1], delta, kinds[2 * j + 1]}.validate();
    }
    for (std::size_t k = 1; k + 1 < radii.size(); ++k)
        if (kinds[2 * k - 1] != kinds[2 * k])
            throw ParameterError("middle sphere " + std::to_string(k) +
                                 " needs the same kind at both junctions (mixed kinds put both junctions at one point)");
}

ModelPath chain_path(const ChainSpec& spec) {
    spec.validate();
    const double l = spec.lambda, d = spec.delta;
    const double t0 = std::acosh(l) / l;
    const double asin_edge_scale = 1.0 + d;
    const std::size_t n = spec.radii.size();
    auto sq = [](double R) { return std::sqrt(R * R - 1.0); };

    ModelPath out;
    // Waist heights: z_{j+1} = z_j + 2 t0 + 2 sigma s_{j+1}.
    std::vector<double> z{0.0};
    for (std::size_t j = 1; j + 1 < n; ++j) z.push_back(z.back() + 2.0 * t0 + 2.0 * sigma(spec.kinds[2 * j - 1]) * sq(spec.radii[j]));
    out.neck_heights = z;

    std::vector<double> centers(n);
    centers[0] = z[0] - t0 - sigma(spec.kinds[0]) * sq(spec.radii[0]);
    for (std::size_t j = 0; j + 1 < n; ++j)
        centers[j + 1] = z[j] + t0 + sigma(spec.kinds[2 * j + 1]) * sq(spec.radii[j + 1]);
    out.sphere_centers = centers;

    auto edge = [&](double R) { return std::asin(asin_edge_scale / R); };

    // Bottom sphere, pole to band edge of the lower junction of neck 0.
    const double R0 = spec.radii[0];
    ProfilePath path = spec.kinds[0] == CatSphKind::alpha
                           ? sphere_arc(R0, centers[0], 0.0, kPi - edge(R0), spec.vertices, "sphere0")
                           : sphere_arc(R0, centers[0], kPi, edge(R0), spec.vertices, "sphere0");
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const CatSphKind lo = spec.kinds[2 * j], up = spec.kinds[2 * j + 1];
        const auto lower = neck_half(l, d, spec.radii[j], lo).mirrored().transformed(1.0, z[j] - t0).reversed();
        const auto upper = neck_half(l, d, spec.radii[j + 1], up).transformed(1.0, z[j] + t0);
        path = path.joined(lower).joined(upper);
        const double R = spec.radii[j + 1], c = centers[j + 1];
        const std::string label = "sphere" + std::to_string(j + 1);
        ProfilePath arc;
        if (j + 2 < n) {
            arc = up == CatSphKind::alpha ? sphere_arc(R, c, edge(R), kPi - edge(R), spec.vertices, label)
                                          : sphere_arc(R, c, kPi - edge(R), edge(R), spec.vertices, label);
        } else {
            arc = up == CatSphKind::alpha ? sphere_arc(R, c, edge(R), kPi, spec.vertices, label)
                                          : sphere_arc(R, c, kPi - edge(R), 0.0, spec.vertices, label);
        }
        path = path.joined(arc);
    }
    out.path = ProfilePath(path.segments(), {true, true});
    return out;
}

ModelPath model_path(const AttachmentConfig& cfg) {
    cfg.validate();
    ChainSpec spec;
    spec.lambda = cfg.lambda;
    spec.delta = cfg.delta;
    spec.radii = {cfg.R_lower, cfg.R_upper};
    spec.kinds = {cfg.lower, cfg.upper};
    return chain_path(spec);
}

ProfileCurve assemble_model(const AttachmentConfig& cfg, const SamplingPlan& plan) {
    return model_path(cfg).path.sample(plan);
}

EnergyBreakdown model_energy(const AttachmentConfig& cfg, const QuadratureSettings& q) {
    return willmore_energy(model_path(cfg).path, q);
}

TripleBubble triple_bubble(double lambda, double delta, double R_middle, double R_bottom) {
    TripleBubble tb;
    ChainSpec& s = tb.spec;
    s.lambda = lambda;
    s.delta = delta;
    s.kinds.assign(4, CatSphKind::alpha);
    const double t0 = std::acosh(lambda) / lambda;
    const double cA = -t0 + std::sqrt(R_bottom * R_bottom - 1.0);
    const double cB = t0 - std::sqrt(R_middle * R_middle - 1.0);
    if (!(cB < cA)) throw ParameterError("triple bubble: bottom sphere must be centred above the middle one");
    // Meeting point of the bottom and middle circles.
    const double ph = 0.5 * (cA + cB) + (R_bottom * R_bottom - R_middle * R_middle) / (2.0 * (cB - cA));
    const double pr2 = R_middle * R_middle - (ph - cB) * (ph - cB);
    if (!(pr2 > (1.0 + delta) * (1.0 + delta)))
        throw ParameterError("triple bubble: bottom and middle spheres do not meet outside the bands");
    const double pr = std::sqrt(pr2);
    // Top sphere hangs from the upper junction of the second neck at (1, a).
    const double z1 = 2.0 * t0 - 2.0 * std::sqrt(R_middle * R_middle - 1.0);
    const double a = z1 + t0;
    const double sC = (1.0 - pr2 - (ph - a) * (ph - a)) / (2.0 * (ph - a));
    if (!(sC > 0.0)) throw ParameterError("triple bubble: no top sphere passes through the meeting point");
    const double RC = std::sqrt(1.0 + sC * sC);
    s.radii = {R_bottom, R_middle, RC};
    s.vertices = {{pr, ph}};
    tb.triple_point = {pr, ph};
    s.validate();
    return tb;
}

// ---------------------------------------------------------------------------
// Shrinking homotopy

std::string HomotopyTrace::to_csv() const {
    std::ostringstream os;
    os << "t,lambda_t,W\n";
    for (std::size_t k = 0; k < t.size(); ++k)
        os << format_double(t[k]) << ',' << format_double(lambda_t[k]) << ',' << format_double(W[k]) << '\n';
    return os.str();
}

HomotopyTrace shrinking_trace(double lambda_start, double lambda_end, double delta, int steps,
                              const QuadratureSettings& q) {
    if (steps < 1) throw ParameterError("steps must be >= 1");
    if (!(lambda_start >= lambda_end)) throw ParameterError("lambda_start must be >= lambda_end");
    CatSphParams{lambda_end, lambda_end, delta, CatSphKind::beta}.validate();
    HomotopyTrace tr;
    tr.lambda_start = lambda_start;
    tr.lambda_end = lambda_end;
    tr.delta = delta;
    const int n = lambda_start == lambda_end ? 0 : steps;
    double prev = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double t = n == 0 ? 0.0 : double(k) / n;
        const double lt = k == n ? lambda_end : (1.0 - t) * lambda_start + t * lambda_end;
        const double W = n > 0 && k > 0 && lt == tr.lambda_t.back()
                             ? prev
                             : catsph_energy({lt, lt, delta, CatSphKind::beta}, q).parts.total.value;
        if (!std::isfinite(W)) throw GeometryError("non-finite energy on the shrinking trace", std::size_t(k));
        if (k > 0 && W > prev && tr.monotone) {
            tr.monotone = false;
            tr.warnings.push_back("energy increases between lambda=" + format_double(tr.lambda_t.back()) +
                                  " and lambda=" + format_double(lt) +
                                  "; lambda_end is below the empirical monotonicity threshold for delta=" +
                                  format_double(delta));
        }
        tr.t.push_back(t);
        tr.lambda_t.push_back(lt);
        tr.W.push_back(W);
        prev = W;
    }
    tr.epsilon = 4.0 * kPi - tr.W.back();
    if (!(tr.epsilon > 0.0))
        tr.warnings.push_back("end energy is not below 4 pi (epsilon = " + format_double(tr.epsilon) + ")");
    return tr;
}

CompositeEnergy composite_energy_after_shrink(const AttachmentConfig& cfg, const HomotopyTrace& trace,
                                              const QuadratureSettings& q) {
    if (cfg.lower != CatSphKind::beta && cfg.upper != CatSphKind::beta)
        throw ParameterError("composite energy after shrinking needs at least one beta end");
    if (trace.W.empty()) throw ParameterError("empty trace");
    if (std::abs(trace.delta - cfg.delta) > 1e-15) throw ParameterError("trace delta differs from the configuration");
    cfg.validate();
    CompositeEnergy out;
    out.epsilon = trace.epsilon;
    auto end_energy = [&](CatSphKind kind, double R, bool& untouched_ok) {
        if (kind == CatSphKind::beta) return trace.W.back();
        const double W = catsph_energy({cfg.lambda, R, cfg.delta, kind}, q).parts.total.value;
        if (!(W < 4.0 * kPi + out.epsilon)) untouched_ok = false;
        return W;
    };
    out.W_lower = end_energy(cfg.lower, cfg.R_lower, out.untouched_end_ok);
    out.W_upper = end_energy(cfg.upper, cfg.R_upper, out.untouched_end_ok);
    out.total = out.W_lower + out.W_upper;
    out.below_8pi = out.total < 8.0 * kPi;
    if (!out.untouched_end_ok)
        out.note = "untouched alpha end has W >= 4 pi + epsilon; lambda is outside the regime of the argument";
    else if (!out.below_8pi)
        out.note = "composite energy is not below 8 pi";
    return out;
}

// ---------------------------------------------------------------------------
// Turning-number bound

namespace {

// Quarter circle from (r0, h0) (tangent pointing up) to the axis, upper = true,
// or from the axis up to (r0, h0), upper = false.
ProfilePath quarter_circle(double r0, double h0, bool upper) {
    PathSegment seg;
    seg.role = SegmentRole::quarter;
    seg.label = upper ? "gamma_II" : "gamma_I";
    seg.a = upper ? 0.0 : -kPi / 2.0;
    seg.b = upper ? kPi / 2.0 : 0.0;
    seg.eval = [r0, h0](double t) {
        Jet j;
        j.r = r0 * std::cos(t);
        j.h = r0 * std::sin(t) + h0;
        j.dr = -r0 * std::sin(t);
        j.dh = r0 * std::cos(t);
        j.ddr = -r0 * std::cos(t);
        j.ddh = -r0 * std::sin(t);
        return j;
    };
    return ProfilePath({seg}, {!upper, upper});
}

double quarter_energy(double r0, double h0, bool upper) {
    return willmore_energy(quarter_circle(r0, h0, upper)).total.value;
}

}  // namespace

TurningBoundReport turning_bound_report(const ProfileCurve& input, double tol) {
    if (!input.contact().start || !input.contact().end)
        throw ParameterError("turning bound needs a curve closed on the axis at both ends");
    TurningBoundReport rep;
    ProfileCurve curve = input;
    TangentLift lift = tangent_lift(curve);
    if (lift.tau < 0.0) {
        curve = curve.reversed();
        lift = tangent_lift(curve);
        rep.reoriented = true;
    }
    rep.tau = lift.tau;
    const auto energy = willmore_energy(curve);
    rep.W = energy.total.value;
    rep.W_error = energy.total.error;
    rep.tolerance = std::max(tol, 10.0 * rep.W_error);
    rep.bound = 4.0 * kPi * (std::abs(rep.tau) + 0.5);

    const int k = static_cast<int>(std::lround(rep.tau - 0.5));
    const auto& s = curve.s();
    const auto& th = lift.theta;
    const double th0 = th.front();
    for (int l = 0; l <= k; ++l) {
        const double level = 2.0 * kPi * l + kPi / 2.0;
        std::size_t i = 0;
        while (i + 1 < th.size() && th[i + 1] - th0 < level) ++i;
        if (i + 1 >= th.size())
            throw RefinementRequired("found " + std::to_string(l) + " crossings of the tangent lift, expected " +
                                         std::to_string(k + 1),
                                     i);
        // Smallest root of the piecewise-linear lift in [s_i, s_{i+1}].
        const double a = th[i] - th0 - level, b = th[i + 1] - th0 - level;
        const double w = a >= 0.0 ? 0.0 : a / (a - b);
        const double sc = s[i] + w * (s[i + 1] - s[i]);
        const double rc = curve.r()[i] + w * (curve.r()[i + 1] - curve.r()[i]);
        const double hc = curve.h()[i] + w * (curve.h()[i + 1] - curve.h()[i]);
        rep.crossing_s.push_back(sc);
        rep.crossing_points.push_back({rc, hc});
    }

    bool seg_ok = true;
    auto add = [&](const std::string& kind, double s0, double s1, double quarters, double required) {
        TurningSegment seg;
        seg.kind = kind;
        seg.s_from = s0;
        seg.s_to = s1;
        seg.W_piece = willmore_energy_between(curve, s0, s1);
        seg.W_quarters = quarters;
        seg.W_closed = seg.W_piece + quarters;
        seg.required = required;
        seg.ok = seg.W_piece >= required - rep.tolerance;
        seg_ok = seg_ok && seg.ok;
        rep.segments.push_back(seg);
    };
    const auto& cp = rep.crossing_points;
    add("start", s.front(), rep.crossing_s.front(), quarter_energy(cp.front()[0], cp.front()[1], true), 2.0 * kPi);
    for (int l = 0; l < k; ++l)
        add("interior", rep.crossing_s[l], rep.crossing_s[l + 1],
            quarter_energy(cp[l][0], cp[l][1], false) + quarter_energy(cp[l + 1][0], cp[l + 1][1], true), 4.0 * kPi);
    add("end", rep.crossing_s.back(), s.back(), quarter_energy(cp.back()[0], cp.back()[1], false), 2.0 * kPi);

    rep.global_ok = rep.W >= rep.bound - rep.tolerance;
    rep.boundary_case = std::abs(rep.W - rep.bound) <= rep.tolerance;
    rep.passed = rep.global_ok && seg_ok;
    return rep;
}

std::string TurningBoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["tau"] = tau;
    j["reoriented"] = reoriented;
    j["crossing_s"] = crossing_s;
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : crossing_points) pts.push_back({p[0], p[1]});
    j["crossing_points"] = pts;
    auto segs = nlohmann::ordered_json::array();
    for (const auto& s : segments)
        segs.push_back({{"kind", s.kind},
                        {"s_from", s.s_from},
                        {"s_to", s.s_to},
                        {"W_piece", s.W_piece},
                        {"W_quarters", s.W_quarters},
                        {"W_closed", s.W_closed},
                        {"required", s.required},
                        {"ok", s.ok}});
    j["segments"] = segs;
    j["W"] = W;
    j["W_error"] = W_error;
    j["bound"] = bound;
    j["gap"] = W - bound;
    j["tolerance"] = tolerance;
    j["global_ok"] = global_ok;
    j["boundary_case"] = boundary_case;
    j["strict_gap"] = W - bound > tolerance;
    j["passed"] = passed;
    return j.dump(2);
}

std::string turning_bound_svg(const ProfileCurve& curve_in, const TurningBoundReport& rep) {
    const ProfileCurve curve = rep.reoriented ? curve_in.reversed() : curve_in;
    SvgPlot plot(560, 720);
    plot.title("tau = " + format_double(rep.tau) + ", W = " + format_double(std::round(rep.W * 1e4) / 1e4) +
               ", bound = " + format_double(std::round(rep.bound * 1e4) / 1e4));
    const double hmin = *std::min_element(curve.h().begin(), curve.h().end());
    const double hmax = *std::max_element(curve.h().begin(), curve.h().end());
    plot.polyline({0.0, 0.0}, {hmin, hmax}, "#999", 1.0, true);
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    const auto& s = curve.s();
    for (std::size_t g = 0; g < rep.segments.size(); ++g) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] >= rep.segments[g].s_from && s[i] <= rep.segments[g].s_to) {
                x.push_back(curve.r()[i]);
                y.push_back(curve.h()[i]);
            }
        plot.polyline(x, y, colors[g % 5], 2.0);
    }
    for (std::size_t l = 0; l < rep.crossing_points.size(); ++l) {
        const double r0 = rep.crossing_points[l][0], h0 = rep.crossing_points[l][1];
        std::vector<double> x, y;
        for (int i = -64; i <= 64; ++i) {
            const double t = i * kPi / 128.0;
            x.push_back(r0 * std::cos(t));
            y.push_back(h0 + r0 * std::sin(t));
        }
        plot.polyline(x, y, "#555", 1.0, true);
        plot.marker(r0, h0);
        plot.label(r0, h0, "t" + std::to_string(l));
    }
    return plot.str();
}

}  // namespace willmore
