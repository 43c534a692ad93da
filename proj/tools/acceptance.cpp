// One line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "willmore/catenoid_sphere.hpp"
#include "willmore/cli.hpp"
#include "willmore/flow.hpp"
#include "willmore/gluing.hpp"
#include "willmore/homotopy.hpp"
#include "willmore/profile_io.hpp"

using namespace willmore;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

ProfilePath round_sphere(double R) {
    PathSegment seg;
    seg.a = -pi / 2;
    seg.b = pi / 2;
    seg.eval = [R](double t) {
        Jet j;
        j.r = R * std::cos(t);
        j.h = R * std::sin(t);
        j.dr = -R * std::sin(t);
        j.dh = R * std::cos(t);
        j.ddr = -j.r;
        j.ddh = -j.h;
        return j;
    };
    return ProfilePath({seg}, {true, true});
}

AttachmentConfig model(CatSphKind lo, CatSphKind up, double lambda, double delta, double R) {
    AttachmentConfig c;
    c.lower = lo;
    c.upper = up;
    c.lambda = lambda;
    c.delta = delta;
    c.R_lower = c.R_upper = R;
    return c;
}

std::string run(const std::vector<std::string>& args, int* code = nullptr) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    if (code) *code = c;
    return o.str();
}

ProfileCurve nodes(std::vector<double> r, std::vector<double> h) {
    std::vector<double> s(r.size(), 0.0);
    for (std::size_t i = 1; i < s.size(); ++i) s[i] = s[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), {true, true}, std::nullopt, loose);
}

ProfileCurve bumped_sphere(int n, double a0, double a1, double a2, double a3) {
    std::vector<double> r(n), h(n);
    for (int i = 0; i < n; ++i) {
        const double p = pi * i / (n - 1);
        const double rad = 1 + a0 * std::cos(2 * p) + a1 * std::cos(3 * p) + a2 * std::pow(std::sin(p), 2) * std::cos(4 * p);
        r[i] = rad * std::sin(p);
        h[i] = -rad * std::cos(p) * (1 + a3);
    }
    r.front() = r.back() = 0.0;
    return nodes(r, h);
}

// ---------------------------------------------------------------------------

Outcome golden() {
    const double ws = willmore_energy(round_sphere(3.0)).total.value;
    const double wc = willmore_energy(builtin_curve("catenary")).total.value;
    const double cap = catsph_energy({6, 6, 0.1, CatSphKind::beta}).parts.cap.value;
    const double cf = 2 * pi * (1 + std::sqrt(1 - 1.21 / 36));
    const bool ok = std::abs(ws / (4 * pi) - 1) < 1e-8 && std::abs(wc) < 1e-8 && std::abs(cap - cf) < 1e-8 * cf;
    return {ok, fmt("sphere rel %.1e, catenary %.1e, cap(6,0.1) rel %.1e", std::abs(ws / (4 * pi) - 1), std::abs(wc),
                    std::abs(cap - cf) / cf)};
}

Outcome limit() {
    const auto r = verify_lemma_2_4(Lemma24Settings::defaults());
    const bool ok = r.limit_monotone && r.limit_gaps.back() < 1e-3 && r.closed_form_below_4pi &&
                    std::abs(r.closed_form - 12.5349) < 5e-5;
    return {ok, fmt("gaps %.2e %.2e %.2e, W_beta(10,10,0) = %.6f", r.limit_gaps[0], r.limit_gaps[1], r.limit_gaps[2],
                    r.closed_form)};
}

Outcome monotone() {
    const auto r = verify_lemma_2_4(Lemma24Settings::defaults());
    const auto& m = r.monotone.front();
    // empirical onset on a finer grid reaching down to small lambda
    std::vector<double> fine;
    for (double l = 2; l <= 200; l += 1) fine.push_back(l);
    const auto rows = catsph_sweep(CatSphKind::beta, fine, {0.1});
    double onset = NAN;
    for (std::size_t k = rows.size() - 1; k-- > 0;) {
        if (rows[k + 1].W_total - rows[k].W_total <= 0) break;
        onset = rows[k].lambda;
    }
    double least = 1e300;
    for (double d : m.forward_diff) least = std::min(least, d);
    return {m.all_positive, fmt("smallest forward difference %.3e on 20..200; monotone from lambda = %g (grid step 1)",
                                least, onset)};
}

Outcome large() {
    const auto r = verify_lemma_2_4(Lemma24Settings::defaults());
    const bool ok = r.beta_close && r.alpha_above && r.alpha_gap_decreasing;
    return {ok, fmt("|W_beta(1e3) - 4pi| = %.2e; alpha excess %.2e %.2e %.2e", r.beta_gap.back(), r.alpha_excess[0],
                    r.alpha_excess[1], r.alpha_excess[2])};
}

Outcome scalings() {
    const auto r = verify_lemma_A3(LemmaA3Settings{});
    return {r.passed, fmt("spread beta %.2f, alpha %.2f; C_dbeta = %.3e", r.beta_max / r.beta_min,
                          r.alpha_max / r.alpha_min, r.C_dbeta)};
}

Outcome derivatives() {
    const auto r = check_derivative_table({2, 6, 50});
    return {r.passed && r.band_dh1_max < 0,
            fmt("%g closed forms, worst rel %.2e, max dlambda h' on band %.2e", double(r.rows.size()), r.worst,
                r.band_dh1_max)};
}

Outcome gluing() {
    int code = 0;
    const std::string rep = run({"verify", "gluing", "--seed", "1"}, &code);
    const auto at = rep.find("\"fitted_slope\"");
    double slope = NAN;
    if (at != std::string::npos) slope = std::stod(rep.substr(rep.find(':', at) + 1));
    return {code == 0 && std::abs(slope - 1) <= 0.15, fmt("50 fit + 50 held-out pairs, slope %.3f", slope)};
}

Outcome j_energies() {
    bool ok = true;
    std::string d;
    for (double l : {20.0, 50.0, 200.0}) {
        const auto e = model_energy(model(CatSphKind::alpha, CatSphKind::alpha, l, 0.1, l));
        ok = ok && e.total.value - 8 * pi > 10 * e.total.error + 1e-10;
        d += fmt("W-8pi(%g) = %.3e; ", l, e.total.value - 8 * pi);
    }
    const auto e = model_energy(model(CatSphKind::alpha, CatSphKind::alpha, 1000, 0.01, 1000));
    ok = ok && e.total.value > 8 * pi && e.total.value - 8 * pi < 0.1;
    return {ok, d + fmt("W-8pi(1e3, 0.01) = %.3e", e.total.value - 8 * pi)};
}

Outcome turning() {
    const auto s = turning_bound_report(round_sphere(2).sample());
    const auto j = turning_bound_report(assemble_model(model(CatSphKind::alpha, CatSphKind::alpha, 20, 0.1, 20)));
    const auto tb = triple_bubble();
    const auto t = turning_bound_report(chain_path(tb.spec).path.sample());
    const bool ok = s.passed && s.boundary_case && j.passed && j.tau == 1.5 && j.W > 8 * pi && t.passed &&
                    t.tau == 2.5 && t.W > 12 * pi;
    return {ok, fmt("sphere boundary case %g, J tau %.1f W-8pi %.3e, triple tau %.1f", double(s.boundary_case), j.tau,
                    j.W - 8 * pi, t.tau)};
}

Outcome liyau() {
    int code = 0;
    const std::string rep = run({"verify", "liyau"}, &code);
    const auto at = rep.find("\"violations\"");
    const int v = at == std::string::npos ? -1 : std::stoi(rep.substr(rep.find(':', at) + 1));
    return {code == 0 && v == 0, fmt("%g violations on the bundled corpus", v)};
}

Outcome flow() {
    std::string d;
    bool ok = true;
    // (a)
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const double a0 = 0.1 * U(rng), a1 = 0.1 * U(rng), a2 = 0.1 * U(rng), a3 = 0.1 * U(rng);
        const ProfileCurve c = bumped_sphere(41, a0, a1, a2, a3);
        const auto g = discrete_gradient(c);
        std::vector<double> r = c.r(), h = c.h();
        for (std::size_t k = 1; k + 1 < r.size(); ++k)
            for (int comp = 0; comp < 2; ++comp) {
                auto& x = comp ? h : r;
                const double e = 1e-4 * std::max(1.0, std::abs(x[k]));
                auto E = [&](double dx) {
                    auto rr = r, hh = h;
                    (comp ? hh : rr)[k] += dx;
                    return discrete_energy(nodes(rr, hh));
                };
                const double fd = (8 * (E(e) - E(-e)) - (E(2 * e) - E(-2 * e))) / (12 * e);
                const double an = comp ? g.dh[k] : g.dr[k];
                worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-12));
            }
    }
    ok = ok && worst < 1e-5;
    d += fmt("(a) %.1e ", worst);

    // (b)
    FlowControls l2;
    l2.metric = FlowMetric::l2;
    FlowState s = make_flow_state(bumped_sphere(201, 0, 0, 0, 0), l2);
    const double W0 = s.W, tau0 = s.tau;
    bool tau_ok = true;
    for (int k = 0; k < 1000; ++k) {
        s = flow_step(s, l2);
        tau_ok = tau_ok && s.tau == tau0;
    }
    ok = ok && std::abs(s.W - W0) < 1e-6;
    d += fmt("(b) %.1e ", std::abs(s.W - W0));

    // (c)
    std::vector<double> r(201), h(201);
    for (int i = 0; i < 201; ++i) {
        const double p = pi * i / 200;
        const double rad = 1 + 0.05 * std::sin(p) * std::sin(p) * std::cos(3 * p);
        r[i] = rad * std::sin(p);
        h[i] = -rad * std::cos(p);
    }
    r.front() = r.back() = 0;
    const auto pc = flow_run(nodes(r, h), FlowControls{});
    bool mono = true;
    for (std::size_t i = 1; i < pc.records.size(); ++i) {
        mono = mono && pc.records[i].W_step <= pc.records[i - 1].W + 1e-10;
        tau_ok = tau_ok && pc.records[i].tau == pc.records[0].tau;
    }
    const double gap = std::abs(pc.final_state.W - 4 * pi);
    ok = ok && pc.termination == FlowTermination::converged && mono && gap <= 1e-3;
    d += fmt("(c) %g steps |W-4pi| %.1e ", double(pc.final_state.step), gap);

    // (d)
    FlowControls jc;
    jc.nodes = 201;
    jc.max_steps = 20000;
    const auto jt = flow_run(assemble_model(model(CatSphKind::alpha, CatSphKind::alpha, 20, 0.1, 2)), jc, true);
    const auto& rec = jt.records;
    double low = 1e300;
    bool trend = true;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec[i].multiplicity >= 2) low = std::min(low, rec[i].W - 8 * pi);
        if (i >= rec.size() / 10) trend = trend && rec[i].trend < 0;
        if (i > 0) {
            mono = mono && rec[i].W_step <= rec[i - 1].W + 1e-10;
            tau_ok = tau_ok && rec[i].tau == rec[0].tau;
        }
    }
    ok = ok && low > -1e-3 && trend && jt.final_neck.residual < 0.1 &&
         jt.termination == FlowTermination::singular_stop;
    d += fmt("(d) min W-8pi %.3f, residual %.1e, %g steps ", low, jt.final_neck.residual, double(rec.size() - 1));

    // (e)
    ok = ok && tau_ok;
    d += tau_ok ? "(e) tau constant" : "(e) tau changed";
    return {ok, d};
}

Outcome shrinking() {
    const auto tr = shrinking_trace(200, 20, 0.1, 100);
    const auto c = composite_energy_after_shrink(model(CatSphKind::beta, CatSphKind::beta, 200, 0.1, 200), tr);
    const bool ok = tr.monotone && tr.W.back() < 4 * pi && c.below_8pi && c.total < 8 * pi;
    return {ok, fmt("end W %.6f (4pi - %.2e), composite %.6f (8pi - %.2e)", tr.W.back(), 4 * pi - tr.W.back(), c.total,
                    8 * pi - c.total)};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> suites = {
        {"verify", "gluing", "--seed", "3"}, {"verify", "lemma24"}, {"verify", "lemmaA3"}, {"verify", "derivatives"},
        {"verify", "liyau"},  {"verify", "turning"},  {"sweep", "--grid", "20:200:20"},
        {"energy", data_dir() + "/j_model.csv"}, {"generate", "triple_bubble"}};
    int same = 0;
    for (const auto& a : suites) same += run(a) == run(a);
    FlowControls c;
    c.nodes = 101;
    c.max_steps = 200;
    const auto init = builtin_curve("j_small");
    const bool flow_same = flow_run(init, c).final_json() == flow_run(init, c).final_json();
    return {same == int(suites.size()) && flow_same,
            fmt("%g of %g reports identical on rerun; flow ", same, double(suites.size())) +
                (flow_same ? "identical" : "differs")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "closed-form golden values", 1, golden},
        {2, "beta energy limit as delta -> 0", 10, limit},
        {3, "monotone beta energy in lambda", 30, monotone},
        {4, "large-lambda beta and alpha energies", 30, large},
        {5, "gluing-band scalings", 120, scalings},
        {6, "derivative tables", 5, derivatives},
        {7, "gluing bound on a held-out corpus", 120, gluing},
        {8, "J energies above 8 pi", 30, j_energies},
        {9, "turning-number bound", 60, turning},
        {10, "Li-Yau on the bundled corpus", 60, liyau},
        {11, "flow properties", 600, flow},
        {12, "shrinking homotopy", 60, shrinking},
        {13, "determinism", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs < c.budget;
        failed += !pass;
        std::printf("%s %2d %s (%.2f s, limit %g s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
