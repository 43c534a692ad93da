#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"
#include "willmore/errors.hpp"
#include "willmore/flow.hpp"
#include "willmore/homotopy.hpp"

using namespace willmore;
constexpr double pi = std::numbers::pi;

namespace {

ProfileCurve nodes(std::vector<double> r, std::vector<double> h, AxisContact contact = {true, true}) {
    std::vector<double> s(r.size(), 0.0);
    for (std::size_t i = 1; i < s.size(); ++i) s[i] = s[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);
    CurveChecks loose;
    loose.perpendicular_tol = 1e300;
    return ProfileCurve(std::move(s), std::move(r), std::move(h), contact, std::nullopt, loose);
}

// Sphere of radius R with radial bump R (1 + a sin^2 p cos 3p).
ProfileCurve sphere(int n, double R = 1.0, double bump = 0.0) {
    std::vector<double> r(n), h(n);
    for (int i = 0; i < n; ++i) {
        const double p = pi * i / (n - 1);
        const double rad = R * (1 + bump * std::sin(p) * std::sin(p) * std::cos(3 * p));
        r[i] = rad * std::sin(p);
        h[i] = -rad * std::cos(p);
    }
    r.front() = r.back() = 0.0;
    return nodes(r, h);
}

AttachmentConfig j_model() {
    AttachmentConfig c;
    c.lower = c.upper = CatSphKind::alpha;
    c.lambda = 20;
    c.delta = 0.1;
    c.R_lower = c.R_upper = 2;
    return c;
}

}  // namespace

TEST_CASE("discrete energy of sampled spheres") {
    CHECK(discrete_energy(sphere(201)) == doctest::Approx(4 * pi).epsilon(1e-6));
    CHECK(discrete_energy(sphere(201, 7.5)) == doctest::Approx(discrete_energy(sphere(201))).epsilon(1e-12));
    CHECK_THROWS_AS(discrete_energy(sphere(200)), ParameterError);
}

TEST_CASE("discrete gradient against central differences") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 41;
        const double a0 = 0.1 * U(rng), a1 = 0.1 * U(rng), a2 = 0.1 * U(rng), a3 = 0.1 * U(rng);
        std::vector<double> r(n), h(n);
        for (int i = 0; i < n; ++i) {
            const double p = pi * i / (n - 1);
            const double rad = 1 + a0 * std::cos(2 * p) + a1 * std::cos(3 * p) + a2 * std::pow(std::sin(p), 2) * std::cos(4 * p);
            r[i] = rad * std::sin(p);
            h[i] = -rad * std::cos(p) * (1 + a3);
        }
        r.front() = r.back() = 0.0;
        const auto g = discrete_gradient(nodes(r, h));
        for (int k = 1; k < n - 1; ++k) {
            for (int comp = 0; comp < 2; ++comp) {
                auto& x = comp ? h : r;
                const double e = 1e-4 * std::max(1.0, std::abs(x[k]));
                auto E = [&](double d) {
                    auto rr = r, hh = h;
                    (comp ? hh : rr)[k] += d;
                    return discrete_energy(nodes(rr, hh));
                };
                const double fd = (8 * (E(e) - E(-e)) - (E(2 * e) - E(-2 * e))) / (12 * e);
                const double an = comp ? g.dh[k] : g.dr[k];
                worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-12));
            }
        }
        CHECK(g.dr.front() == 0.0);
        CHECK(g.dh.back() == 0.0);
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("round sphere is stationary") {
    FlowControls l2;
    l2.metric = FlowMetric::l2;
    FlowState s = make_flow_state(sphere(201), l2);
    const double W0 = s.W, tau = s.tau;
    for (int k = 0; k < 1000; ++k) {
        s = flow_step(s, l2);
        REQUIRE(s.tau == tau);
    }
    CHECK(std::abs(s.W - W0) < 1e-6);
    CHECK(s.W <= W0);

    const auto tr = flow_run(sphere(201), FlowControls{});
    CHECK(tr.termination == FlowTermination::converged);
    CHECK(tr.final_state.step == 0);
}

TEST_CASE("perturbed sphere converges") {
    const auto tr = flow_run(sphere(201, 1.0, 0.05), FlowControls{});
    CHECK(tr.termination == FlowTermination::converged);
    CHECK(std::abs(tr.final_state.W - 4 * pi) <= 1e-3);
    CHECK(tr.records.front().W > 4 * pi + 0.2);
    for (std::size_t i = 1; i < tr.records.size(); ++i) {
        CHECK(tr.records[i].W_step <= tr.records[i - 1].W + 1e-10);
        CHECK(tr.records[i].tau == tr.records[0].tau);
    }
}

TEST_CASE("J flow pinches a catenoid neck") {
    FlowControls ctrl;
    ctrl.nodes = 201;
    ctrl.max_steps = 20000;
    const auto tr = flow_run(assemble_model(j_model()), ctrl, true);
    REQUIRE(tr.termination == FlowTermination::singular_stop);
    const auto& rec = tr.records;
    for (std::size_t i = 1; i < rec.size(); ++i) {
        CHECK(rec[i].W_step <= rec[i - 1].W + 1e-10);
        CHECK(rec[i].tau == rec[0].tau);
    }
    for (const auto& r : rec)
        if (r.multiplicity >= 2) CHECK(r.W > 8 * pi - 1e-3);
    // After the transient the least-squares trend of r_min stays negative.
    for (std::size_t i = rec.size() / 10; i < rec.size(); ++i) CHECK(rec[i].trend < 0);
    CHECK(rec.back().r_min < 0.2 * rec.front().r_min);
    CHECK(tr.final_neck.is_neck);
    CHECK(tr.final_neck.residual < 0.1);
    CHECK(tr.final_neck.trend < 0);
}

TEST_CASE("beta-beta model falls below 8 pi") {
    AttachmentConfig c = j_model();
    c.lower = c.upper = CatSphKind::beta;
    FlowControls ctrl;
    ctrl.nodes = 201;
    ctrl.max_steps = 5000;
    const auto tr = flow_run(assemble_model(c), ctrl);
    CHECK(tr.records.front().W > 8 * pi);
    bool below = false;
    for (const auto& r : tr.records) below = below || r.W < 8 * pi;
    CHECK(below);
    CHECK(tr.termination == FlowTermination::converged);
}

TEST_CASE("parabolic scaling of one step") {
    const double sigma = 3.0;
    for (auto metric : {FlowMetric::l2, FlowMetric::sobolev}) {
        FlowControls a;
        a.metric = metric;
        a.dt = metric == FlowMetric::l2 ? 1e-7 : 1e-2;
        FlowControls b = a;
        b.dt = a.dt * std::pow(sigma, 4);
        const auto sa = flow_step(make_flow_state(sphere(101, 1.0, 0.05), a), a);
        const auto sb = flow_step(make_flow_state(sphere(101, sigma, 0.05), b), b);
        CHECK(sb.t == doctest::Approx(sa.t * std::pow(sigma, 4)).epsilon(1e-12));
        double diff = 0.0;
        for (std::size_t i = 0; i < sa.profile.size(); ++i) {
            diff = std::max(diff, std::abs(sigma * sa.profile.r()[i] - sb.profile.r()[i]));
            diff = std::max(diff, std::abs(sigma * sa.profile.h()[i] - sb.profile.h()[i]));
        }
        CHECK(diff < 1e-10);
    }
}

TEST_CASE("neck diagnostic") {
    // exact catenary r = cosh(h)
    std::vector<double> r, h;
    for (int i = -200; i <= 200; ++i) {
        h.push_back(3.0 * i / 200);
        r.push_back(std::cosh(h.back()));
    }
    FlowState cat;
    cat.profile = nodes(r, h, {false, false});
    const auto d = neck_rescale(cat, 2.0);
    CHECK(d.r_min == 1.0);
    CHECK(d.residual < 1e-12);
    CHECK(d.is_neck);
    CHECK(d.notice.empty());
    CHECK(neck_rescale(cat, 20.0).notice == "window clipped to the curve");

    FlowState sph = make_flow_state(sphere(201), FlowControls{});
    CHECK_FALSE(sph.has_neck);
    const auto ds = neck_rescale(sph, 2.0);
    CHECK(ds.residual > 0.5);
    CHECK_FALSE(ds.is_neck);
    CHECK_THROWS_AS(neck_rescale(sph, 0.0), ParameterError);
}

TEST_CASE("redistribution") {
    const auto c = assemble_model(j_model());
    const auto even = redistribute(c, 201, 0.0);
    const auto dense = redistribute(c, 201, 1.0);
    CHECK(dense.size() == 201);
    CHECK(dense.r().front() == 0.0);
    CHECK(dense.r().back() == 0.0);
    auto near_neck = [](const ProfileCurve& p) {
        const double r0 = p.r()[neck_index(p)];
        int k = 0;
        for (std::size_t i = 0; i < p.size(); ++i) k += std::abs(p.s()[i] - p.s()[neck_index(p)]) < 2 * r0;
        return k;
    };
    CHECK(near_neck(dense) > 10 * near_neck(even));
    CHECK(discrete_energy(dense) == doctest::Approx(willmore_energy(c).total.value).epsilon(1e-2));
    CHECK_THROWS_AS(redistribute(c, 200), ParameterError);
}

TEST_CASE("step failure and outputs") {
    FlowControls ctrl;
    ctrl.max_retries = 0;
    ctrl.dt = 1e6;
    ctrl.grow = 1.0;
    CHECK_THROWS_AS(flow_step(make_flow_state(sphere(101, 1.0, 0.05), ctrl), ctrl), FlowStepFailure);

    FlowControls run;
    run.max_steps = 3;
    run.grad_tol = 0.0;
    run.checkpoint_every = 2;
    const auto tr = flow_run(sphere(101, 1.0, 0.05), run);
    CHECK(tr.termination == FlowTermination::budget);
    CHECK(tr.records.size() == 4);
    CHECK(tr.checkpoints.size() == 2);
    const std::string csv = tr.to_csv();
    CHECK(csv.rfind("step,t,W,r_min,residual\n", 0) == 0);
    const auto fin = nlohmann::json::parse(tr.final_json());
    CHECK(fin["termination"] == "budget");
    CHECK(fin["steps"] == 3);
    const auto cp = nlohmann::json::parse(checkpoint_json(tr.checkpoints.front()));
    CHECK(cp["step"] == 2);
    CHECK(cp["samples"].size() == 101);
}
