#include "doctest.h"

#include <cmath>
#include <numbers>

#include "willmore/errors.hpp"
#include "willmore/homotopy.hpp"

using namespace willmore;
constexpr double pi = std::numbers::pi;

namespace {

AttachmentConfig config(CatSphKind lo, CatSphKind up, double lambda = 20, double delta = 0.1) {
    AttachmentConfig c;
    c.lower = lo;
    c.upper = up;
    c.lambda = lambda;
    c.delta = delta;
    c.R_lower = c.R_upper = lambda;
    return c;
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

}  // namespace

TEST_CASE("assembled models: energy is the sum of the two halves") {
    const auto a = catsph_energy({20, 20, 0.1, CatSphKind::alpha}).parts.total.value;
    const auto b = catsph_energy({20, 20, 0.1, CatSphKind::beta}).parts.total.value;
    CHECK(model_energy(config(CatSphKind::alpha, CatSphKind::alpha)).total.value == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK(model_energy(config(CatSphKind::beta, CatSphKind::beta)).total.value == doctest::Approx(2 * b).epsilon(1e-12));
    CHECK(model_energy(config(CatSphKind::alpha, CatSphKind::beta)).total.value == doctest::Approx(a + b).epsilon(1e-12));
    const auto e = model_energy(config(CatSphKind::beta, CatSphKind::alpha));
    CHECK(e.total.value == doctest::Approx(a + b).epsilon(1e-12));
    CHECK(std::abs(e.neck.value) < 1e-10);
}

TEST_CASE("assembled models: turning numbers and double points") {
    const auto j = assemble_model(config(CatSphKind::alpha, CatSphKind::alpha));
    CHECK(std::abs(tangent_lift(j).tau) == 1.5);
    CHECK(tuple_point_multiplicity(j) == 2);
    const auto bb = assemble_model(config(CatSphKind::beta, CatSphKind::beta));
    CHECK(std::abs(tangent_lift(bb).tau) == 0.5);
    CHECK(tuple_point_multiplicity(bb) == 1);
    // the neck is mirror symmetric about its waist
    const auto mp = model_path(config(CatSphKind::beta, CatSphKind::beta));
    const auto& segs = mp.path.segments();
    const Jet lo = segs[1].eval(segs[1].a), hi = segs[4].eval(segs[4].b);
    CHECK(lo.r == doctest::Approx(hi.r));
    CHECK(lo.h == doctest::Approx(-hi.h));
}

TEST_CASE("J energies exceed 8 pi and approach it") {
    for (double l : {20.0, 50.0, 200.0}) {
        const double W = model_energy(config(CatSphKind::alpha, CatSphKind::alpha, l)).total.value;
        CHECK(W - 8 * pi > 1e-4);
    }
    const double W = model_energy(config(CatSphKind::alpha, CatSphKind::alpha, 1000, 0.01)).total.value;
    CHECK(W > 8 * pi);
    CHECK(W - 8 * pi < 0.1);
}

TEST_CASE("chain validation") {
    ChainSpec s;
    s.lambda = 2;
    s.delta = 0.1;
    s.radii = {3, 2, 3};
    s.kinds = {CatSphKind::alpha, CatSphKind::alpha, CatSphKind::beta, CatSphKind::alpha};
    CHECK_THROWS_AS(chain_path(s), ParameterError);
    s.kinds.pop_back();
    CHECK_THROWS_AS(chain_path(s), ParameterError);
}

TEST_CASE("shrinking trace") {
    const auto tr = shrinking_trace(200, 20, 0.1, 100);
    REQUIRE(tr.t.size() == 101);
    CHECK(tr.monotone);
    CHECK(tr.warnings.empty());
    CHECK(tr.lambda_t.front() == 200);
    CHECK(tr.lambda_t.back() == 20);
    for (std::size_t k = 1; k < tr.W.size(); ++k) CHECK(tr.W[k] < tr.W[k - 1]);
    CHECK(tr.W.back() < 4 * pi);
    CHECK(tr.epsilon == doctest::Approx(4 * pi - 12.5587106472043).epsilon(1e-8));
    CHECK(tr.to_csv().rfind("t,lambda_t,W\n0,200,", 0) == 0);

    const auto flat = shrinking_trace(20, 20, 0.1, 10);
    CHECK(flat.t.size() == 1);
    CHECK(flat.monotone);
    CHECK_THROWS_AS(shrinking_trace(20, 200, 0.1, 10), ParameterError);
    CHECK_THROWS_AS(shrinking_trace(20, 2, 0.6, 10), ParameterError);
}

TEST_CASE("composite energy after shrinking") {
    const auto tr = shrinking_trace(200, 20, 0.1, 20);
    const auto bb = composite_energy_after_shrink(config(CatSphKind::beta, CatSphKind::beta, 200), tr);
    CHECK(bb.below_8pi);
    CHECK(bb.total == doctest::Approx(2 * tr.W.back()));

    const auto ab = composite_energy_after_shrink(config(CatSphKind::alpha, CatSphKind::beta, 1000), tr);
    CHECK(ab.untouched_end_ok);
    CHECK(ab.below_8pi);
    // too small a lambda on the alpha end leaves the regime of the argument
    const auto bad = composite_energy_after_shrink(config(CatSphKind::alpha, CatSphKind::beta, 50), tr);
    CHECK_FALSE(bad.untouched_end_ok);
    CHECK_FALSE(bad.note.empty());
    CHECK_THROWS_AS(composite_energy_after_shrink(config(CatSphKind::alpha, CatSphKind::alpha), tr), ParameterError);
}

TEST_CASE("turning bound on a round sphere") {
    const auto rep = turning_bound_report(round_sphere(2).sample());
    CHECK(rep.tau == 0.5);
    CHECK(rep.bound == doctest::Approx(4 * pi));
    CHECK(rep.boundary_case);
    CHECK(rep.passed);
    REQUIRE(rep.segments.size() == 2);
    REQUIRE(rep.crossing_points.size() == 1);
    CHECK(rep.crossing_points[0][0] == doctest::Approx(2.0).epsilon(1e-6));
    for (const auto& s : rep.segments) {
        CHECK(s.W_quarters == doctest::Approx(2 * pi).epsilon(1e-10));
        CHECK(s.W_piece == doctest::Approx(2 * pi).epsilon(1e-8));
    }
    // reversed orientation is handled
    const auto rev = turning_bound_report(round_sphere(2).sample().reversed());
    CHECK(rev.reoriented);
    CHECK(rev.tau == 0.5);
}

TEST_CASE("turning bound on J and the triple bubble") {
    const auto j = turning_bound_report(assemble_model(config(CatSphKind::alpha, CatSphKind::alpha)));
    CHECK(j.tau == 1.5);
    CHECK(j.bound == doctest::Approx(8 * pi));
    CHECK(j.W - j.bound > j.tolerance);
    CHECK_FALSE(j.boundary_case);
    REQUIRE(j.segments.size() == 3);
    CHECK(j.segments[1].kind == "interior");
    CHECK(j.segments[1].W_piece >= 4 * pi);
    CHECK(j.passed);

    const auto tb = triple_bubble();
    const auto curve = chain_path(tb.spec).path.sample();
    CHECK(tuple_point_multiplicity(curve) == 3);
    const auto rep = turning_bound_report(curve);
    CHECK(rep.tau == 2.5);
    CHECK(rep.W > 12 * pi);
    CHECK(rep.segments.size() == 4);
    CHECK(rep.passed);
    const auto svg = turning_bound_svg(curve, rep);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}
