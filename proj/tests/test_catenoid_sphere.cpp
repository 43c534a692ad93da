#include "doctest.h"

#include <cmath>
#include <numbers>

#include "willmore/catenoid_sphere.hpp"
#include "willmore/errors.hpp"

using namespace willmore;
constexpr double pi = std::numbers::pi;

namespace {

// Independent evaluation: 50-digit tanh-sinh quadrature of the band
// integrand plus the closed-form cap.
struct Golden {
    double lambda, delta;
    CatSphKind kind;
    double glue, total;
};
const Golden golden[] = {
    {6, 0.1, CatSphKind::beta, 0.020838678846411, 12.4807143719662},
    {6, 0.1, CatSphKind::alpha, 4.13086909888305, 16.5907447920029},
    {20, 0.1, CatSphKind::beta, 0.00185054839703607, 12.5587106472043},
    {20, 0.1, CatSphKind::alpha, 0.378793887041402, 12.9356539858486},
    {10, 0.1, CatSphKind::beta, 0.00743135983068005, 12.5356730119398},
};

}  // namespace

TEST_CASE("parameter domain") {
    CHECK_NOTHROW(CatSphParams{6, 6, 0.1, CatSphKind::beta}.validate());
    CHECK_THROWS_WITH_AS(CatSphParams({6, 6, 1.0 - 1.0 / 6, CatSphKind::beta}).validate(),
                         "delta must be < 1 - 1/lambda", ParameterError);
    CHECK_THROWS_WITH_AS(CatSphParams({6, 1.05, 0.1, CatSphKind::beta}).validate(), "delta must be < R - 1",
                         ParameterError);
    CHECK_THROWS_AS(CatSphParams({1.0, 6, 0.1, CatSphKind::beta}).validate(), ParameterError);
    CHECK_THROWS_AS(CatSphParams({6, 6, 0.0, CatSphKind::beta}).validate(), ParameterError);
    CHECK_NOTHROW(CatSphParams({6, 6, 0.0, CatSphKind::beta}).validate(true));
    const CatSphParams p{6, 4, 0.1, CatSphKind::alpha};
    CHECK(p.t0() == doctest::Approx(std::acosh(6.0) / 6));
    CHECK(p.theta() == doctest::Approx(std::asin(0.25)));
    CHECK(parse_catsph_kind("alpha") == CatSphKind::alpha);
    CHECK_THROWS_AS(parse_catsph_kind("gamma"), ParameterError);
}

TEST_CASE("derivative table values at the junction") {
    const DerivativeTable tab(6);
    CHECK(tab.u(0, 1.0) == 0.0);
    CHECK(std::abs(tab.v(0, 1.0)) < 1e-15);
    CHECK(tab.u(1, 1.0) == doctest::Approx(1 / std::sqrt(35.0)).epsilon(1e-14));
    CHECK(tab.v(1, 1.0) == doctest::Approx(0.169030850945703).epsilon(1e-14));
    CHECK_THROWS_AS(tab.u(0, 1.0 / 6), ParameterError);
    CHECK_THROWS_AS(tab.v(0, 6.0), ParameterError);
    CHECK_THROWS_AS(tab.u(4, 1.0), ParameterError);
}

TEST_CASE("derivative table against finite differences") {
    const auto rep = check_derivative_table({2, 6, 50});
    CHECK(rep.rows.size() == 48);
    CHECK(rep.worst < 1e-6);
    CHECK(rep.band_dh1_max < 0.0);
    CHECK(rep.passed);
}

TEST_CASE("profile shape") {
    const auto phi = make_gluing_function(0.1);
    const auto beta = catsph_path({6, 6, 0.1, CatSphKind::beta}, phi);
    const auto alpha = catsph_path({6, 6, 0.1, CatSphKind::alpha}, phi);
    const auto& gb = beta.segments()[1];
    const auto& ga = alpha.segments()[1];
    CHECK(gb.eval(1.0).h == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ga.eval(1.0).h == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ga.eval(1.1).h < gb.eval(1.1).h);
    // beta is C^1 across the junction; alpha slopes have opposite signs on the sphere side
    CHECK(gb.eval(1.0).dh == doctest::Approx(1 / std::sqrt(35.0)).epsilon(1e-12));
    CHECK(ga.eval(1.1).dh < 0.0);
    const auto curve = build_catsph({6, 6, 0.1, CatSphKind::beta}, phi);
    CHECK(curve.r().front() == doctest::Approx(1.0 / 6));
    CHECK(curve.r().back() == 0.0);
    CHECK(curve.contact().end);
    CHECK_THROWS_AS(catsph_path({6, 6, 0.1, CatSphKind::beta}, make_gluing_function(0.05)), ParameterError);
}

TEST_CASE("energies against independent quadrature") {
    for (const auto& g : golden) {
        CAPTURE(g.lambda);
        CAPTURE(to_string(g.kind));
        const auto e = catsph_energy({g.lambda, g.lambda, g.delta, g.kind});
        CHECK(e.parts.glue.value == doctest::Approx(g.glue).epsilon(1e-9));
        CHECK(e.parts.total.value == doctest::Approx(g.total).epsilon(1e-10));
        CHECK(std::abs(e.parts.neck.value) < 1e-10);
        CHECK(e.parts.cap.value == doctest::Approx(e.cap_closed_form).epsilon(1e-10));
        const double sum = e.parts.cap.value + e.parts.glue.value + e.parts.neck.value + e.parts.other.value;
        CHECK(sum == doctest::Approx(e.parts.total.value).epsilon(1e-13));
        CHECK(glue_energy(g.lambda, g.lambda, g.delta, g.kind).value == doctest::Approx(g.glue).epsilon(1e-9));
    }
    CHECK(cap_energy_closed_form(6, 1.1) == doctest::Approx(2 * pi * (1 + std::sqrt(1 - 1.21 / 36))).epsilon(1e-14));
    const auto z = catsph_energy({10, 10, 0.0, CatSphKind::beta});
    CHECK(z.closed_form_only);
    CHECK(z.parts.total.value == 2 * pi * (1 + std::sqrt(0.99)));
    CHECK(z.parts.total.value == doctest::Approx(12.5349).epsilon(1e-5));
}

TEST_CASE("cap energy lambda derivative") {
    for (double l : {6.0, 20.0, 200.0}) {
        const double h = 1e-4 * l;
        const double fd = (cap_energy_closed_form(l + h, 1.1) - cap_energy_closed_form(l - h, 1.1)) / (2 * h);
        CHECK(cap_energy_lambda_derivative(l, 0.1) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("sweep csv") {
    const auto rows = catsph_sweep(CatSphKind::beta, {20, 30}, {0.1});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].W_total > rows[0].W_total);
    const auto csv = sweep_csv(rows);
    CHECK(csv.rfind("lambda,R,delta,kind,W_cap,W_glue,W_neck,W_total,err,status\n", 0) == 0);
    CHECK(sweep_csv({}) == "lambda,R,delta,kind,W_cap,W_glue,W_neck,W_total,err,status\n");
    const auto bad = catsph_sweep(CatSphKind::beta, {2}, {0.9});
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].status.rfind("error:", 0) == 0);
}

TEST_CASE("energy monotone in lambda and limits") {
    const auto rep = verify_lemma_2_4(Lemma24Settings::defaults());
    REQUIRE(rep.monotone.size() == 1);
    CHECK(rep.monotone[0].all_positive);
    CHECK(rep.monotone[0].onset_lambda == 20.0);
    CHECK(rep.limit_monotone);
    CHECK(rep.limit_gaps.back() < 1e-3);
    CHECK(rep.closed_form_below_4pi);
    CHECK(rep.beta_gap.back() < 0.01);
    CHECK(rep.alpha_above);
    CHECK(rep.alpha_gap_decreasing);
    CHECK(rep.passed);
}

TEST_CASE("band energy scalings") {
    const auto rep = verify_lemma_A3({});
    CHECK(rep.cells.size() == 12);
    CHECK(rep.alpha_ok);
    CHECK(rep.beta_ok);
    CHECK(rep.dbeta_ok);
    CHECK(rep.beta_max / rep.beta_min < 2.0);
    CHECK(rep.dbeta_max < 0.0);
}

TEST_CASE("2D gluing reproduces the band energy") {
    // Sphere and catenary graphs glued on the full annulus by the operator,
    // then integrated in 2D.
    const double l = 6, d = 0.1;
    PolarGrid grid;
    grid.r_in = 1 - d;
    grid.r_out = 1 + d;
    grid.n_r = 400;
    grid.n_phi = 8;
    const DerivativeTable tab(l);
    const auto u1 = AnnulusGraph::from_radial(grid, [&](double t) {
        return RadialJet{tab.u(0, t), tab.u(1, t), tab.u(2, t)};
    });
    const auto u2 = AnnulusGraph::from_radial(grid, [&](double t) {
        return RadialJet{tab.v(0, t), tab.v(1, t), tab.v(2, t)};
    });
    const auto glued = delta_glue(u1, u2, make_gluing_function(d));
    CHECK(willmore_energy_graph(glued).value == doctest::Approx(glue_energy(l, l, d, CatSphKind::beta).value).epsilon(1e-6));
}
