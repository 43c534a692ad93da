#include "doctest.h"

#include <cmath>
#include <numbers>

#include "willmore/errors.hpp"
#include "willmore/gluing.hpp"

using namespace willmore;
constexpr double pi = std::numbers::pi;

namespace {

double cap(double R, double rho) { return 2 * pi * (1 + std::sqrt(1 - rho * rho / (R * R))); }

// Lower hemisphere of radius R as a graph: h(t) = -sqrt(R^2 - t^2).
RadialJet sphere_graph(double R, double t) {
    const double s = std::sqrt(R * R - t * t);
    return {-s, t / s, R * R / (s * s * s)};
}

RadialJet catenary_graph(double lam, double t) {
    const double q = lam * lam * t * t - 1.0;
    return {(std::acosh(lam * t) - std::acosh(lam)) / lam, 1.0 / std::sqrt(q), -lam * lam * t / (q * std::sqrt(q))};
}

}  // namespace

TEST_CASE("gluing function defining properties") {
    const auto phi = make_gluing_function(0.1);
    CHECK(phi(0.9) == 0.0);
    CHECK(phi(1.1) == 1.0);
    CHECK(phi(0.5) == 0.0);
    CHECK(phi(1.7) == 1.0);
    CHECK(phi(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = 0.0;
    for (int k = 0; k <= 10000; ++k) {
        const double x = 0.9 + 0.2 * k / 10000;
        const double v = phi(x);
        CHECK_MESSAGE(v >= prev - 1e-15, "x=" << x);
        CHECK(std::abs(v) <= 1.0);
        CHECK(std::abs(phi.d1(x)) <= phi.M() / 0.1 * (1 + 1e-12));
        CHECK(std::abs(phi.d2(x)) <= phi.M() / 0.01 * (1 + 1e-12));
        prev = v;
    }
    CHECK_THROWS_AS(make_gluing_function(0.0), ParameterError);
    CHECK_THROWS_AS(make_gluing_function(1.0), ParameterError);
}

TEST_CASE("realized gluing constant") {
    // sup over a 1e5-point grid of max(delta |phi'|, delta^2 |phi''|); the
    // second derivative dominates, attained near y = +-0.76.
    CHECK(make_gluing_function(0.1).M() == doctest::Approx(1.7982902524811228).epsilon(1e-10));
    CHECK(bump_integral() == doctest::Approx(0.44399381616807865).epsilon(1e-13));
}

TEST_CASE("chebyshev cache reproduces the antiderivative") {
    QuadratureSettings q;
    q.abs_tol = 1e-16;
    q.rel_tol = 1e-15;
    for (double y : {-0.97, -0.5, -0.123, 0.3, 0.77, 0.999}) {
        const double direct = adaptive_simpson([](double t) { return std::abs(t) < 1 ? std::exp(1 / (t * t - 1)) : 0.0; }, -1.0, y, q).value;
        CHECK(gluing_step(y) == doctest::Approx(direct / bump_integral()).epsilon(1e-13));
    }
    // derivative consistency
    for (double y : {-0.8, -0.2, 0.4, 0.9}) {
        const double h = 1e-4;
        const double fd = (gluing_step(y + h) - gluing_step(y - h)) / (2 * h);
        CHECK(fd == doctest::Approx(gluing_step_d1(y)).epsilon(1e-7));
    }
}

TEST_CASE("polar and cartesian jets round-trip") {
    const CartesianJet c{0.3, -0.2, 0.7, 1.1, -0.4, 0.25};
    const double r = 0.93, a = 2.1;
    const CartesianJet back = to_cartesian(to_polar(c, r, a), r, a);
    CHECK(back.ux == doctest::Approx(c.ux));
    CHECK(back.uy == doctest::Approx(c.uy));
    CHECK(back.uxx == doctest::Approx(c.uxx));
    CHECK(back.uxy == doctest::Approx(c.uxy));
    CHECK(back.uyy == doctest::Approx(c.uyy));
}

TEST_CASE("delta_glue locality and reductions") {
    PolarGrid g{0.8, 1.2, 128, 32};
    const auto phi = make_gluing_function(0.1);
    const auto u1 = AnnulusGraph::from_cartesian(g, [](double x, double y) {
        return CartesianJet{0.1 * x * y, 0.1 * y, 0.1 * x, 0, 0.1, 0};
    });
    const auto u2 = AnnulusGraph::from_cartesian(g, [](double x, double) {
        return CartesianJet{0.2 * x * x, 0.4 * x, 0, 0.4, 0, 0};
    });
    const auto glued = delta_glue(u1, u2, phi);
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_phi; ++j) {
            const double r = g.radius(i);
            if (r <= 0.9) CHECK(glued.value(i, j) == u1.value(i, j));
            if (r >= 1.1) CHECK(glued.value(i, j) == u2.value(i, j));
        }
    const auto self = delta_glue(u1, u1, phi);
    for (std::size_t k = 0; k < self.values().size(); ++k) CHECK(self.values()[k] == u1.values()[k]);
    const auto swapped = delta_glue(u2, u1, phi.complement());
    for (std::size_t k = 0; k < swapped.values().size(); ++k)
        CHECK(swapped.values()[k] == doctest::Approx(glued.values()[k]).epsilon(1e-14));

    const auto zero = AnnulusGraph::from_values(g, [](double, double) { return 0.0; });
    const auto c = AnnulusGraph::from_values(g, [](double, double) { return 0.7; });
    const auto step = delta_glue(zero, c, phi);
    for (int i = 0; i <= g.n_r; ++i) CHECK(step.value(i, 3) == doctest::Approx(0.7 * phi(g.radius(i))));

    AnnulusGraph other({0.8, 1.2, 64, 32}, std::vector<double>(65 * 32, 0.0));
    CHECK_THROWS_AS(delta_glue(u1, other, phi), ParameterError);
}

TEST_CASE("product-rule derivatives match finite differences of the glued values") {
    PolarGrid g{0.85, 1.15, 600, 128};
    const auto phi = make_gluing_function(0.1);
    const auto u1 = AnnulusGraph::from_cartesian(g, [](double x, double y) {
        return CartesianJet{0.1 * x * y, 0.1 * y, 0.1 * x, 0, 0.1, 0};
    });
    const auto u2 = AnnulusGraph::from_cartesian(g, [](double x, double y) {
        return CartesianJet{0.2 * x * x + 0.05 * y, 0.4 * x, 0.05, 0.4, 0, 0};
    });
    const auto exact = delta_glue(u1, u2, phi);
    const auto fd = exact.values_only().all_jets();
    const auto ex = exact.all_jets();
    double worst = 0;
    for (int i = 2; i <= g.n_r - 2; ++i)
        for (int j = 0; j < g.n_phi; j += 7) {
            const auto& e = ex[exact.index(i, j)];
            const auto& d = fd[exact.index(i, j)];
            worst = std::max({worst, std::abs(e.ur - d.ur), std::abs(e.urr - d.urr) / 100, std::abs(e.up - d.up),
                              std::abs(e.urp - d.urp), std::abs(e.upp - d.upp)});
        }
    CHECK(worst < 1e-4);
}

TEST_CASE("graph energies") {
    PolarGrid g{0.9, 1.1, 512, 128};
    const auto flat = AnnulusGraph::from_values(g, [](double, double) { return 3.0; });
    CHECK(willmore_energy_graph(flat).value == doctest::Approx(0.0));

    PolarGrid gc{0.3, 1.1, 512, 64};
    const auto cat = AnnulusGraph::from_radial(gc, [](double t) { return catenary_graph(4.0, t); });
    CHECK(std::abs(willmore_energy_graph(cat).value) < 1e-9);

    // Spherical band of radius 6 between the circles 0.9 and 1.1.
    const auto sph = AnnulusGraph::from_radial(g, [](double t) { return sphere_graph(6.0, t); });
    const double expected = cap(6, 0.9) - cap(6, 1.1);
    CHECK(willmore_energy_graph(sph).value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(willmore_energy_radial([](double t) { return sphere_graph(6.0, t); }, 0.9, 1.1).value ==
          doctest::Approx(expected).epsilon(1e-10));
    // finite-difference route on the same grid
    CHECK(willmore_energy_graph(sph.values_only()).value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("c2 proximity of the glued graph") {
    PolarGrid g{0.85, 1.15, 256, 64};
    const double delta = 0.1;
    const auto phi = make_gluing_function(delta);
    const auto corpus = random_gluing_corpus(g, 6, 11);
    for (const auto& p : corpus) {
        const double dist = difference(p.u1, p.u2).c2_norm();
        const auto glued = delta_glue(p.u1, p.u2, phi);
        const auto d = difference(glued, p.u1);
        // every derivative of the difference, each one bounded separately
        const auto jets = d.all_jets();
        double worst = 0;
        for (int i = 0; i <= g.n_r; ++i)
            for (int j = 0; j < g.n_phi; ++j) {
                const auto c = to_cartesian(jets[d.index(i, j)], g.radius(i), g.angle(j));
                worst = std::max({worst, std::abs(c.u), std::abs(c.ux), std::abs(c.uy), std::abs(c.uxx),
                                  std::abs(c.uxy), std::abs(c.uyy)});
            }
        CHECK(worst <= 2 * phi.M() / (delta * delta) * dist);
    }
}

TEST_CASE("taylor bound for graphs over a disk") {
    // u(0) = 0, grad u(0) = 0
    const std::function<CartesianJet(double, double)> fields[] = {
        [](double x, double y) { return CartesianJet{x * y, y, x, 0, 1, 0}; },
        [](double x, double y) { return CartesianJet{x * x - 0.5 * y * y, 2 * x, -y, 2, 0, -1}; },
        [](double x, double y) {
            return CartesianJet{std::cos(x + y) - 1 + x + y - x + 0 * y - y, -std::sin(x + y), -std::sin(x + y),
                                -std::cos(x + y), -std::cos(x + y), -std::cos(x + y)};
        },
    };
    for (const auto& f : fields)
        for (double r : {0.5, 1.0, 1.5}) {
            const DiskNorms n = disk_norms(f, r, 200);
            CHECK(n.c2 <= (r * r / 2 + r + 1) * n.second * (1 + 1e-12));
            CHECK(n.c2 <= 4 * n.second);
        }
}

TEST_CASE("gluing bound on a small corpus") {
    PolarGrid g{0.85, 1.15, 128, 32};
    const auto phi = make_gluing_function(0.1);
    const auto fit = random_gluing_corpus(g, 6, 1);
    const auto hold = random_gluing_corpus(g, 6, 2);
    std::vector<GluingPair> extra;
    extra.push_back({"identical", fit[0].u1, fit[0].u1});
    const auto rep = verify_gluing_bound(fit, hold, extra, slope_corpus(g, {1e-1, 1e-2, 1e-3, 1e-4}), phi);
    CHECK(rep.fitted_C > 0);
    CHECK(rep.rows.back().excess == 0.0);
    CHECK(rep.slope == doctest::Approx(1.0).epsilon(0.15));
}
