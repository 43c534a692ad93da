#include "doctest.h"

#include <cmath>
#include <numbers>

#include "willmore/errors.hpp"
#include "willmore/profile.hpp"

using namespace willmore;
constexpr double pi = std::numbers::pi;

namespace {

ProfilePath half_circle(double R, bool south_to_north) {
    PathSegment seg;
    seg.a = 0.0;
    seg.b = pi;
    const double sgn = south_to_north ? 1.0 : -1.0;
    seg.eval = [R, sgn](double p) {
        Jet j;
        j.r = R * std::sin(p);
        j.h = -sgn * R * std::cos(p);
        j.dr = R * std::cos(p);
        j.dh = sgn * R * std::sin(p);
        j.ddr = -R * std::sin(p);
        j.ddh = sgn * R * std::cos(p);
        return j;
    };
    return ProfilePath({seg}, {true, true});
}

ProfilePath catenary_band(double lambda) {
    const double t0 = std::acosh(lambda) / lambda;
    PathSegment seg;
    seg.a = -t0;
    seg.b = t0;
    seg.role = SegmentRole::neck;
    seg.eval = [lambda](double s) {
        Jet j;
        j.r = std::cosh(lambda * s) / lambda;
        j.h = s;
        j.dr = std::sinh(lambda * s);
        j.dh = 1.0;
        j.ddr = lambda * std::cosh(lambda * s);
        j.ddh = 0.0;
        return j;
    };
    return ProfilePath({seg}, {});
}

}  // namespace

TEST_CASE("round sphere energy") {
    const auto path = half_circle(1.0, true);
    const auto e = willmore_energy(path);
    CHECK(std::abs(e.total.value - 4 * pi) / (4 * pi) < 1e-8);
    const auto curve = path.sample();
    CHECK(std::abs(willmore_energy(curve).total.value - 4 * pi) / (4 * pi) < 1e-8);
    const auto fd = willmore_energy(curve.without_derivatives());
    CHECK(std::abs(fd.total.value - 4 * pi) < 1e-6);
}

TEST_CASE("catenary band is minimal") {
    const auto e = willmore_energy(catenary_band(2.0));
    CHECK(std::abs(e.total.value) < 1e-8);
    CHECK(std::abs(e.neck.value) < 1e-8);
}

TEST_CASE("turning number of half circles") {
    CHECK(tangent_lift(half_circle(1.0, true).sample()).tau == doctest::Approx(0.5));
    CHECK(tangent_lift(half_circle(1.0, false).sample()).tau == doctest::Approx(-0.5));
    const auto c = half_circle(2.0, true).sample();
    CHECK(tangent_lift(c.reversed()).tau == doctest::Approx(-0.5));
}

TEST_CASE("scale invariance") {
    const auto c = half_circle(1.0, true).sample();
    CHECK(willmore_energy(c.scaled(3.7)).total.value == doctest::Approx(4 * pi).epsilon(1e-10));
}

TEST_CASE("embedded half circle has multiplicity one") {
    const auto c = half_circle(1.0, true).sample();
    CHECK(tuple_point_multiplicity(c) == 1);
    const auto rep = liyau_check(c);
    CHECK(rep.satisfied);
}

TEST_CASE("regularity errors") {
    CHECK_THROWS_AS(ProfileCurve({0, 1, 2, 3, 4}, {0, 1, 1, 2, 0}, {0, 0, 0, 1, 1}), RegularityError);
    CHECK_THROWS_AS(ProfileCurve({0, 1, 2, 3, 4}, {1, 0, 1, 2, 3}, {0, 0, 1, 1, 1}, {false, false}), RegularityError);
}
