#include <doctest.h>

#include <cmath>
#include <limits>

#include "rz/interval.hpp"
#include "support.hpp"

using namespace rz;
using rz::testing::pi;
using rz::testing::uniform;

namespace {

constexpr double ulp1 = std::numeric_limits<double>::epsilon();

// True when lo <= p + e exactly, where p + e is an unevaluated sum with |e|
// below half an ulp of p.
bool le_exact(double lo, double p, double e) { return lo < p || (lo == p && e >= 0); }
bool ge_exact(double hi, double p, double e) { return hi > p || (hi == p && e <= 0); }

double pick(const Interval& x) { return x.is_point() ? x.lo() : uniform(x.lo(), x.hi()); }

Interval random_interval() {
    const double a = uniform(-10, 10);
    const double b = uniform(-10, 10);
    return Interval::hull(a, b);
}

}  // namespace

TEST_CASE("constructor rejects reversed and non-finite endpoints") {
    CHECK_THROWS_AS(Interval(1.0, 0.0), Error);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), Error);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), Error);
}

TEST_CASE("exact operations are not widened") {
    const Interval a(1.0, 2.0);
    const Interval b(0.5, 0.25 + 0.5);
    CHECK(a + b == Interval(1.5, 2.75));
    CHECK(a - b == Interval(0.25, 1.5));
    CHECK(a * b == Interval(0.5, 1.5));
    CHECK(Interval(3.0) * Interval(-2.0) == Interval(-6.0));
}

TEST_CASE("inexact operations round outward") {
    const Interval third = Interval(1.0) * Interval(1.0 / 3.0);
    CHECK(third.is_point());
    const Interval x = Interval(0.1) + Interval(0.2);
    CHECK(x.lo() < x.hi());
    CHECK(x.width() <= 2 * ulp1);
    const Interval p = Interval(0.1) * Interval(3.0);
    CHECK(p.lo() < p.hi());
}

TEST_CASE("arithmetic contains every exact point result") {
    for (int trial = 0; trial < 20000; ++trial) {
        const Interval a = random_interval();
        const Interval b = random_interval();
        const double x = pick(a);
        const double y = pick(b);

        const double s = x + y;
        const double bb = s - x;
        const double se = (x - (s - bb)) + (y - bb);
        const Interval sum = a + b;
        REQUIRE(le_exact(sum.lo(), s, se));
        REQUIRE(ge_exact(sum.hi(), s, se));

        const double p = x * y;
        const double pe = std::fma(x, y, -p);
        const Interval prod = a * b;
        REQUIRE(le_exact(prod.lo(), p, pe));
        REQUIRE(ge_exact(prod.hi(), p, pe));
    }
}

TEST_CASE("sqr uses the magnitude range") {
    CHECK(sqr(Interval(-2.0, 1.0)) == Interval(0.0, 4.0));
    CHECK(sqr(Interval(-3.0, -2.0)) == Interval(4.0, 9.0));
}

TEST_CASE("range_cos on a monotone quarter period") {
    const Interval r = range_cos(Interval(0.0, pi / 2));
    // The double nearest pi/2 lies below pi/2, so the exact minimum is the
    // tiny positive cos(pi/2).
    CHECK(r.hi() == 1.0);
    CHECK(r.lo() <= std::cos(pi / 2));
    CHECK(r.lo() >= std::cos(pi / 2) - 1e-32);
}

TEST_CASE("range_cos over a full period saturates") {
    CHECK(range_cos(Interval(0.0, 2 * pi)) == Interval(-1.0, 1.0));
    CHECK(range_cos(Interval(-100.0, 100.0)) == Interval(-1.0, 1.0));
}

TEST_CASE("range_cos at pi/3 is within two ulp of one half") {
    const Interval r = range_cos(Interval(pi / 3));
    CHECK(r.contains(0.5));
    CHECK(r.width() <= 2 * (ulp1 / 2));
}

TEST_CASE("range_sin picks up interior extrema") {
    const Interval r = range_sin(Interval(1.0, 2.0));
    CHECK(r.hi() == 1.0);
    CHECK(r.lo() <= std::sin(1.0));
    const Interval s = range_sin(Interval(4.0, 5.0));
    CHECK(s.lo() == -1.0);
    const Interval c = range_cos(Interval(3.0, 3.5));
    CHECK(c.lo() == -1.0);
    CHECK(c.hi() >= std::cos(3.0));
}

TEST_CASE("trig ranges contain sampled values") {
    for (int trial = 0; trial < 20000; ++trial) {
        const double centre = uniform(-40, 40);
        const double half = std::pow(10.0, uniform(-12, 1));
        const Interval x(centre - half, centre + half);
        const Interval rc = range_cos(x);
        const Interval rs = range_sin(x);
        REQUIRE(rc.lo() >= -1.0);
        REQUIRE(rc.hi() <= 1.0);
        for (int k = 0; k < 8; ++k) {
            const long double t = pick(x);
            REQUIRE(rc.contains(static_cast<double>(std::cos(t))));
            REQUIRE(rs.contains(static_cast<double>(std::sin(t))));
        }
    }
}

TEST_CASE("trig ranges are tight on narrow inputs") {
    for (int trial = 0; trial < 1000; ++trial) {
        const double t = uniform(-10, 10);
        const Interval x(t, t + 1e-9);
        CHECK(range_cos(x).width() <= 1e-9 + 8 * ulp1);
        CHECK(range_sin(x).width() <= 1e-9 + 8 * ulp1);
    }
}

TEST_CASE("Eigen vectors of intervals") {
    const IVec2 v = difference(Eigen::Vector2d(1.0, 0.3), Eigen::Vector2d(0.1, 0.1));
    CHECK(v.x().contains(0.9));
    const Interval d = dot(v, Eigen::Vector2d(2.0, 0.0));
    CHECK(d.contains(1.8));
    CHECK(norm_up(to_interval(Eigen::Vector2d(3.0, 4.0))) >= 5.0);
}
