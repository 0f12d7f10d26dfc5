#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mclab/core_maps.hpp"

using namespace mclab;

namespace {
const double kA0 = 0.7071067811865476;  // 1/sqrt(2)

Complex fd_return_multiplier(const DynamicalMap& map, int period, Complex z, double h = 1e-6) {
    auto ret = [&](Complex w) {
        for (int i = 0; i < period; ++i) {
            w = eval(map, w);
            if (map.anti()) w = eval(map, w);
        }
        return w;
    };
    return (ret(z + h) - ret(z - h)) / (2 * h);
}
} // namespace

TEST_CASE("eval matches the defining formulas") {
    auto g0 = DynamicalMap::real_cubic(kA0, 0.0);
    Complex got = eval(g0, Complex(0, kA0));
    CHECK(std::abs(got - Complex(0, -kA0)) < 1e-15);

    auto cube = DynamicalMap::real_cubic(0.0, 0.0);
    CHECK(eval(cube, Complex(1, 0)) == Complex(-1, 0));

    auto tric = DynamicalMap::unicritical_anti(2, Complex(0, 0));
    CHECK(std::abs(eval(tric, Complex(0, 1)) - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("derivative of the holomorphic variants") {
    auto g0 = DynamicalMap::real_cubic(kA0, 0.0);
    CHECK(derivative(g0, Complex(0, 0)).real() == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(derivative(g0, Complex(0, 0)).imag() == 0.0);

    auto p = DynamicalMap::unicritical_holo(2, Complex(0.37, -0.2));
    CHECK(derivative(p, Complex(0, 0)) == Complex(0, 0));

    auto g = DynamicalMap::real_cubic(0.83, 0.21);
    CHECK(std::abs(derivative(g, Complex(0, 0.83))) < 1e-15);

    auto anti = DynamicalMap::unicritical_anti(2, Complex(0.1, 0.1));
    CHECK_THROWS_AS((void)derivative(anti, Complex(0, 0)), Error);
}

TEST_CASE("second iterate derivative via conjugated chain rule") {
    auto tric = DynamicalMap::unicritical_anti(2, Complex(0, 0));
    CHECK(second_iterate_derivative(tric, Complex(0, 0)) == Complex(0, 0));

    auto k = DynamicalMap::anti_cubic_return(kA0, 0.0, 1);
    CHECK(std::abs(second_iterate_derivative(k, Complex(0, kA0))) < 1e-14);

    auto basil = DynamicalMap::unicritical_anti(2, Complex(-0.75, 0));
    CHECK(std::abs(second_iterate_derivative(basil, Complex(-0.5, 0)) - Complex(1, 0)) < 1e-14);

    // cross-check against a finite difference of f∘f at generic points
    auto f = DynamicalMap::unicritical_anti(3, Complex(0.21, -0.34));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int i = 0; i < 10; ++i) {
        Complex z(u(rng), u(rng));
        Complex an = second_iterate_derivative(f, z);
        Complex fd = fd_return_multiplier(f, 1, z);
        CHECK(std::abs(an - fd) < 1e-5 * (1 + std::abs(an)));
    }
}

TEST_CASE("iterate_orbit escape bookkeeping") {
    auto p0 = DynamicalMap::unicritical_holo(2, Complex(0, 0));
    Orbit o = iterate_orbit(p0, Complex(0, 0), 50);
    CHECK_FALSE(o.escaped);
    CHECK(o.points.size() == 51);

    auto p1 = DynamicalMap::unicritical_holo(2, Complex(1, 0));
    Orbit e = iterate_orbit(p1, Complex(0, 0), 50, 2.0);
    REQUIRE(e.escaped);
    REQUIRE(e.escape_index.has_value());
    int idx = *e.escape_index;
    CHECK(std::abs(e.points[size_t(idx)]) > 2.0);
    for (int i = 0; i < idx; ++i) CHECK(std::abs(e.points[size_t(i)]) <= 2.0);

    auto g = DynamicalMap::real_cubic(2.0, 0.0);
    Orbit c = iterate_orbit(g, Complex(0, 2), 10, 10.0);
    CHECK(c.escaped);
    CHECK(*c.escape_index <= 5);
}

TEST_CASE("find_cycle on landmark cycles") {
    auto p0 = DynamicalMap::unicritical_holo(2, Complex(0, 0));
    Cycle fixed = find_cycle(p0, 1, Complex(0.1, 0));
    CHECK(std::abs(fixed.points[0]) < 1e-12);
    CHECK(std::abs(fixed.multiplier) < 1e-10);
    CHECK(fixed.stability == Stability::Superattracting);

    auto pq = DynamicalMap::unicritical_holo(2, Complex(0.25, 0));
    Cycle par = find_cycle(pq, 1, Complex(0.4, 0));
    CHECK(std::abs(par.points[0] - Complex(0.5, 0)) < 1e-9);
    CHECK(std::abs(par.multiplier - Complex(1, 0)) < 1e-9);
    CHECK(par.stability == Stability::Indifferent);

    auto g0 = DynamicalMap::real_cubic(kA0, 0.0);
    Cycle bi = find_cycle(g0, 2, Complex(0, 0.7));
    CHECK(std::abs(bi.points[0] - Complex(0, kA0)) < 1e-10);
    CHECK(std::abs(bi.points[1] - Complex(0, -kA0)) < 1e-10);
    CHECK(std::abs(bi.multiplier) < 1e-10);
    CHECK(bi.stability == Stability::Superattracting);
}

TEST_CASE("find_cycle multiplier agrees with finite differences") {
    auto g = DynamicalMap::real_cubic(0.62, 0.11);
    Cycle c = find_cycle(g, 1, Complex(0.2, 0.4));
    Complex fd = fd_return_multiplier(g, 1, c.points[0]);
    CHECK(std::abs(c.multiplier - fd) < 1e-5 * (1 + std::abs(c.multiplier)));

    auto f = DynamicalMap::unicritical_anti(2, Complex(-1.0, 0));
    Cycle b = find_cycle(f, 1, Complex(-0.05, 0.05));
    Complex fdb = fd_return_multiplier(f, 1, b.points[0]);
    CHECK(std::abs(b.multiplier - fdb) < 1e-5 * (1 + std::abs(b.multiplier)));
}

TEST_CASE("find_attracting_cycle finds basilica, tricorn center, escape") {
    auto basil = DynamicalMap::unicritical_holo(2, Complex(-1, 0));
    auto c = find_attracting_cycle(basil, 2000);
    REQUIRE(c.has_value());
    CHECK(c->period == 2);
    CHECK(c->stability == Stability::Superattracting);

    auto tric = DynamicalMap::unicritical_anti(2, Complex(0, 0));
    auto t = find_attracting_cycle(tric, 2000);
    REQUIRE(t.has_value());
    CHECK(t->period == 1);
    CHECK(std::abs(t->points[0]) < 1e-9);

    auto esc = DynamicalMap::unicritical_holo(2, Complex(0.3, 0));
    CHECK_FALSE(find_attracting_cycle(esc, 2000).has_value());
}

TEST_CASE("real cubic commutes with conjugation and has the sign symmetry") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        double a = std::abs(u(rng));
        double b = u(rng);
        Complex z(u(rng), u(rng));
        auto g = DynamicalMap::real_cubic(a, b);
        auto gm = DynamicalMap::real_cubic(a, -b);
        CHECK(eval(g, std::conj(z)) == std::conj(eval(g, z)));
        CHECK(eval(g, -z) == -eval(gm, z));
    }
}

TEST_CASE("interval dynamics at the bitransitive center") {
    auto g = DynamicalMap::real_cubic(kA0, 0.0);
    CHECK(std::abs(derivative(g, Complex(0, 0)) - Complex(-1.5, 0)) < 1e-12);
    for (int j = 1; j <= 100; ++j) {
        double y = kA0 * j / 101.0;
        Complex z(0, y);
        bool converged = false;
        for (int it = 0; it < 10000; ++it) {
            z = eval(g, eval(g, z));
            if (std::abs(z - Complex(0, kA0)) < 1e-6) {
                converged = true;
                break;
            }
        }
        CHECK(converged);
    }
}
