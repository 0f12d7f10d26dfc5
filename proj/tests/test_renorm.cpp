#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mclab/parallel.hpp"
#include "mclab/renorm.hpp"

using namespace mclab;

namespace {
const double kA0 = 0.7071067811865476;
RenormSeed seed() {
    static RenormSeed s = make_renorm_seed(kA0, 0.0, 1);
    return s;
}
} // namespace

TEST_CASE("anti_return formula and symmetries") {
    DynamicalMap k = anti_return(kA0, 0.0, 1);
    CHECK(std::abs(eval(k, Complex(0, kA0)) - Complex(0, kA0)) < 1e-15);

    DynamicalMap k2 = anti_return(0.9, 0.3, 1);
    CHECK(std::abs(eval(k2, Complex(0, 0)) - Complex(0.3, 0)) < 1e-15);

    // for b = 0, k commutes with the reflection s(z) = -conj(z)
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DynamicalMap kb0 = anti_return(0.83, 0.0, 2);
    for (int i = 0; i < 10; ++i) {
        Complex z(u(rng), u(rng));
        Complex lhs = eval(kb0, -std::conj(z));
        Complex rhs = -std::conj(eval(kb0, z));
        CHECK(lhs == rhs);
    }

    // k(k(z)) = g^{2n}(z) on samples
    DynamicalMap g = DynamicalMap::real_cubic(0.83, 0.21);
    DynamicalMap kk = anti_return(0.83, 0.21, 2);
    for (int i = 0; i < 10; ++i) {
        Complex z(u(rng), u(rng));
        Complex lhs = eval(kk, eval(kk, z));
        Complex w = z;
        for (int j = 0; j < 4; ++j) w = eval(g, w);
        CHECK(std::abs(lhs - w) < 1e-12 * (1 + std::abs(w)));
    }
}

TEST_CASE("seed construction validates the center condition") {
    RenormSeed s = seed();
    CHECK(s.julia_radius > 0.3);
    CHECK(s.local_radius == doctest::Approx(3 * s.julia_radius));
    CHECK_THROWS_AS((void)make_renorm_seed(0.8, 0.1, 1), Error);
}

TEST_CASE("renormalizability proxy at landmarks") {
    RenormSeed s = seed();
    RenormResult center = is_renormalizable_approx(kA0, 0.0, s, 4000);
    CHECK(center.renormalizable);
    CHECK(center.inner_period == 1);

    RenormResult far = is_renormalizable_approx(2.0, 0.0, s, 4000);
    CHECK_FALSE(far.renormalizable);
    CHECK(far.escape_index.has_value());
    CHECK(*far.escape_index <= 5);

    // renormalizable on the bitransitive side of Per_1(-1), not beyond
    CHECK(is_renormalizable_approx(0.60, 0.0, s, 4000).renormalizable);
    CHECK_FALSE(is_renormalizable_approx(0.55, 0.0, s, 4000).renormalizable);
    // the flip happens within 2e-3 of a = 1/sqrt(3)
    double lo = 0.55, hi = 0.60;
    for (int i = 0; i < 20; ++i) {
        double mid = (lo + hi) / 2;
        if (is_renormalizable_approx(mid, 0.0, s, 4000).renormalizable)
            hi = mid;
        else
            lo = mid;
    }
    CHECK(std::abs(hi - 1.0 / std::sqrt(3.0)) < 2e-3);
}

TEST_CASE("tricorn-like raster: center pixel, mirror symmetry, determinism") {
    RenormSeed s = seed();
    Window win(Complex(0.72, 0.0), 0.3, 0.3);
    set_thread_count(1);
    Raster r1 = render_tricorn_like(s, win, 64, 64, 2000);
    set_thread_count(3);
    Raster r2 = render_tricorn_like(s, win, 64, 64, 2000);
    set_thread_count(0);
    CHECK(r1.cells == r2.cells);

    // center pixel region is inner-period 1
    const CellClass& mid = r1.at(31, 31);
    CHECK(mid.tag == CellTag::Interior);
    CHECK(mid.value == 1);

    // exact b -> -b symmetry
    for (int py = 0; py < 64; ++py)
        for (int px = 0; px < 64; ++px) CHECK(r1.at(px, py) == r1.at(px, 63 - py));
}

TEST_CASE("tricorn centers by period") {
    auto p1 = tricorn_centers(1);
    REQUIRE(p1.size() == 1);
    CHECK(std::abs(p1[0]) < 1e-12);

    const Complex omega(-0.5, 0.8660254037844387);
    auto has_member = [](const std::vector<Complex>& v, Complex w) {
        for (const auto& c : v)
            if (std::abs(c - w) < 1e-9) return true;
        return false;
    };

    auto p2 = tricorn_centers(2);
    REQUIRE(p2.size() == 3);
    CHECK(has_member(p2, Complex(-1, 0)));
    CHECK(has_member(p2, omega * Complex(-1, 0)));
    CHECK(has_member(p2, omega * omega * Complex(-1, 0)));

    auto p3 = tricorn_centers(3);
    REQUIRE(p3.size() == 3);
    CHECK(has_member(p3, Complex(-1.7548776662466928, 0)));
    CHECK(has_member(p3, omega * Complex(-1.7548776662466928, 0)));
    CHECK(has_member(p3, omega * omega * Complex(-1.7548776662466928, 0)));
}

TEST_CASE("renorm_centers finds the three airplanes") {
    RenormSeed s = seed();
    auto c3 = renorm_centers(s, 3, 0.45, 0.95, -1.0, 1.0, 0.004);
    REQUIRE(c3.size() == 3);
    CHECK(c3[0].first == doctest::Approx(0.5223595469).epsilon(1e-6));
    CHECK(std::abs(c3[0].second) == doctest::Approx(0.9645914749).epsilon(1e-6));
    CHECK(std::abs(c3[1].second + c3[0].second) < 1e-9);  // conjugate pair
    CHECK(c3[2].first == doctest::Approx(0.9042779041).epsilon(1e-6));
    CHECK(std::abs(c3[2].second) < 1e-9);
}

TEST_CASE("straighten_center at landmark centers") {
    RenormSeed s = seed();
    CHECK(std::abs(straighten_center(kA0, 0.0, s)) < 1e-12);
    CHECK(std::abs(straighten_center(0.8408964152537145, 0.0, s) - Complex(-1, 0)) < 1e-9);
    CHECK_THROWS_AS((void)straighten_center(0.71, 0.003, s), Error);
}

TEST_CASE("straighten_by_multiplier: center roundtrips and path continuity") {
    RenormSeed s = seed();
    auto [c0, mu0] = straighten_by_multiplier(kA0, 0.0, s, Complex(0, 0));
    CHECK(std::abs(mu0) < 1e-10);
    CHECK(std::abs(c0) < 1e-9);

    auto [c2, mu2] = straighten_by_multiplier(0.8408964152537145, 0.0, s, Complex(-1, 0));
    CHECK(std::abs(mu2) < 1e-9);
    CHECK(std::abs(c2 - Complex(-1, 0)) < 1e-9);

    // continuity along a segment inside the period-2 bulb
    Complex prev;
    bool first = true;
    for (int i = 0; i <= 20; ++i) {
        double a = 0.8408964152537145 + 5e-4 * i;
        auto [c, mu] = straighten_by_multiplier(a, 0.0, s, Complex(-1, 0));
        if (!first) CHECK(std::abs(c - prev) < 1e-2);
        prev = c;
        first = false;
    }
}
