#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mclab/loci.hpp"
#include "mclab/parallel.hpp"

using namespace mclab;

TEST_CASE("classify_parameter at landmark parameters") {
    FamilySpec mb{Family::Multibrot, 2};
    CellClass origin = classify_parameter(mb, Complex(0, 0), 1000);
    CHECK(origin.tag == CellTag::Interior);
    CHECK(origin.value == 1);

    FamilySpec mc{Family::Multicorn, 2};
    CellClass root = classify_parameter(mc, Complex(-1.75, 0), 20000);
    bool boundary_adjacent = root.tag == CellTag::Unknown ||
                             (root.tag == CellTag::Interior && root.value == 3);
    CHECK(boundary_adjacent);

    FamilySpec rc{Family::RealCubic, 3};
    CellClass bi = classify_parameter(rc, Complex(0.7071067811865476, 0.0), 2000);
    CHECK(bi.tag == CellTag::Interior);
    CHECK(bi.value == 2);
}

TEST_CASE("render_locus smoke render is classified and deterministic") {
    FamilySpec mb{Family::Multibrot, 2};
    Window win(Complex(0, 0), 4.0, 4.0);
    Raster r = render_locus(mb, win, 2, 2, 100);
    CHECK(r.cells.size() == 4);
    Raster r2 = render_locus(mb, win, 2, 2, 100);
    CHECK(r.cells == r2.cells);
}

TEST_CASE("renders are independent of the thread count") {
    FamilySpec mc{Family::Multicorn, 2};
    Window win(Complex(-0.5, 0), 3.0, 3.2);
    set_thread_count(1);
    Raster a = render_locus(mc, win, 96, 96, 800);
    set_thread_count(4);
    Raster b = render_locus(mc, win, 96, 96, 800);
    set_thread_count(0);
    CHECK(a.cells == b.cells);
    CHECK(ppm_bytes(a) == ppm_bytes(b));
}

TEST_CASE("multicorn classification respects the 3-fold rotation") {
    FamilySpec mc{Family::Multicorn, 2};
    const Complex omega(-0.5, 0.8660254037844387);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.8, 1.2);
    int mismatches = 0, total = 0;
    for (int i = 0; i < 400; ++i) {
        Complex c(u(rng), u(rng));
        CellClass k0 = classify_parameter(mc, c, 1500);
        CellClass k1 = classify_parameter(mc, omega * c, 1500);
        ++total;
        bool same_kind = k0.tag == k1.tag &&
                         (k0.tag != CellTag::Interior || k0.value == k1.value);
        if (!same_kind) ++mismatches;
    }
    // rotation is not exact in binary64, so boundary samples may flip
    CHECK(mismatches <= total / 20);
}

TEST_CASE("real cubic classification is exactly symmetric in b") {
    FamilySpec rc{Family::RealCubic, 3};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(0.0, 1.3), ub(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        double a = ua(rng), b = ub(rng);
        CellClass up = classify_parameter(rc, Complex(a, b), 1200);
        CellClass dn = classify_parameter(rc, Complex(a, -b), 1200);
        CHECK(up == dn);
    }
}

TEST_CASE("escape classification is monotone in max_iter") {
    FamilySpec mb{Family::Multibrot, 2};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.2, 1.0);
    for (int i = 0; i < 200; ++i) {
        Complex c(u(rng), u(rng));
        CellClass lo = classify_parameter(mb, c, 150);
        if (lo.tag != CellTag::Exterior) continue;
        CellClass hi = classify_parameter(mb, c, 1500);
        CHECK(hi.tag == CellTag::Exterior);
        CHECK(hi.value == lo.value);
    }
}

TEST_CASE("component census counts 4-connected components") {
    Raster r(Window(Complex(0, 0), 1.0, 1.0), 5, 5);
    // two period-2 blobs touching only diagonally, plus one period-1 cell
    r.at(0, 0) = CellClass::interior(2);
    r.at(1, 0) = CellClass::interior(2);
    r.at(2, 1) = CellClass::interior(2);
    r.at(4, 4) = CellClass::interior(1);
    r.at(4, 3) = CellClass::exterior(7);
    CHECK(component_census(r, 2) == 2);
    CHECK(component_census(r, 1) == 1);
    CHECK(component_census(r, 3) == 0);
    CHECK(component_census(r, 2, 2) == 1);  // min_size drops the lone diagonal cell
}

TEST_CASE("ppm bytes are pinned") {
    Raster r(Window(Complex(0, 0), 1.0, 1.0), 2, 2);
    r.at(0, 0) = CellClass::exterior(300);  // 300 mod 256 = 44
    r.at(1, 0) = CellClass::interior(17);   // palette slot 1
    r.at(0, 1) = CellClass::unknown();
    r.at(1, 1) = CellClass::exterior(0);
    std::string bytes = ppm_bytes(r);
    const unsigned char want[] = {'P', '6', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n',
                                  0,  0,  0,  0,  0,  0,           // top row: unknown, exterior(0)
                                  44, 44, 44, 60, 120, 230};       // bottom row: exterior(44), palette[1]
    REQUIRE(bytes.size() == sizeof want);
    for (size_t i = 0; i < sizeof want; ++i) CHECK((unsigned char)bytes[i] == want[i]);
}

TEST_CASE("tricorn census at moderate resolution") {
    FamilySpec mc{Family::Multicorn, 2};
    Window win(Complex(-0.5, 0), 3.0, 3.2);
    Raster r = render_locus(mc, win, 512, 512, 5000);
    CHECK(component_census(r, 1, 4) == 1);
    CHECK(component_census(r, 2, 4) == 3);
}
