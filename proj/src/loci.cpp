#include "mclab/loci.hpp"

#include <cmath>

#include "mclab/parallel.hpp"

namespace mclab {

Family family_from_name(const std::string& name) {
    if (name == "multibrot") return Family::Multibrot;
    if (name == "multicorn") return Family::Multicorn;
    if (name == "real-cubic" || name == "real_cubic") return Family::RealCubic;
    fail(Status::InvalidArgument, "unknown family: " + name);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Multibrot: return "multibrot";
        case Family::Multicorn: return "multicorn";
        case Family::RealCubic: return "real-cubic";
    }
    return "?";
}

DynamicalMap FamilySpec::map_at(Complex param) const {
    switch (family) {
        case Family::Multibrot: return DynamicalMap::unicritical_holo(degree, param);
        case Family::Multicorn: return DynamicalMap::unicritical_anti(degree, param);
        case Family::RealCubic: return DynamicalMap::real_cubic(param.real(), param.imag());
    }
    fail(Status::InvalidArgument, "bad family");
}

CellClass classify_parameter(const FamilySpec& fam, Complex param, int max_iter) {
    if (max_iter < 1) fail(Status::InvalidArgument, "max_iter must be >= 1");
    if (fam.family == Family::RealCubic && param.real() < 0) return CellClass::unknown();
    DynamicalMap map = fam.map_at(param);

    // For the real cubic both critical orbits ±ia must stay bounded; they
    // are complex conjugates of each other, so it is enough to follow +ia.
    Complex z = map.critical_point();
    int half = max_iter / 2;
    int t = 0;
    for (; t < half; ++t) {
        z = eval(map, z);
        if (!(std::abs(z) <= kDefaultEscapeRadius)) return CellClass::exterior(t + 1);
    }
    const int max_period = 64;
    while (t < max_iter) {
        auto p = detail::detect_period(map, z, std::min(max_period, max_iter - t), kCycleMatchEps);
        if (p) {
            int raw = *p;
            int newton_period = map.anti() ? (raw % 2 == 0 ? raw / 2 : raw) : raw;
            // Pixels are accepted as interior only when the multiplier
            // clears a budget-dependent margin; marginally attracting
            // parameters stay Unknown instead of speckling the census.
            double margin = std::exp(-100.0 / max_iter);
            try {
                Cycle cyc = find_cycle(map, newton_period, z);
                if (std::abs(cyc.multiplier) <= margin) return CellClass::interior(raw);
            } catch (const Error&) {
            }
            return CellClass::unknown();
        }
        for (int i = 0; i < max_period && t < max_iter; ++i, ++t) {
            z = eval(map, z);
            if (!(std::abs(z) <= kDefaultEscapeRadius)) return CellClass::exterior(t + 1);
        }
    }
    return CellClass::unknown();
}

Raster render_locus(const FamilySpec& fam, const Window& window, int width_px, int height_px,
                    int max_iter) {
    Raster raster(window, width_px, height_px);
    parallel_for(0, height_px, [&](int64_t py) {
        for (int px = 0; px < width_px; ++px) {
            Complex param = window.pixel_center(px, int(py), width_px, height_px);
            raster.at(px, int(py)) = classify_parameter(fam, param, max_iter);
        }
    });
    return raster;
}

} // namespace mclab
