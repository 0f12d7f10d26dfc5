#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mclab/core_maps.hpp"

namespace mclab {

/// Axis-aligned view rectangle. The center is a point of the parameter or
/// dynamical plane; for the real-cubic plane read (re, im) as (a, b).
struct Window {
    Complex center{};
    double width = 0;
    double height = 0;

    Window() = default;
    Window(Complex c, double w, double h);

    /// Center of pixel (px, py) in plane coordinates, py = 0 at the bottom
    /// row. Offsets are formed as (index + 0.5 - dim/2) * step so that
    /// mirror-image pixel pairs map to exact floating-point negatives
    /// around the window center.
    Complex pixel_center(int px, int py, int width_px, int height_px) const;
};

enum class CellTag : uint8_t { Exterior, Interior, Unknown };

struct CellClass {
    CellTag tag = CellTag::Unknown;
    int32_t value = 0;  // escape time or interior period

    static CellClass exterior(int escape_time) { return {CellTag::Exterior, escape_time}; }
    static CellClass interior(int period) { return {CellTag::Interior, period}; }
    static CellClass unknown() { return {CellTag::Unknown, 0}; }

    bool operator==(const CellClass&) const = default;
};

/// Row-major classification grid; row 0 is the bottom row of the window.
struct Raster {
    int width_px = 0;
    int height_px = 0;
    Window window;
    std::vector<CellClass> cells;

    Raster() = default;
    Raster(const Window& win, int wpx, int hpx);

    CellClass& at(int px, int py) { return cells[size_t(py) * width_px + px]; }
    const CellClass& at(int px, int py) const { return cells[size_t(py) * width_px + px]; }
};

/// Binary P6 emission, bit-exact: "P6\n{w} {h}\n255\n" then RGB triples
/// row-major, top row first. Exterior cells map to grayscale escape_time
/// mod 256, Interior(p) to a fixed 16-entry palette at p mod 16, Unknown
/// to black.
void write_ppm(const Raster& raster, const std::string& path);
std::string ppm_bytes(const Raster& raster);

/// CSV dump with header px,py,re,im,class,value.
void write_csv(const Raster& raster, const std::string& path);

/// Number of 4-connected components of Interior(period) cells. Components
/// smaller than min_size pixels are not counted; hyperbolic components of
/// anti-holomorphic families pinch to zero thickness at their cusps, so
/// center-sampled rasters always shed a few isolated pixels there.
int component_census(const Raster& raster, int period, int min_size = 1);

} // namespace mclab
