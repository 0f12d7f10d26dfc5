#include "mclab/raster.hpp"

#include <array>
#include <cstdio>
#include <fstream>

namespace mclab {

Window::Window(Complex c, double w, double h) : center(c), width(w), height(h) {
    if (!(w > 0) || !(h > 0)) fail(Status::InvalidArgument, "window extents must be positive");
}

Complex Window::pixel_center(int px, int py, int width_px, int height_px) const {
    double sx = width / width_px;
    double sy = height / height_px;
    double dx = (px + 0.5 - width_px * 0.5) * sx;
    double dy = (py + 0.5 - height_px * 0.5) * sy;
    return Complex(center.real() + dx, center.imag() + dy);
}

Raster::Raster(const Window& win, int wpx, int hpx) : width_px(wpx), height_px(hpx), window(win) {
    if (wpx < 1 || hpx < 1) fail(Status::InvalidArgument, "raster resolution must be >= 1x1");
    cells.assign(size_t(wpx) * hpx, CellClass::unknown());
}

namespace {

struct Rgb {
    uint8_t r, g, b;
};

constexpr std::array<Rgb, 16> kInteriorPalette = {{
    {230, 60, 60},   {60, 120, 230}, {60, 200, 90},   {240, 200, 50},
    {170, 70, 220},  {60, 210, 210}, {240, 130, 40},  {130, 220, 60},
    {230, 80, 170},  {90, 90, 240},  {170, 220, 120}, {200, 160, 220},
    {120, 80, 40},   {100, 180, 150}, {220, 220, 220}, {150, 40, 80},
}};

Rgb cell_color(const CellClass& cell) {
    switch (cell.tag) {
        case CellTag::Exterior: {
            uint8_t g = uint8_t(cell.value % 256);
            return {g, g, g};
        }
        case CellTag::Interior:
            return kInteriorPalette[size_t(cell.value % 16)];
        case CellTag::Unknown:
            return {0, 0, 0};
    }
    return {0, 0, 0};
}

} // namespace

std::string ppm_bytes(const Raster& raster) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", raster.width_px, raster.height_px);
    std::string out(header, size_t(n));
    out.reserve(out.size() + size_t(raster.width_px) * raster.height_px * 3);
    for (int py = raster.height_px - 1; py >= 0; --py) {
        for (int px = 0; px < raster.width_px; ++px) {
            Rgb c = cell_color(raster.at(px, py));
            out.push_back(char(c.r));
            out.push_back(char(c.g));
            out.push_back(char(c.b));
        }
    }
    return out;
}

void write_ppm(const Raster& raster, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(Status::IoError, "cannot open " + path);
    std::string bytes = ppm_bytes(raster);
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) fail(Status::IoError, "write failed: " + path);
}

void write_csv(const Raster& raster, const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(Status::IoError, "cannot open " + path);
    f << "px,py,re,im,class,value\n";
    char line[160];
    for (int py = 0; py < raster.height_px; ++py) {
        for (int px = 0; px < raster.width_px; ++px) {
            Complex p = raster.window.pixel_center(px, py, raster.width_px, raster.height_px);
            const CellClass& cell = raster.at(px, py);
            const char* cls = cell.tag == CellTag::Exterior ? "exterior"
                              : cell.tag == CellTag::Interior ? "interior"
                                                              : "unknown";
            std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%s,%d\n", px, py, p.real(), p.imag(),
                          cls, cell.value);
            f << line;
        }
    }
    if (!f) fail(Status::IoError, "write failed: " + path);
}

int component_census(const Raster& raster, int period, int min_size) {
    const int w = raster.width_px, h = raster.height_px;
    std::vector<uint8_t> mark(size_t(w) * h, 0);
    auto is_hit = [&](int x, int y) {
        const CellClass& c = raster.at(x, y);
        return c.tag == CellTag::Interior && c.value == period;
    };
    int components = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!is_hit(x, y) || mark[size_t(y) * w + x]) continue;
            int size = 0;
            stack.push_back({x, y});
            mark[size_t(y) * w + x] = 1;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++size;
                const int nx[4] = {cx - 1, cx + 1, cx, cx};
                const int ny[4] = {cy, cy, cy - 1, cy + 1};
                for (int k = 0; k < 4; ++k) {
                    if (nx[k] < 0 || nx[k] >= w || ny[k] < 0 || ny[k] >= h) continue;
                    if (mark[size_t(ny[k]) * w + nx[k]] || !is_hit(nx[k], ny[k])) continue;
                    mark[size_t(ny[k]) * w + nx[k]] = 1;
                    stack.push_back({nx[k], ny[k]});
                }
            }
            if (size >= min_size) ++components;
        }
    }
    return components;
}

} // namespace mclab
