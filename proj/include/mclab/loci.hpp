#pragma once

#include "mclab/raster.hpp"

namespace mclab {

enum class Family { Multibrot, Multicorn, RealCubic };

Family family_from_name(const std::string& name);
const char* family_name(Family f);

/// Parameter-plane family descriptor: multibrot(d), multicorn(d), or the
/// real cubic plane (degree ignored there).
struct FamilySpec {
    Family family = Family::Multibrot;
    int degree = 2;

    DynamicalMap map_at(Complex param) const;
};

/// Bounded-critical-orbit membership test with interior-period detection.
/// Exterior(t) when the critical orbit escapes at step t <= max_iter,
/// Interior(p) when an attracting cycle of period p is detected, Unknown
/// otherwise. Interior detection only starts if the orbit survives
/// max_iter/2 steps.
CellClass classify_parameter(const FamilySpec& fam, Complex param, int max_iter);

/// Pixel-parallel parameter-plane render; cell (i,j) classifies the pixel
/// center. Bit-identical across runs and thread counts.
Raster render_locus(const FamilySpec& fam, const Window& window, int width_px, int height_px,
                    int max_iter);

} // namespace mclab
