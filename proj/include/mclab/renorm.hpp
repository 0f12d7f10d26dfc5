#pragma once

#include <optional>

#include "mclab/raster.hpp"

namespace mclab {

/// A bitransitive center (a0, b0) of the real cubic family together with
/// the return iterate count n (the critical point ia0 has period 2n and
/// g^n(ia0) = -ia0). Anchors anti-polynomial-like renormalization.
struct RenormSeed {
    double a0 = 0;
    double b0 = 0;
    int n = 1;
    double julia_radius = 0;  // bounding-disk radius of the inner filled Julia set around ia0
    double local_radius = 0;  // escape threshold for the bounded-orbit proxy (3x julia_radius)
};

/// Verifies the center condition |g^n(ia0) + ia0| < 1e-9 and estimates the
/// inner Julia set bounding radius from 64 directional probes.
RenormSeed make_renorm_seed(double a0, double b0, int n);

/// The анти return map k(z) = conj(g_{a,b}^n(z)) as a DynamicalMap.
DynamicalMap anti_return(double a, double b, int n);

struct RenormResult {
    bool renormalizable = false;
    std::optional<int> escape_index;
    std::optional<int> inner_period;
};

/// Bounded-orbit renormalizability proxy: iterates k = anti_return from
/// the critical point ia and succeeds when the orbit stays within
/// local_radius of the seed's critical point for max_iter steps.
/// local_radius <= 0 uses the seed default.
RenormResult is_renormalizable_approx(double a, double b, const RenormSeed& seed, int max_iter,
                                      double local_radius = 0);

/// Parameter-plane raster of RenormResult classifications: Exterior carries
/// the escape index, Interior the inner period.
Raster render_tricorn_like(const RenormSeed& seed, const Window& window, int width_px,
                           int height_px, int max_iter);

/// Centers c of multicorn(2) hyperbolic components of the given period
/// (minimal period of the critical point under f_c), deduplicated and
/// sorted by (re, im).
std::vector<Complex> tricorn_centers(int period);

/// Centers (a, b) of inner-period-m components of the tricorn-like set:
/// solutions of k^m(ia) = ia found by Newton from a grid over the search
/// rectangle, deduplicated and sorted by (a, b).
std::vector<std::pair<double, double>> renorm_centers(const RenormSeed& seed, int period,
                                                      double a_lo, double a_hi, double b_lo,
                                                      double b_hi, double grid_step);

/// Maps a center of the tricorn-like set to a Tricorn center of the same
/// inner period. Component selection among same-period Tricorn centers is
/// by the optional hint (Newton-polished); without a hint the real center
/// of smallest modulus is returned. Throws NotACenter.
Complex straighten_center(double a, double b, const RenormSeed& seed,
                          std::optional<Complex> component_hint = std::nullopt);

/// Multiplier-matching straightening: computes the holomorphic-return
/// multiplier mu of the attracting inner cycle at (a,b) and solves for c
/// near target_component_center with equal f_c return multiplier.
/// Returns {c, mu}.
std::pair<Complex, Complex> straighten_by_multiplier(double a, double b, const RenormSeed& seed,
                                                     Complex target_component_center);

} // namespace mclab
