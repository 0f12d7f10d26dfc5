#pragma once

#include "mclab/parabolic.hpp"

namespace mclab {

/// A point on a parabolic arc, located to the requested critical Ecalle
/// height.
struct ArcPoint {
    Complex params;  // c, or (a, b) as re/im
    double height = 0;
    ParabolicGerm parabolic;
};

/// Locates the point of critical Ecalle height target_height on the
/// parabolic arc near the seed. anti_cycle_period is the odd period of
/// the anti-return: k for multicorn odd cycles, 3n for the real-cubic
/// bitransitive renormalization arcs. The arc is continued by
/// pseudo-arclength steps of the three-equation system {A(z) = z,
/// |dA|^2 = 1} with a secant iteration on the height. Throws NotOnArc at
/// parabolic cusps (two petals).
ArcPoint find_arc_point(const FamilySpec& family, int anti_cycle_period, double target_height,
                        Complex param_seed, Complex z_seed);

/// Numerical umbilical-cord trace: walks from start toward the target arc
/// point along the spine of the bounded-orbit locus, recording the
/// transverse displacement of the spine from the straight approach axis.
struct CordTrace {
    std::vector<Complex> polyline;
    std::vector<double> displacements;
    Complex target;
    double step = 0;
};

/// axis fixes the line through the target against which displacements are
/// measured (normally the arc's outward normal); zero means the direction
/// from target to start. The spine is marched from start toward the
/// target along that line, following bounded intervals where they exist
/// and the escape-time ridge of the cord hairline elsewhere.
CordTrace trace_cord(const FamilySpec& family, const ArcPoint& target, Complex start, double step,
                     int max_steps, int max_iter = 4000, Complex axis = Complex(0, 0));

/// Unit normal of the parabolic arc at the arc point, in the parameter
/// plane, oriented away from interior_reference (e.g. the hyperbolic
/// component's center). The cord decoration accumulates along this axis.
Complex arc_outward_normal(const FamilySpec& family, const ArcPoint& point,
                           Complex interior_reference);

/// Sign changes of the transverse displacement after discarding samples
/// with |d| < threshold.
int wiggle_count(const CordTrace& trace, double threshold);

} // namespace mclab
