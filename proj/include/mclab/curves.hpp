#pragma once

#include <string>
#include <vector>

#include "mclab/core_maps.hpp"
#include "mclab/rational_poly.hpp"

namespace mclab {

enum class CurveId { Per1_minus1, Per2_1 };

const char* curve_name(CurveId id);

struct CurvePoint {
    double a = 0;
    double b = 0;
    CurveId curve_id = CurveId::Per1_minus1;
};

/// Phi_1(a) = -4(3a^2-1)(3a^2+2)^2.
double phi1(double a);

/// Interior of the period-one hyperbolic component of the real cubic
/// family: a in [0, 1/sqrt(3)) and 27 b^2 < Phi_1(a).
bool in_H1(double a, double b);

/// The point (a, +sqrt(Phi_1(a)/27)) on Per_1(-1). Throws OutOfRange when
/// Phi_1(a) < 0.
CurvePoint per1_minus1_point(double a);

/// The parabolic curve Per_2(1) as an exact integer-coefficient polynomial
/// in (A, b) with A = a^2: the resultant in z of (g^2(z)-z)/(g(z)-z) and
/// d/dz g^2(z) - 1, with the Per_1(-1) factor and integer content divided
/// out, sign-normalized to be positive at the bitransitive center.
class Per2Curve {
public:
    double eval(double a, double b) const;
    /// Gradient-scaled residual |R| / (1 + |grad R|); small iff (a,b) is
    /// numerically on the curve.
    double scaled_residual(double a, double b) const;
    Rational eval_exact(const Rational& a_squared, const Rational& b) const;
    int deg_A() const;
    int deg_b() const;
    /// How many Per_1(-1) factors the raw resultant carried.
    int stripped_per1_factors() const { return stripped_; }
    const BivarPoly& poly() const { return poly_; }

private:
    friend const Per2Curve& per2_1_polynomial();
    BivarPoly poly_;
    int stripped_ = 0;
};

/// Cached symbolic expansion; computed once, immutable afterwards.
const Per2Curve& per2_1_polynomial();

/// (1/sqrt(2), 0), verified to satisfy g(ia) = -ia to 1e-12.
std::pair<double, double> bitransitive_center();

/// n samples of the upper branch of Per_1(-1), a in [0, 1/sqrt(3)].
std::vector<CurvePoint> sample_per1_minus1(int n);

/// n samples of the Per_2(1) branch bounding the bitransitive component,
/// traced by pseudo-arclength continuation of the conjugate-pair cycle
/// equations from the real-axis crossing a = sqrt(2/3).
std::vector<CurvePoint> sample_per2_1(int n);

void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points);

} // namespace mclab
