#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "mclab/error.hpp"

namespace mclab {

using Complex = std::complex<double>;

constexpr double kDefaultEscapeRadius = 1e3;
constexpr int kNewtonMaxSteps = 64;
constexpr double kNewtonTol = 1e-12;
constexpr double kJacobianDegenerate = 1e-14;
constexpr double kCycleMatchEps = 1e-9;
constexpr int kCycleBurnIn = 200;

// |z| beyond this counts as numerically escaped to infinity, before overflow.
constexpr double kOverflowGuard = 1e100;

enum class MapKind {
    UnicriticalHolo,  // z^d + c
    UnicriticalAnti,  // conj(z)^d + c
    RealCubic,        // -z^3 - 3a^2 z + b
    AntiCubicReturn,  // conj(g_{a,b}^n(z))
};

/// One of the three map families of the workbench (plus the anti-cubic
/// return map). Immutable value; all operations on it are pure.
struct DynamicalMap {
    MapKind kind = MapKind::UnicriticalHolo;
    int degree = 2;   // unicritical degree d >= 2
    Complex c{};      // unicritical parameter
    double a = 0.0;   // real cubic, a >= 0
    double b = 0.0;
    int n = 1;        // iterate count for AntiCubicReturn

    static DynamicalMap unicritical_holo(int d, Complex c);
    static DynamicalMap unicritical_anti(int d, Complex c);
    static DynamicalMap real_cubic(double a, double b);
    static DynamicalMap anti_cubic_return(double a, double b, int n);

    bool anti() const { return kind == MapKind::UnicriticalAnti || kind == MapKind::AntiCubicReturn; }

    // Critical point used for membership/interior tests: 0 for unicritical
    // families, ia for the cubic ones.
    Complex critical_point() const;
};

Complex eval(const DynamicalMap& map, Complex z);

/// Derivative of a holomorphic variant. Anti-holomorphic variants have no
/// complex derivative; asking for one is a contract violation.
Complex derivative(const DynamicalMap& map, Complex z);

/// Derivative at z of the holomorphic second iterate map∘map of an
/// anti-holomorphic variant.
Complex second_iterate_derivative(const DynamicalMap& map, Complex z);

struct Orbit {
    std::vector<Complex> points;
    bool escaped = false;
    std::optional<int> escape_index;
};

Orbit iterate_orbit(const DynamicalMap& map, Complex z0, int max_iter,
                    double escape_radius = kDefaultEscapeRadius);

enum class Stability { Attracting, Repelling, Indifferent, Superattracting };

const char* stability_name(Stability s);

/// A periodic orbit. For anti-holomorphic maps the period is counted in
/// units of the holomorphic return map∘map, and the multiplier is always
/// the derivative of that first holomorphic return.
struct Cycle {
    std::vector<Complex> points;
    int period = 1;
    Complex multiplier{};
    Stability stability = Stability::Attracting;
};

Stability classify_multiplier(Complex multiplier);

/// Newton's method on map^{∘period}(z) - z (holomorphic return for anti
/// maps). Throws NoConvergence / DegenerateJacobian.
Cycle find_cycle(const DynamicalMap& map, int period, Complex seed, double tol = kNewtonTol);

/// Iterates the critical orbit and looks for an eps-periodic attracting
/// cycle, refining any hit via find_cycle. Returns the period in raw map
/// iterates (anti maps included); absence is a value.
std::optional<Cycle> find_attracting_cycle(const DynamicalMap& map, int max_iter);

namespace detail {
// Holomorphic polynomial h with f(z) = h(conj z) for anti variants;
// for holomorphic variants h = f itself.
Complex hol_part_eval(const DynamicalMap& map, Complex w);
Complex hol_part_derivative(const DynamicalMap& map, Complex w);

// Multiplier of the first holomorphic return of a point with the given
// period under the raw map (chain rule along the orbit).
Complex holomorphic_return_multiplier(const DynamicalMap& map, Complex z, int raw_period);

// eps-periodicity scan: iterates from z0 (already burned in) and reports
// the minimal p <= max_period with |z_{t+p} - z_t| < eps, if any.
std::optional<int> detect_period(const DynamicalMap& map, Complex z, int max_period, double eps);
} // namespace detail

} // namespace mclab
