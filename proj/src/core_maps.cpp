#include "mclab/core_maps.hpp"

#include <cmath>

namespace mclab {

DynamicalMap DynamicalMap::unicritical_holo(int d, Complex c) {
    if (d < 2) fail(Status::InvalidArgument, "unicritical degree must be >= 2");
    DynamicalMap m;
    m.kind = MapKind::UnicriticalHolo;
    m.degree = d;
    m.c = c;
    return m;
}

DynamicalMap DynamicalMap::unicritical_anti(int d, Complex c) {
    if (d < 2) fail(Status::InvalidArgument, "unicritical degree must be >= 2");
    DynamicalMap m;
    m.kind = MapKind::UnicriticalAnti;
    m.degree = d;
    m.c = c;
    return m;
}

DynamicalMap DynamicalMap::real_cubic(double a, double b) {
    if (a < 0) fail(Status::InvalidArgument, "real cubic requires a >= 0");
    DynamicalMap m;
    m.kind = MapKind::RealCubic;
    m.a = a;
    m.b = b;
    return m;
}

DynamicalMap DynamicalMap::anti_cubic_return(double a, double b, int n) {
    if (a < 0) fail(Status::InvalidArgument, "real cubic requires a >= 0");
    if (n < 1) fail(Status::InvalidArgument, "return iterate count must be >= 1");
    DynamicalMap m;
    m.kind = MapKind::AntiCubicReturn;
    m.a = a;
    m.b = b;
    m.n = n;
    return m;
}

Complex DynamicalMap::critical_point() const {
    switch (kind) {
        case MapKind::UnicriticalHolo:
        case MapKind::UnicriticalAnti:
            return Complex(0, 0);
        case MapKind::RealCubic:
        case MapKind::AntiCubicReturn:
            return Complex(0, a);
    }
    return Complex(0, 0);
}

static Complex ipow(Complex z, int d) {
    Complex r(1, 0);
    while (d > 0) {
        if (d & 1) r *= z;
        z *= z;
        d >>= 1;
    }
    return r;
}

static inline Complex cubic_eval(double a, double b, Complex z) {
    // -z^3 - 3a^2 z + b
    return -(z * z * z) - (3.0 * a * a) * z + b;
}

Complex eval(const DynamicalMap& map, Complex z) {
    switch (map.kind) {
        case MapKind::UnicriticalHolo:
            return ipow(z, map.degree) + map.c;
        case MapKind::UnicriticalAnti:
            return ipow(std::conj(z), map.degree) + map.c;
        case MapKind::RealCubic:
            return cubic_eval(map.a, map.b, z);
        case MapKind::AntiCubicReturn: {
            Complex w = z;
            for (int i = 0; i < map.n; ++i) {
                w = cubic_eval(map.a, map.b, w);
                if (std::abs(w) > kOverflowGuard) return std::conj(w);
            }
            return std::conj(w);
        }
    }
    return z;
}

Complex derivative(const DynamicalMap& map, Complex z) {
    switch (map.kind) {
        case MapKind::UnicriticalHolo:
            return double(map.degree) * ipow(z, map.degree - 1);
        case MapKind::RealCubic:
            return -3.0 * (z * z + map.a * map.a);
        case MapKind::UnicriticalAnti:
        case MapKind::AntiCubicReturn:
            fail(Status::InvalidArgument,
                 "derivative requested on an anti-holomorphic variant; use second_iterate_derivative");
    }
    return Complex(0, 0);
}

namespace detail {

Complex hol_part_eval(const DynamicalMap& map, Complex w) {
    switch (map.kind) {
        case MapKind::UnicriticalHolo:
        case MapKind::UnicriticalAnti:
            return ipow(w, map.degree) + map.c;
        case MapKind::RealCubic:
            return cubic_eval(map.a, map.b, w);
        case MapKind::AntiCubicReturn: {
            for (int i = 0; i < map.n; ++i) {
                w = cubic_eval(map.a, map.b, w);
                if (std::abs(w) > kOverflowGuard) return w;
            }
            return w;
        }
    }
    return w;
}

Complex hol_part_derivative(const DynamicalMap& map, Complex w) {
    switch (map.kind) {
        case MapKind::UnicriticalHolo:
        case MapKind::UnicriticalAnti:
            return double(map.degree) * ipow(w, map.degree - 1);
        case MapKind::RealCubic:
            return -3.0 * (w * w + map.a * map.a);
        case MapKind::AntiCubicReturn: {
            Complex d(1, 0);
            for (int i = 0; i < map.n; ++i) {
                d *= -3.0 * (w * w + map.a * map.a);
                w = cubic_eval(map.a, map.b, w);
                if (std::abs(w) > kOverflowGuard) break;
            }
            return d;
        }
    }
    return Complex(0, 0);
}

} // namespace detail

Complex second_iterate_derivative(const DynamicalMap& map, Complex z) {
    if (!map.anti())
        fail(Status::InvalidArgument, "second_iterate_derivative requires an anti-holomorphic variant");
    // f(z) = h(conj z) with h holomorphic, so (f∘f)'(z) = h'(conj f(z)) · conj(h'(conj z)).
    Complex fz = eval(map, z);
    return detail::hol_part_derivative(map, std::conj(fz)) *
           std::conj(detail::hol_part_derivative(map, std::conj(z)));
}

Orbit iterate_orbit(const DynamicalMap& map, Complex z0, int max_iter, double escape_radius) {
    if (max_iter < 1) fail(Status::InvalidArgument, "max_iter must be >= 1");
    if (!(escape_radius > 0)) fail(Status::InvalidArgument, "escape_radius must be > 0");
    Orbit orbit;
    orbit.points.reserve(size_t(max_iter) + 1);
    Complex z = z0;
    orbit.points.push_back(z);
    for (int i = 1; i <= max_iter; ++i) {
        z = eval(map, z);
        orbit.points.push_back(z);
        if (!(std::abs(z) <= escape_radius)) {  // catches NaN as escaped too
            orbit.escaped = true;
            orbit.escape_index = i;
            break;
        }
    }
    return orbit;
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::Attracting: return "attracting";
        case Stability::Repelling: return "repelling";
        case Stability::Indifferent: return "indifferent";
        case Stability::Superattracting: return "superattracting";
    }
    return "?";
}

Stability classify_multiplier(Complex multiplier) {
    double m = std::abs(multiplier);
    if (m < 1e-8) return Stability::Superattracting;
    if (std::abs(m - 1.0) <= 1e-9) return Stability::Indifferent;
    return m < 1.0 ? Stability::Attracting : Stability::Repelling;
}

namespace {

// Return map used by the cycle solver: the map itself when holomorphic,
// map∘map when anti-holomorphic.
struct ReturnMap {
    const DynamicalMap& map;
    bool twice;

    Complex operator()(Complex z) const {
        Complex w = eval(map, z);
        return twice ? eval(map, w) : w;
    }
    Complex deriv(Complex z) const {
        if (twice) return second_iterate_derivative(map, z);
        return derivative(map, z);
    }
};

} // namespace

Cycle find_cycle(const DynamicalMap& map, int period, Complex seed, double tol) {
    if (period < 1) fail(Status::InvalidArgument, "period must be >= 1");
    ReturnMap R{map, map.anti()};
    Complex z = seed;
    bool converged = false;
    for (int step = 0; step < kNewtonMaxSteps; ++step) {
        // F(z) = R^period(z) - z, F'(z) via the chain rule.
        Complex w = z;
        Complex dw(1, 0);
        for (int i = 0; i < period; ++i) {
            dw *= R.deriv(w);
            w = R(w);
            if (std::abs(w) > kOverflowGuard) fail(Status::NoConvergence, "cycle orbit overflow");
        }
        Complex F = w - z;
        if (std::abs(F) < tol) {
            converged = true;
            break;
        }
        Complex dF = dw - 1.0;
        if (std::abs(dF) < kJacobianDegenerate)
            fail(Status::DegenerateJacobian, "Newton Jacobian below threshold");
        z -= F / dF;
    }
    if (!converged) {
        // one last residual check after the final update
        Complex w = z;
        for (int i = 0; i < period; ++i) w = R(w);
        if (!(std::abs(w - z) < tol)) fail(Status::NoConvergence, "cycle Newton did not converge");
    }

    // Indifferent cycles with multiplier 1 are double roots of F; plain
    // Newton stalls at |z - z*| ~ sqrt(tol). Polish by solving F'(z) = 0
    // and keep the result only if it also satisfies the cycle equation.
    {
        auto deriv_chain = [&](Complex w) {
            Complex dw(1, 0);
            for (int i = 0; i < period; ++i) {
                dw *= R.deriv(w);
                w = R(w);
            }
            return dw;
        };
        Complex dF = deriv_chain(z) - 1.0;
        if (std::abs(dF) < 1e-3) {
            Complex zc = z;
            const double h = 1e-7;
            for (int step = 0; step < 20; ++step) {
                Complex g = deriv_chain(zc) - 1.0;
                if (std::abs(g) < 1e-14) break;
                Complex g2 = (deriv_chain(zc + h) - deriv_chain(zc - h)) / (2 * h);
                if (std::abs(g2) < kJacobianDegenerate) break;
                zc -= g / g2;
            }
            Complex w = zc;
            for (int i = 0; i < period; ++i) w = R(w);
            if (std::abs(w - zc) < tol) z = zc;
        }
    }

    Cycle cyc;
    cyc.period = period;
    cyc.points.reserve(size_t(period));
    Complex w = z;
    Complex mult(1, 0);
    for (int i = 0; i < period; ++i) {
        cyc.points.push_back(w);
        mult *= R.deriv(w);
        w = R(w);
    }
    cyc.multiplier = mult;
    cyc.stability = classify_multiplier(mult);
    return cyc;
}

namespace detail {

Complex holomorphic_return_multiplier(const DynamicalMap& map, Complex z, int raw_period) {
    if (!map.anti()) {
        Complex mult(1, 0);
        Complex w = z;
        for (int i = 0; i < raw_period; ++i) {
            mult *= derivative(map, w);
            w = eval(map, w);
        }
        return mult;
    }
    // Units of map∘map; an odd raw period returns after raw_period second
    // iterates, an even one after raw_period/2.
    int m = (raw_period % 2 == 0) ? raw_period / 2 : raw_period;
    Complex mult(1, 0);
    Complex w = z;
    for (int i = 0; i < m; ++i) {
        mult *= second_iterate_derivative(map, w);
        w = eval(map, eval(map, w));
    }
    return mult;
}

std::optional<int> detect_period(const DynamicalMap& map, Complex z, int max_period, double eps) {
    Complex ref = z;
    Complex w = z;
    for (int p = 1; p <= max_period; ++p) {
        w = eval(map, w);
        if (std::abs(w) > kOverflowGuard) return std::nullopt;
        if (std::abs(w - ref) < eps) return p;
    }
    return std::nullopt;
}

} // namespace detail

std::optional<Cycle> find_attracting_cycle(const DynamicalMap& map, int max_iter) {
    const int max_period = 256;
    Complex z = map.critical_point();
    int t = 0;
    for (; t < kCycleBurnIn && t < max_iter; ++t) {
        z = eval(map, z);
        if (!(std::abs(z) <= kDefaultEscapeRadius)) return std::nullopt;
    }
    while (t < max_iter) {
        auto p = detail::detect_period(map, z, std::min(max_period, max_iter - t), kCycleMatchEps);
        if (p) {
            int raw = *p;
            int newton_period = map.anti() ? (raw % 2 == 0 ? raw / 2 : raw) : raw;
            try {
                Cycle cyc = find_cycle(map, newton_period, z);
                cyc.period = raw;
                if (map.anti()) {
                    // report the cycle points under the raw map
                    Complex w = cyc.points[0];
                    cyc.points.clear();
                    for (int i = 0; i < raw; ++i) {
                        cyc.points.push_back(w);
                        w = eval(map, w);
                    }
                }
                if (cyc.stability == Stability::Attracting || cyc.stability == Stability::Superattracting)
                    return cyc;
                return std::nullopt;  // converged onto an indifferent orbit
            } catch (const Error&) {
                return std::nullopt;
            }
        }
        // march forward and try again
        for (int i = 0; i < max_period && t < max_iter; ++i, ++t) {
            z = eval(map, z);
            if (!(std::abs(z) <= kDefaultEscapeRadius)) return std::nullopt;
        }
    }
    return std::nullopt;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::InvalidArgument: return "invalid_argument";
        case Status::NoConvergence: return "no_convergence";
        case Status::DegenerateJacobian: return "degenerate_jacobian";
        case Status::OutOfRange: return "out_of_range";
        case Status::NotACenter: return "not_a_center";
        case Status::NoAttractingCycle: return "no_attracting_cycle";
        case Status::NotInPetal: return "not_in_petal";
        case Status::OutsideDomain: return "outside_domain";
        case Status::PrecisionLoss: return "precision_loss";
        case Status::NotAntiReturn: return "not_anti_return";
        case Status::NotSimplePetal: return "not_simple_petal";
        case Status::WrongPeriod: return "wrong_period";
        case Status::NotOnArc: return "not_on_arc";
        case Status::LostSpine: return "lost_spine";
        case Status::IoError: return "io_error";
    }
    return "?";
}

} // namespace mclab
