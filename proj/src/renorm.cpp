#include "mclab/renorm.hpp"

#include <algorithm>
#include <cmath>

#include "mclab/parallel.hpp"

namespace mclab {

DynamicalMap anti_return(double a, double b, int n) {
    return DynamicalMap::anti_cubic_return(a, b, n);
}

namespace {

// Does the k-orbit of z converge to the superattracting fixed point ia0
// while staying within cap of it? The cap keeps probes from wandering
// through the basin of the conjugate critical point.
bool converges_locally(const DynamicalMap& k, Complex z, Complex target, double cap,
                       int max_iter) {
    bool close = false;
    for (int i = 0; i < max_iter; ++i) {
        z = eval(k, z);
        if (!(std::abs(z - target) <= cap)) return false;
        if (std::abs(z - target) < 0.02) close = true;
    }
    return close;
}

} // namespace

RenormSeed make_renorm_seed(double a0, double b0, int n) {
    if (n < 1) fail(Status::InvalidArgument, "seed n must be >= 1");
    auto g = DynamicalMap::real_cubic(a0, b0);
    Complex w(0, a0);
    for (int i = 0; i < n; ++i) w = eval(g, w);
    if (!(std::abs(w + Complex(0, a0)) < 1e-9))
        fail(Status::NotACenter, "seed is not a bitransitive center: |g^n(ia0) + ia0| >= 1e-9");

    RenormSeed seed;
    seed.a0 = a0;
    seed.b0 = b0;
    seed.n = n;

    // directional probes for the basin extent around ia0; the cap is 90% of
    // the distance to the conjugate critical point -ia0
    DynamicalMap k = anti_return(a0, b0, n);
    Complex center(0, a0);
    double cap = 0.9 * 2 * a0;
    double radius = 0;
    for (int j = 0; j < 64; ++j) {
        double theta = 2 * M_PI * j / 64;
        Complex dir(std::cos(theta), std::sin(theta));
        double last_in = 0;
        for (int s = 1; s <= 80; ++s) {
            double t = 0.02 * s;
            if (t >= cap) break;
            if (converges_locally(k, center + t * dir, center, cap, 600)) last_in = t;
        }
        radius = std::max(radius, last_in);
    }
    if (radius == 0) fail(Status::NotACenter, "basin probes all escaped");
    seed.julia_radius = radius;
    seed.local_radius = 3 * radius;
    return seed;
}

namespace {

// unique real fixed point of g_{a,b}: the real root of -x^3-(3a^2+1)x+b
double real_fixed_point(double a, double b) {
    double s = 3 * a * a + 1;
    double x = 0;
    for (int it = 0; it < 200; ++it) {
        double f = -x * x * x - s * x + b;
        double df = -3 * x * x - s;
        double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return x;
}

} // namespace

RenormResult is_renormalizable_approx(double a, double b, const RenormSeed& seed, int max_iter,
                                      double local_radius) {
    if (max_iter < 1) fail(Status::InvalidArgument, "max_iter must be >= 1");
    double rad = local_radius > 0 ? local_radius : seed.local_radius;
    DynamicalMap k = anti_return(a, b, seed.n);
    const Complex anchor(0, seed.a0);
    Complex z(0, a);

    RenormResult out;
    // Renormalizable parameters keep the rational lamination of the seed, so
    // K meets the real line in a single repelling fixed point; an attracting
    // or indifferent real fixed point (the H1 side of Per_1(-1)) disqualifies.
    {
        double x = real_fixed_point(a, b);
        if (3 * (x * x + a * a) <= 1.0) {
            out.escape_index = 0;
            return out;
        }
    }
    int t = 0;
    int burn = std::min(kCycleBurnIn, max_iter / 2);
    for (; t < burn; ++t) {
        z = eval(k, z);
        if (!(std::abs(z - anchor) <= rad)) {
            out.escape_index = t + 1;
            return out;
        }
    }
    const int max_period = 64;
    double margin = std::exp(-100.0 / max_iter);
    while (t < max_iter) {
        auto p = detail::detect_period(k, z, std::min(max_period, max_iter - t), kCycleMatchEps);
        if (p) {
            int raw = *p;
            int newton_period = raw % 2 == 0 ? raw / 2 : raw;
            out.renormalizable = true;
            try {
                Cycle cyc = find_cycle(k, newton_period, z);
                if (std::abs(cyc.multiplier) <= margin) out.inner_period = raw;
            } catch (const Error&) {
            }
            return out;
        }
        for (int i = 0; i < max_period && t < max_iter; ++i, ++t) {
            z = eval(k, z);
            if (!(std::abs(z - anchor) <= rad)) {
                out.escape_index = t + 1;
                return out;
            }
        }
    }
    out.renormalizable = true;
    return out;
}

Raster render_tricorn_like(const RenormSeed& seed, const Window& window, int width_px,
                           int height_px, int max_iter) {
    Raster raster(window, width_px, height_px);
    parallel_for(0, height_px, [&](int64_t py) {
        for (int px = 0; px < width_px; ++px) {
            Complex param = window.pixel_center(px, int(py), width_px, height_px);
            if (param.real() < 0) {
                raster.at(px, int(py)) = CellClass::unknown();
                continue;
            }
            RenormResult r = is_renormalizable_approx(param.real(), param.imag(), seed, max_iter);
            CellClass cell = CellClass::unknown();
            if (!r.renormalizable)
                cell = CellClass::exterior(r.escape_index.value_or(max_iter));
            else if (r.inner_period)
                cell = CellClass::interior(*r.inner_period);
            raster.at(px, int(py)) = cell;
        }
    });
    return raster;
}

namespace {

// f_c^m(0) as a function of c, for center solving
Complex critical_orbit_anti(Complex c, int m) {
    auto f = DynamicalMap::unicritical_anti(2, c);
    Complex z(0, 0);
    for (int i = 0; i < m; ++i) z = eval(f, z);
    return z;
}

bool newton_center(Complex& c, int m) {
    const double h = 1e-7;
    for (int it = 0; it < 60; ++it) {
        Complex F = critical_orbit_anti(c, m);
        if (std::abs(F) < 1e-13) return true;
        Complex Fx = (critical_orbit_anti(c + h, m) - critical_orbit_anti(c - h, m)) / (2 * h);
        Complex Fy =
            (critical_orbit_anti(c + Complex(0, h), m) - critical_orbit_anti(c - Complex(0, h), m)) /
            (2 * h);
        double det = Fx.real() * Fy.imag() - Fy.real() * Fx.imag();
        if (std::abs(det) < 1e-14) return false;
        double sx = (F.real() * Fy.imag() - Fy.real() * F.imag()) / det;
        double sy = (Fx.real() * F.imag() - F.real() * Fx.imag()) / det;
        c -= Complex(sx, sy);
        if (std::abs(c) > 4) return false;
    }
    return std::abs(critical_orbit_anti(c, m)) < 1e-11;
}

bool is_minimal_center_period(Complex c, int m) {
    for (int j = 1; j < m; ++j)
        if (std::abs(critical_orbit_anti(c, j)) < 1e-6) return false;
    return true;
}

// inner period of the critical point under k; nullopt when not periodic
std::optional<int> center_inner_period(double a, double b, const RenormSeed& seed, double tol) {
    DynamicalMap k = anti_return(a, b, seed.n);
    Complex crit(0, a);
    Complex z = crit;
    for (int m = 1; m <= 64; ++m) {
        z = eval(k, z);
        if (!(std::abs(z) < kOverflowGuard)) return std::nullopt;
        if (std::abs(z - crit) < tol) return m;
    }
    return std::nullopt;
}

} // namespace

std::vector<Complex> tricorn_centers(int period) {
    if (period < 1) fail(Status::InvalidArgument, "period must be >= 1");
    std::vector<Complex> found;
    for (double re = -2.0; re <= 1.21; re += 0.05) {
        for (double im = -1.7; im <= 1.71; im += 0.05) {
            Complex c(re, im);
            if (!newton_center(c, period)) continue;
            if (!is_minimal_center_period(c, period)) continue;
            bool dup = false;
            for (const auto& o : found)
                if (std::abs(o - c) < 1e-6) {
                    dup = true;
                    break;
                }
            if (!dup) found.push_back(c);
        }
    }
    std::sort(found.begin(), found.end(), [](Complex u, Complex v) {
        return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
    });
    return found;
}

namespace {

Complex inner_orbit(double a, double b, int n, int m) {
    DynamicalMap k = anti_return(a, b, n);
    Complex z(0, a);
    for (int i = 0; i < m; ++i) z = eval(k, z);
    return z - Complex(0, a);
}

bool newton_inner_center(double& a, double& b, int n, int m) {
    const double h = 1e-7;
    for (int it = 0; it < 80; ++it) {
        if (a < h || a > 2 || std::abs(b) > 1.5) return false;
        Complex f = inner_orbit(a, b, n, m);
        if (std::abs(f) < 1e-13) return true;
        Complex fa = (inner_orbit(a + h, b, n, m) - inner_orbit(a - h, b, n, m)) / (2 * h);
        Complex fb = (inner_orbit(a, b + h, n, m) - inner_orbit(a, b - h, n, m)) / (2 * h);
        double det = fa.real() * fb.imag() - fb.real() * fa.imag();
        if (std::abs(det) < 1e-16) return false;
        a -= (f.real() * fb.imag() - fb.real() * f.imag()) / det;
        b -= (fa.real() * f.imag() - f.real() * fa.imag()) / det;
    }
    return a >= 0 && std::abs(inner_orbit(a, b, n, m)) < 1e-11;
}

} // namespace

std::vector<std::pair<double, double>> renorm_centers(const RenormSeed& seed, int period,
                                                      double a_lo, double a_hi, double b_lo,
                                                      double b_hi, double grid_step) {
    if (period < 1 || grid_step <= 0) fail(Status::InvalidArgument, "bad center search inputs");
    std::vector<std::pair<double, double>> found;
    for (double a0 = a_lo; a0 <= a_hi + 1e-15; a0 += grid_step) {
        for (double b0 = b_lo; b0 <= b_hi + 1e-15; b0 += grid_step) {
            double a = a0, b = b0;
            if (!newton_inner_center(a, b, seed.n, period)) continue;
            bool minimal = true;
            for (int j = 1; j < period; ++j)
                if (std::abs(inner_orbit(a, b, seed.n, j)) < 1e-6) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            // keep only centers the bounded proxy actually classifies
            RenormResult rr = is_renormalizable_approx(a, b, seed, 4000);
            if (!rr.renormalizable) continue;
            bool dup = false;
            for (const auto& o : found)
                if (std::abs(o.first - a) + std::abs(o.second - b) < 1e-6) {
                    dup = true;
                    break;
                }
            if (!dup) found.push_back({a, b});
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

Complex straighten_center(double a, double b, const RenormSeed& seed,
                          std::optional<Complex> component_hint) {
    auto m = center_inner_period(a, b, seed, 1e-9);
    if (!m) fail(Status::NotACenter, "critical point is not periodic under the return map");
    if (component_hint) {
        Complex c = *component_hint;
        if (!newton_center(c, *m) || !is_minimal_center_period(c, *m))
            fail(Status::NoConvergence, "no Tricorn center of matching period near hint");
        return c;
    }
    if (*m == 1) return Complex(0, 0);
    // canonical pick: real center of smallest modulus
    auto centers = tricorn_centers(*m);
    Complex best;
    bool have = false;
    for (const auto& c : centers) {
        if (std::abs(c.imag()) > 1e-9) continue;
        if (!have || std::abs(c) < std::abs(best)) {
            best = c;
            have = true;
        }
    }
    if (!have) fail(Status::NoConvergence, "no real Tricorn center of the inner period");
    return best;
}

std::pair<Complex, Complex> straighten_by_multiplier(double a, double b, const RenormSeed& seed,
                                                     Complex target_component_center) {
    DynamicalMap k = anti_return(a, b, seed.n);
    auto cyc = find_attracting_cycle(k, 100000);
    if (!cyc) fail(Status::NoAttractingCycle, "no attracting inner cycle at (a,b)");
    Complex mu = cyc->multiplier;
    int raw_period = cyc->period;

    Complex c0 = target_component_center;
    if (!newton_center(c0, raw_period) || !is_minimal_center_period(c0, raw_period))
        fail(Status::NoConvergence, "target center does not match the inner period");

    if (std::abs(mu) < 1e-10) return {c0, mu};  // centers map to centers

    // track the f_c cycle from the center outward while matching multipliers
    int newton_period = raw_period % 2 == 0 ? raw_period / 2 : raw_period;
    auto f_mult = [&](Complex c, Complex& zref) -> Complex {
        auto f = DynamicalMap::unicritical_anti(2, c);
        Cycle fc = find_cycle(f, newton_period, zref, 1e-13);
        zref = fc.points[0];
        return fc.multiplier;
    };

    Complex c = c0;
    Complex zref(0, 0);  // the critical point sits on the cycle at the center
    const double h = 1e-7;
    const double lambda = 1e-9;
    for (int it = 0; it < 80; ++it) {
        Complex zt = zref;
        Complex r = f_mult(c, zt) - mu;
        zref = zt;
        if (std::abs(r) < 1e-11 * (1 + std::abs(mu))) break;
        Complex z1 = zref, z2 = zref, z3 = zref, z4 = zref;
        Complex rx = (f_mult(c + h, z1) - f_mult(c - h, z2)) / (2 * h);
        Complex ry = (f_mult(c + Complex(0, h), z3) - f_mult(c - Complex(0, h), z4)) / (2 * h);
        // damped least squares for the 2x2 real system (rank drops to one on
        // odd components, where both multipliers are forced real)
        double J00 = rx.real(), J01 = ry.real(), J10 = rx.imag(), J11 = ry.imag();
        double g0 = J00 * r.real() + J10 * r.imag();
        double g1 = J01 * r.real() + J11 * r.imag();
        double A00 = J00 * J00 + J10 * J10 + lambda;
        double A01 = J00 * J01 + J10 * J11;
        double A11 = J01 * J01 + J11 * J11 + lambda;
        double det = A00 * A11 - A01 * A01;
        if (std::abs(det) < 1e-18) fail(Status::NoConvergence, "degenerate multiplier matching");
        c -= Complex((g0 * A11 - A01 * g1) / det, (A00 * g1 - A01 * g0) / det);
    }
    Complex zt = zref;
    Complex r = f_mult(c, zt) - mu;
    if (!(std::abs(r) < 1e-8 * (1 + std::abs(mu))))
        fail(Status::NoConvergence, "multiplier matching did not converge");
    return {c, mu};
}

} // namespace mclab
