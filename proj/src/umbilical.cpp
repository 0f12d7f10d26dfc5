#include "mclab/umbilical.hpp"

#include <cmath>

namespace mclab {

namespace {

// Anti-return map of the arc system: f_c^k for the multicorn, ι∘g^m for
// the real cubic (packaged as AntiCubicReturn).
DynamicalMap arc_map(const FamilySpec& fam, Complex param, int anti_period) {
    switch (fam.family) {
        case Family::Multicorn: return DynamicalMap::unicritical_anti(fam.degree, param);
        case Family::RealCubic:
            return DynamicalMap::anti_cubic_return(std::abs(param.real()), param.imag(), anti_period);
        case Family::Multibrot: break;
    }
    fail(Status::InvalidArgument, "arcs require an anti-holomorphic family");
}

// applications of the raw map making up one anti-return
int arc_reps(const FamilySpec& fam, int anti_period) {
    return fam.family == Family::Multicorn ? anti_period : 1;
}

struct ArcSystem {
    FamilySpec fam;
    int anti_period;

    // A(z) and the anti-derivative coefficient nu (e -> nu * conj(e))
    std::pair<Complex, Complex> anti_with_deriv(Complex param, Complex z) const {
        DynamicalMap m = arc_map(fam, param, anti_period);
        int reps = arc_reps(fam, anti_period);
        Complex nu(1, 0);
        for (int i = 0; i < reps; ++i) {
            nu = detail::hol_part_derivative(m, std::conj(z)) * std::conj(nu);
            z = eval(m, z);
        }
        return {z, nu};
    }

    // F: R^4 -> R^3: cycle equation (2) and |dA|^2 - 1 (1)
    void residual(const double* x, double* out) const {
        Complex param(x[0], x[1]);
        Complex z(x[2], x[3]);
        auto [az, nu] = anti_with_deriv(param, z);
        Complex F1 = az - z;
        out[0] = F1.real();
        out[1] = F1.imag();
        out[2] = std::norm(nu) - 1.0;
    }

    void jacobian(const double* x, double J[3][4]) const {
        const double h = 1e-7;
        for (int k = 0; k < 4; ++k) {
            double xp[4], xm[4], fp[3], fm[3];
            for (int t = 0; t < 4; ++t) xp[t] = xm[t] = x[t];
            xp[k] += h;
            xm[k] -= h;
            residual(xp, fp);
            residual(xm, fm);
            for (int r = 0; r < 3; ++r) J[r][k] = (fp[r] - fm[r]) / (2 * h);
        }
    }

    // damped Gauss-Newton onto the arc (optionally with a tangent constraint)
    bool correct(double* x, const double* tangent) const {
        double damp = 1e-9;
        double f[3];
        residual(x, f);
        double fn2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
        for (int it = 0; it < 60; ++it) {
            if (fn2 < 1e-24) return true;
            double J[3][4];
            jacobian(x, J);
            int rows = tangent ? 4 : 3;
            double Jf[4][4], rhs[4];
            double F[4] = {f[0], f[1], f[2], 0};
            double Jrow4[4] = {0, 0, 0, 0};
            if (tangent)
                for (int k = 0; k < 4; ++k) Jrow4[k] = tangent[k];
            // normal equations over the (up to) 4 rows
            double A[4][5] = {};
            (void)Jf;
            (void)rhs;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    for (int k = 0; k < rows; ++k) {
                        double jkr = k < 3 ? J[k][r] : Jrow4[r];
                        double jkc = k < 3 ? J[k][c] : Jrow4[c];
                        A[r][c] += jkr * jkc;
                    }
                }
                A[r][r] += damp;
                for (int k = 0; k < rows; ++k) {
                    double jkr = k < 3 ? J[k][r] : Jrow4[r];
                    A[r][4] += jkr * F[k];
                }
            }
            for (int col = 0; col < 4; ++col) {
                int piv = col;
                for (int r = col + 1; r < 4; ++r)
                    if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
                if (std::abs(A[piv][col]) < 1e-22) return false;
                for (int cc = 0; cc <= 4; ++cc) std::swap(A[piv][cc], A[col][cc]);
                for (int r = 0; r < 4; ++r) {
                    if (r == col) continue;
                    double fct = A[r][col] / A[col][col];
                    for (int cc = col; cc <= 4; ++cc) A[r][cc] -= fct * A[col][cc];
                }
            }
            double trial[4];
            for (int r = 0; r < 4; ++r) trial[r] = x[r] - A[r][4] / A[r][r];
            if (fam.family == Family::RealCubic && trial[0] < 0) trial[0] = -trial[0];
            double ft[3];
            residual(trial, ft);
            double ftn2 = ft[0] * ft[0] + ft[1] * ft[1] + ft[2] * ft[2];
            if (ftn2 < fn2) {
                for (int r = 0; r < 4; ++r) x[r] = trial[r];
                for (int r = 0; r < 3; ++r) f[r] = ft[r];
                fn2 = ftn2;
                damp = std::max(damp / 3, 1e-12);
            } else {
                damp *= 10;
                if (damp > 1e6) break;
            }
        }
        return fn2 < 1e-20;
    }

    // unit tangent of the arc at x (nullspace of the 3x4 Jacobian)
    void tangent_at(const double* x, double t_out[4], const double* prev) const {
        double J[3][4];
        jacobian(x, J);
        double t[4];
        for (int k = 0; k < 4; ++k) {
            double m[3][3];
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == k) continue;
                for (int r = 0; r < 3; ++r) m[r][cc] = J[r][c];
                ++cc;
            }
            double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            t[k] = (k % 2 == 0 ? det : -det);
        }
        double norm = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
        if (!(norm > 1e-14)) fail(Status::DegenerateJacobian, "arc tangent degenerate");
        for (int k = 0; k < 4; ++k) t[k] /= norm;
        if (prev) {
            double dot = 0;
            for (int k = 0; k < 4; ++k) dot += t[k] * prev[k];
            if (dot < 0)
                for (int k = 0; k < 4; ++k) t[k] = -t[k];
        }
        for (int k = 0; k < 4; ++k) t_out[k] = t[k];
    }
};

ParabolicGerm arc_germ(const FamilySpec& fam, int anti_period, Complex param, Complex z) {
    DynamicalMap m = arc_map(fam, param, anti_period);
    if (fam.family == Family::Multicorn)
        return make_germ(m, z, 2 * anti_period, anti_period);
    return make_germ(m, z, 2, 1);
}

} // namespace

ArcPoint find_arc_point(const FamilySpec& family, int anti_cycle_period, double target_height,
                        Complex param_seed, Complex z_seed) {
    if (family.family == Family::Multibrot)
        fail(Status::InvalidArgument, "arcs require an anti-holomorphic family");
    if (anti_cycle_period < 1 || anti_cycle_period % 2 == 0)
        fail(Status::InvalidArgument, "anti_cycle_period must be odd and positive");

    ArcSystem sys{family, anti_cycle_period};
    double x[4] = {param_seed.real(), param_seed.imag(), z_seed.real(), z_seed.imag()};
    if (!sys.correct(x, nullptr)) fail(Status::NoConvergence, "could not land on the parabolic arc");

    auto height_at = [&](const double* v, ParabolicGerm* germ_out) {
        ParabolicGerm germ = arc_germ(family, anti_cycle_period, Complex(v[0], v[1]), Complex(v[2], v[3]));
        if (germ.petals != 1) fail(Status::NotOnArc, "landed on a parabolic cusp (two petals)");
        double t = critical_ecalle_height(germ);
        if (germ_out) *germ_out = germ;
        return t;
    };

    ParabolicGerm germ;
    double t = height_at(x, &germ);

    // 1-D secant on the height along the arc
    double tang[4];
    sys.tangent_at(x, tang, nullptr);
    double ds = 1e-3;
    double x_prev[4];
    double t_prev = t;
    for (int it = 0; it < 80; ++it) {
        if (std::abs(t - target_height) < 1e-6) break;
        for (int k = 0; k < 4; ++k) x_prev[k] = x[k];
        t_prev = t;
        double trial[4];
        for (int k = 0; k < 4; ++k) trial[k] = x[k] + ds * tang[k];
        if (!sys.correct(trial, tang)) fail(Status::NoConvergence, "arc continuation step failed");
        double t_new = height_at(trial, &germ);
        double dt = t_new - t_prev;
        for (int k = 0; k < 4; ++k) x[k] = trial[k];
        t = t_new;
        sys.tangent_at(x, tang, tang);
        if (std::abs(dt) > 1e-12) {
            double want = (target_height - t) / dt * ds;
            // clamp the secant prediction to stay well-posed
            double cap = 0.05;
            if (want > cap) want = cap;
            if (want < -cap) want = -cap;
            ds = want;
            if (std::abs(ds) < 1e-9) ds = ds >= 0 ? 1e-9 : -1e-9;
        } else {
            ds *= 2;  // height insensitive here; push further
        }
        (void)x_prev;
    }
    if (!(std::abs(t - target_height) < 1e-4))
        fail(Status::NoConvergence, "height did not reach the target along the arc");

    // arcs crossing the symmetry axis: project the residual imaginary parts
    // away so downstream traces can follow hairline-thin real decorations
    if (std::abs(x[1]) < 1e-8 && std::abs(x[3]) < 1e-8) {
        double snapped[4] = {x[0], 0.0, x[2], 0.0};
        double f[3];
        sys.residual(snapped, f);
        if (f[0] * f[0] + f[1] * f[1] + f[2] * f[2] < 1e-18) {
            for (int k = 0; k < 4; ++k) x[k] = snapped[k];
            germ = arc_germ(family, anti_cycle_period, Complex(x[0], x[1]), Complex(x[2], x[3]));
            t = critical_ecalle_height(germ);
        }
    }

    ArcPoint out;
    out.params = Complex(x[0], x[1]);
    out.height = t;
    out.parabolic = germ;
    return out;
}

namespace {

// escape time of the critical orbit, or max_iter when it stays bounded
int escape_time(const FamilySpec& fam, Complex param, int max_iter) {
    if (fam.family == Family::RealCubic && param.real() < 0)
        param = Complex(-param.real(), param.imag());
    DynamicalMap map = fam.map_at(param);
    Complex z = map.critical_point();
    for (int i = 0; i < max_iter; ++i) {
        z = eval(map, z);
        if (!(std::abs(z) <= kDefaultEscapeRadius)) return i;
    }
    return max_iter;
}

bool in_locus(const FamilySpec& fam, Complex param, int max_iter) {
    return escape_time(fam, param, max_iter) == max_iter;
}

} // namespace

CordTrace trace_cord(const FamilySpec& family, const ArcPoint& target, Complex start, double step,
                     int max_steps, int max_iter, Complex axis) {
    if (!(step > 0)) fail(Status::InvalidArgument, "step must be positive");
    if (!(std::abs(start - target.params) > 4 * step))
        fail(Status::InvalidArgument, "start too close to the target");
    Complex u = axis;
    if (!(std::abs(u) > 0)) u = start - target.params;
    u /= std::abs(u);
    Complex n = u * Complex(0, 1);
    double span = ((start - target.params) / u).real();
    if (!(span > 4 * step)) fail(Status::InvalidArgument, "start not ahead of the target on the axis");

    double s_hi = std::min(span, (double(max_steps) + 2.0) * step);

    CordTrace trace;
    trace.target = target.params;
    trace.step = step;

    // distance from base to the locus boundary along direction dir*n,
    // bisected between the last bounded and first escaping sample
    auto boundary = [&](Complex base, double from, double dir) -> double {
        double t_in = from;
        if (!in_locus(family, base + (dir * t_in) * n, max_iter)) return -1;
        double t_out = t_in;
        double probe = std::max(step, t_in);
        for (int i = 0; i < 200; ++i) {
            t_out = t_in + probe;
            if (!in_locus(family, base + (dir * t_out) * n, max_iter)) break;
            t_in = t_out;
            probe *= 1.6;
            if (t_out > 1.0) return -1;  // no exterior within reach
        }
        if (in_locus(family, base + (dir * t_out) * n, max_iter)) return -1;
        for (int i = 0; i < 40; ++i) {
            double mid = 0.5 * (t_in + t_out);
            if (in_locus(family, base + (dir * mid) * n, max_iter))
                t_in = mid;
            else
                t_out = mid;
            if (t_out - t_in < 0.02 * step) break;
        }
        return 0.5 * (t_in + t_out);
    };

    // normal offset of the start in the axis frame
    double d_prev = ((start - target.params) / u).imag();

    for (double s = s_hi; s >= 2 * step; s -= step) {
        Complex base = target.params + s * u;
        // locate the spine near the previous offset: a bounded interval when
        // one exists, otherwise the escape-time ridge of the hairline
        double d_seed = d_prev;
        bool found = in_locus(family, base + d_seed * n, max_iter);
        if (!found) {
            for (int k = 1; k <= 96 && !found; ++k) {
                double off = step * 0.25 * k;
                if (in_locus(family, base + (d_seed + off) * n, max_iter)) {
                    d_seed += off;
                    found = true;
                } else if (in_locus(family, base + (d_seed - off) * n, max_iter)) {
                    d_seed -= off;
                    found = true;
                }
            }
        }
        double d_new;
        if (found) {
            double up = boundary(base + d_seed * n, 0.0, +1.0);
            double dn = boundary(base + d_seed * n, 0.0, -1.0);
            if (up < 0 || dn < 0) fail(Status::LostSpine, "bisection bracket failed");
            d_new = d_seed + 0.5 * (up - dn);
        } else {
            // ridge tracking: the cord hairline shows as a gentle logarithmic
            // peak of the escape time; follow its argmax, expanding the
            // window once when the peak sits on the edge
            double center_off = d_prev;
            double half = 12 * step;
            double spacing = step * 0.5;
            int best_t = -1;
            double best_off = center_off;
            for (int round = 0; round < 4; ++round) {
                for (int attempt = 0; attempt < 3; ++attempt) {
                    int K = int(std::ceil(half / spacing));
                    best_t = -1;
                    for (int k = -K; k <= K; ++k) {
                        double off = center_off + k * spacing;
                        int t = escape_time(family, base + off * n, max_iter);
                        if (t > best_t ||
                            (t == best_t && std::abs(off - center_off) < std::abs(best_off - center_off))) {
                            best_t = t;
                            best_off = off;
                        }
                    }
                    bool at_edge = std::abs(std::abs(best_off - center_off) - half) < spacing * 0.6;
                    if (!at_edge || round > 0) break;
                    center_off = best_off;
                    half *= 2;  // peak on the window edge: widen and rescan
                }
                center_off = best_off;
                half = 2 * spacing;
                spacing /= 8;
            }
            if (best_t <= 0) fail(Status::LostSpine, "escape-time ridge vanished");
            d_new = best_off;
        }
        trace.polyline.push_back(base + d_new * n);
        trace.displacements.push_back(d_new);
        d_prev = d_new;
    }

    return trace;
}

Complex arc_outward_normal(const FamilySpec& family, const ArcPoint& point,
                           Complex interior_reference) {
    int anti_period = point.parabolic.anti_period;
    if (family.family == Family::RealCubic) anti_period = point.parabolic.map.n;
    ArcSystem sys{family, anti_period};
    double x[4] = {point.params.real(), point.params.imag(), point.parabolic.z0.real(),
                   point.parabolic.z0.imag()};
    double t[4];
    sys.tangent_at(x, t, nullptr);
    Complex tangent(t[0], t[1]);
    if (!(std::abs(tangent) > 1e-12)) fail(Status::DegenerateJacobian, "arc tangent vanishes");
    Complex normal = tangent / std::abs(tangent) * Complex(0, 1);
    if (std::real((point.params - interior_reference) * std::conj(normal)) < 0) normal = -normal;
    return normal;
}

int wiggle_count(const CordTrace& trace, double threshold) {
    int count = 0;
    double prev = 0;
    bool have = false;
    for (double d : trace.displacements) {
        if (std::abs(d) < threshold) continue;
        if (have && ((d > 0) != (prev > 0))) ++count;
        prev = d;
        have = true;
    }
    return count;
}

} // namespace mclab
