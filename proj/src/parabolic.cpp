#include "mclab/parabolic.hpp"

#include <cmath>

#include "mclab/parallel.hpp"

namespace mclab {

namespace {

Complex iterate_map(const DynamicalMap& map, Complex z, int times) {
    for (int i = 0; i < times; ++i) {
        z = eval(map, z);
        if (!(std::abs(z) < kOverflowGuard)) break;
    }
    return z;
}

Complex ipow_small(Complex z, int q) {
    Complex r(1, 0);
    for (int i = 0; i < q; ++i) r *= z;
    return r;
}

} // namespace

Complex germ_return(const ParabolicGerm& germ, Complex z) {
    return iterate_map(germ.map, z, germ.return_period);
}

Complex germ_anti_return(const ParabolicGerm& germ, Complex z) {
    if (!germ.anti()) fail(Status::NotAntiReturn, "germ has no anti-holomorphic return");
    return iterate_map(germ.map, z, germ.anti_period);
}

ParabolicGerm make_germ(const DynamicalMap& map, Complex z0, int return_period, int anti_period) {
    if (return_period < 1) fail(Status::InvalidArgument, "return_period must be >= 1");
    if (anti_period > 0 && !map.anti())
        fail(Status::InvalidArgument, "anti_period given for a holomorphic map");
    if (anti_period > 0 && 2 * anti_period != return_period)
        fail(Status::InvalidArgument, "anti-return must satisfy A∘A = R");

    ParabolicGerm germ;
    germ.map = map;
    germ.z0 = z0;
    germ.return_period = return_period;
    germ.anti_period = anti_period;

    const int M = 512;
    const int jmax = 8;
    double rho = 5e-3;
    auto coefficients = [&](Complex center) {
        std::vector<Complex> coef(size_t(jmax) + 1, Complex(0, 0));
        std::vector<Complex> vals(M);
        for (int s = 0; s < M; ++s) {
            double th = 2 * M_PI * s / M;
            vals[size_t(s)] = germ_return(germ, center + rho * Complex(std::cos(th), std::sin(th)));
        }
        for (int j = 0; j <= jmax; ++j) {
            Complex acc(0, 0);
            for (int s = 0; s < M; ++s) {
                double th = -2 * M_PI * j * s / M;
                acc += vals[size_t(s)] * Complex(std::cos(th), std::sin(th));
            }
            coef[size_t(j)] = acc / double(M) / std::pow(rho, j);
        }
        return coef;
    };

    // polish z0 onto the tangency point R'(z) = 1 using the local expansion
    std::vector<Complex> coef = coefficients(germ.z0);
    for (int pass = 0; pass < 3; ++pass) {
        if (std::abs(coef[2]) < 1e-5) break;  // multi-petal germ: keep the solver's point
        Complex shift = (Complex(1, 0) - coef[1]) / (2.0 * coef[2]);
        if (!(std::abs(shift) < rho)) break;
        germ.z0 += shift;
        coef = coefficients(germ.z0);
        if (std::abs(coef[1] - Complex(1, 0)) < 1e-12) break;
    }

    if (!(std::abs(coef[1] - Complex(1, 0)) < 1e-6))
        fail(Status::PrecisionLoss, "return-map derivative at z0 is not 1");

    int q = 0;
    for (int j = 2; j <= jmax; ++j) {
        if (std::abs(coef[size_t(j)]) > 1e-5) {
            q = j - 1;
            break;
        }
    }
    if (q == 0) fail(Status::PrecisionLoss, "no nonlinear term detected in the return germ");
    germ.petals = q;
    germ.expansion.assign(coef.begin(), coef.begin() + std::min(jmax, q + 3) + 1);
    return germ;
}

namespace {

struct UChart {
    int q = 1;
    Complex lead;  // q * a_{q+1}
    Complex z0;
    // q = 1 asymptotics; for q > 1 the log coefficient is fitted per orbit
    Complex B{};
    Complex D{};
    bool have_asymptotics = false;
};

UChart u_chart(const ParabolicGerm& germ) {
    UChart ch;
    ch.q = germ.petals;
    ch.z0 = germ.z0;
    Complex aq1 = germ.expansion[size_t(ch.q) + 1];
    ch.lead = double(ch.q) * aq1;
    if (ch.q == 1 && germ.expansion.size() >= 5) {
        Complex a2 = germ.expansion[2], a3 = germ.expansion[3], a4 = germ.expansion[4];
        Complex r2 = a3 / (a2 * a2);
        Complex r3 = a4 / (a2 * a2 * a2);
        Complex A = Complex(1, 0) - r2;
        Complex A2 = Complex(1, 0) - 2.0 * r2 + r3;
        ch.B = -A;
        ch.D = A2 - A * A + 0.5 * A;
        ch.have_asymptotics = true;
    }
    return ch;
}

inline Complex to_u(const UChart& ch, Complex z) {
    return -1.0 / (ch.lead * ipow_small(z - ch.z0, ch.q));
}

} // namespace

Complex attracting_fatou(const ParabolicGerm& germ, Complex z) {
    UChart ch = u_chart(germ);
    const double W = germ.w_stop;
    Complex u = to_u(ch, z);
    int64_t steps = 0;
    // ride the orbit into the right half of the u-chart
    while (!(u.real() >= W)) {
        z = germ_return(germ, z);
        ++steps;
        if (!(std::abs(z) <= kDefaultEscapeRadius) || steps > germ.max_orbit)
            fail(Status::NotInPetal, "orbit did not settle into the attracting petal");
        u = to_u(ch, z);
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
            fail(Status::NotInPetal, "u-chart degenerate along the orbit");
    }
    if (ch.have_asymptotics)
        return u + ch.B * std::log(u) + ch.D / u - Complex(double(steps), 0) + germ.att_offset;

    // multi-petal germs: fit the log coefficient along this orbit
    Complex u1 = u;
    int64_t t1 = steps;
    Complex zz = z;
    while (!(u.real() >= 2 * W)) {
        zz = germ_return(germ, zz);
        ++steps;
        if (!(std::abs(zz) <= kDefaultEscapeRadius) || steps > germ.max_orbit)
            fail(Status::NotInPetal, "orbit left the petal during the log fit");
        u = to_u(ch, zz);
    }
    Complex bhat = (u - u1 - Complex(double(steps - t1), 0)) / (std::log(u) - std::log(u1));
    return u1 + bhat * std::log(u1) - Complex(double(t1), 0) + germ.att_offset;
}

Complex repelling_fatou_inverse(const ParabolicGerm& germ, Complex zeta) {
    UChart ch = u_chart(germ);
    if (!ch.have_asymptotics)
        fail(Status::NotSimplePetal, "repelling coordinate implemented for single-petal germs");
    zeta -= germ.rep_offset;
    const double W = germ.w_stop;
    int64_t m = 0;
    if (zeta.real() > -W) m = int64_t(std::ceil(zeta.real() + W));
    Complex w = zeta - Complex(double(m), 0);
    // invert u + B log(-u) + D/u = w
    Complex u = w;
    for (int it = 0; it < 12; ++it) u = w - ch.B * std::log(-u) - ch.D / u;
    Complex z = ch.z0 - 1.0 / (ch.lead * u);
    for (int64_t i = 0; i < m; ++i) {
        z = germ_return(germ, z);
        if (!(std::abs(z) < kOverflowGuard))
            fail(Status::PrecisionLoss, "repelling extension overflowed");
    }
    return z;
}

Complex lifted_horn(const ParabolicGerm& germ, Complex zeta) {
    Complex z = repelling_fatou_inverse(germ, zeta);
    try {
        return attracting_fatou(germ, z);
    } catch (const Error& e) {
        if (e.status() == Status::NotInPetal)
            fail(Status::OutsideDomain, "horn map argument outside D0");
        throw;
    }
}

namespace detail {

std::pair<Complex, Complex> anti_equator_offsets(const ParabolicGerm& germ) {
    if (!germ.anti()) fail(Status::NotAntiReturn, "equator normalization needs an anti germ");
    if (germ.petals != 1) fail(Status::NotSimplePetal, "equator normalization needs a single petal");
    ParabolicGerm raw = germ;
    raw.att_offset = Complex(0, 0);
    raw.rep_offset = Complex(0, 0);

    Complex v = germ_anti_return(raw, raw.map.critical_point());

    // attracting side: psi(A z) = conj(psi z) + s0 with Re s0 = 1/2 (mod 1)
    Complex z = v;
    for (int i = 0; i < 3; ++i) z = germ_return(raw, z);
    Complex s_acc(0, 0);
    int samples = 0;
    for (int j = 0; j < 8; ++j) {
        Complex pz = attracting_fatou(raw, z);
        Complex paz = attracting_fatou(raw, germ_anti_return(raw, z));
        s_acc += paz - std::conj(pz);
        ++samples;
        z = germ_return(raw, z);
    }
    Complex s0 = s_acc / double(samples);
    double sigma = s0.imag();
    Complex att_off(0, -sigma / 2);
    double re_v = (attracting_fatou(raw, v) + att_off).real();
    att_off -= Complex(re_v, 0);

    // repelling side: same functional equation through the extended inverse
    const double W = raw.w_stop;
    Complex rep_acc(0, 0);
    int rep_samples = 0;
    for (int j = 0; j < 6; ++j) {
        Complex wj(-W - 7.0 - 1.37 * j, 0.21);
        Complex zj = repelling_fatou_inverse(raw, wj);
        Complex azj = germ_anti_return(raw, zj);
        // solve zeta_rep(w') = A(z_j) near conj(w_j) + 1/2
        Complex wp = std::conj(wj) + Complex(0.5, 0);
        const double h = 1e-6;
        for (int it = 0; it < 30; ++it) {
            Complex F = repelling_fatou_inverse(raw, wp) - azj;
            if (std::abs(F) < 1e-13) break;
            Complex dF = (repelling_fatou_inverse(raw, wp + h) - repelling_fatou_inverse(raw, wp - h)) /
                         (2 * h);
            if (!(std::abs(dF) > 0)) fail(Status::PrecisionLoss, "repelling inversion degenerate");
            wp -= F / dF;
        }
        rep_acc += wp - std::conj(wj);
        ++rep_samples;
    }
    Complex s_rep = rep_acc / double(rep_samples);
    Complex rep_off(0, -s_rep.imag() / 2);
    return {att_off, rep_off};
}

} // namespace detail

double critical_ecalle_height(const ParabolicGerm& germ) {
    if (!germ.anti()) fail(Status::NotAntiReturn, "Ecalle height needs an anti-holomorphic return");
    if (germ.petals != 1) fail(Status::NotSimplePetal, "Ecalle height needs a single petal");
    ParabolicGerm raw = germ;
    raw.att_offset = Complex(0, 0);
    raw.rep_offset = Complex(0, 0);
    Complex v = germ_anti_return(raw, raw.map.critical_point());

    Complex z = v;
    for (int i = 0; i < 3; ++i) z = germ_return(raw, z);
    Complex s_acc(0, 0);
    int samples = 0;
    for (int j = 0; j < 8; ++j) {
        Complex pz = attracting_fatou(raw, z);
        Complex paz = attracting_fatou(raw, germ_anti_return(raw, z));
        s_acc += paz - std::conj(pz);
        ++samples;
        z = germ_return(raw, z);
    }
    double sigma = (s_acc / double(samples)).imag();
    return attracting_fatou(raw, v).imag() - sigma / 2;
}

GermFingerprint germ_fingerprint(const ParabolicGerm& germ,
                                 const std::vector<Complex>& critical_values) {
    ParabolicGerm g = germ;
    GermFingerprint fp;
    if (germ.anti()) {
        auto [att, rep] = detail::anti_equator_offsets(germ);
        g.att_offset = att;
        g.rep_offset = rep;
        fp.ecalle_height = critical_ecalle_height(germ);
    }

    const double x0 = 0.37;
    fp.eta_upper = lifted_horn(g, Complex(x0, 40.0)) - Complex(x0, 40.0);
    fp.eta_lower = lifted_horn(g, Complex(x0, -40.0)) - Complex(x0, -40.0);

    // singular values: cylinder projections of the critical values that
    // land in the basin, deduplicated in the cylinder metric
    std::vector<Complex> psis;
    for (Complex v : critical_values) {
        try {
            psis.push_back(attracting_fatou(g, v));
        } catch (const Error& e) {
            if (e.status() != Status::NotInPetal) throw;
        }
    }
    std::vector<Complex> kept;
    for (Complex psi : psis) {
        bool dup = false;
        for (Complex seen : kept) {
            Complex d = psi - seen;
            double fr = d.real() - std::round(d.real());
            if (std::abs(fr) < 1e-8 && std::abs(d.imag()) < 1e-8) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(psi);
    }
    const Complex two_pi_i(0, 2 * M_PI);
    for (Complex psi : kept) fp.singular_values.push_back(std::exp(two_pi_i * psi));
    fp.singular_count = int(fp.singular_values.size());
    return fp;
}

double fingerprint_distance_conjugate(const GermFingerprint& fp1, const GermFingerprint& fp2) {
    double d = 0;
    d = std::max(d, std::abs(fp1.eta_upper - std::conj(fp2.eta_lower)));
    d = std::max(d, std::abs(fp1.eta_lower - std::conj(fp2.eta_upper)));
    if (fp1.singular_count != fp2.singular_count) return 1e9;
    // conjugation swaps the cylinder ends, acting on projected values as
    // s -> 1/conj(s); match against the relabeled other set greedily
    std::vector<Complex> other;
    for (Complex s : fp2.singular_values) other.push_back(1.0 / std::conj(s));
    std::vector<bool> used(other.size(), false);
    for (Complex s : fp1.singular_values) {
        double best = 1e18;
        int bi = -1;
        for (size_t i = 0; i < other.size(); ++i) {
            if (used[i]) continue;
            double dist = std::abs(s - other[i]);
            if (dist < best) {
                best = dist;
                bi = int(i);
            }
        }
        if (bi < 0) return 1e9;
        used[size_t(bi)] = true;
        d = std::max(d, best);
    }
    if (fp1.ecalle_height && fp2.ecalle_height)
        d = std::max(d, std::abs(*fp1.ecalle_height + *fp2.ecalle_height));
    return d;
}

double check_real_symmetry(const ParabolicGerm& germ, const std::vector<Complex>& sample_ws) {
    ParabolicGerm g = germ;
    if (germ.anti()) {
        auto [att, rep] = detail::anti_equator_offsets(germ);
        g.att_offset = att;
        g.rep_offset = rep;
    }
    const Complex two_pi_i(0, 2 * M_PI);
    double worst = 0;
    for (Complex w : sample_ws) {
        if (!(std::abs(w) > 0)) fail(Status::InvalidArgument, "sample w must be nonzero");
        Complex zeta_up = std::log(w) / two_pi_i;
        Complex h_up = std::exp(two_pi_i * lifted_horn(g, zeta_up));
        Complex w_dn = 1.0 / std::conj(w);
        Complex zeta_dn = std::log(w_dn) / two_pi_i;
        Complex h_dn = std::exp(two_pi_i * lifted_horn(g, zeta_dn));
        worst = std::max(worst, std::abs(1.0 / std::conj(h_dn) - h_up));
    }
    return worst;
}

Raster render_chessboard(const ParabolicGerm& germ, const Window& window, int width_px,
                         int height_px) {
    Raster raster(window, width_px, height_px);
    parallel_for(0, height_px, [&](int64_t py) {
        for (int px = 0; px < width_px; ++px) {
            Complex z = window.pixel_center(px, int(py), width_px, height_px);
            CellClass cell = CellClass::unknown();
            try {
                Complex psi = attracting_fatou(germ, z);
                int tile = (psi.imag() >= 0 ? 0 : 1) +
                           2 * int(((int64_t(std::floor(psi.real())) % 2) + 2) % 2);
                cell = CellClass::interior(1 + tile);
            } catch (const Error&) {
            }
            raster.at(px, int(py)) = cell;
        }
    });
    return raster;
}

ParabolicGerm cauliflower_germ() {
    auto map = DynamicalMap::unicritical_holo(2, Complex(0.25, 0));
    ParabolicGerm germ = make_germ(map, Complex(0.5, 0), 1, 0);
    germ.att_offset = -attracting_fatou(germ, Complex(0, 0));
    return germ;
}

namespace {

// return map of the family: map itself, or map∘map for anti families
struct FamilyReturn {
    FamilySpec fam;

    Complex apply(Complex param, Complex z, int times) const {
        DynamicalMap m = fam.map_at(param);
        int reps = fam.family == Family::Multicorn ? 2 * times : times;
        return iterate_map(m, z, reps);
    }
    Complex deriv_chain(Complex param, Complex z, int times) const {
        DynamicalMap m = fam.map_at(param);
        Complex d(1, 0);
        for (int i = 0; i < times; ++i) {
            if (fam.family == Family::Multicorn) {
                d *= second_iterate_derivative(m, z);
                z = eval(m, eval(m, z));
            } else {
                d *= derivative(m, z);
                z = eval(m, z);
            }
        }
        return d;
    }
};

int root_of_unity_order(Complex lambda, int max_order = 64) {
    Complex w(1, 0);
    for (int q = 1; q <= max_order; ++q) {
        w *= lambda;
        if (std::abs(w - Complex(1, 0)) < 1e-8) return q;
    }
    return 0;
}

} // namespace

ParabolicParameter find_parabolic_parameter(const FamilySpec& family, int cycle_period,
                                            Complex lambda, Complex param_seed, Complex z_seed) {
    if (cycle_period < 1) fail(Status::InvalidArgument, "cycle_period must be >= 1");
    int q = root_of_unity_order(lambda);
    if (q == 0) fail(Status::InvalidArgument, "multiplier must be a root of unity");

    FamilyReturn fr{family};
    // unknowns: param (2 real), z (2 real)
    double x[4] = {param_seed.real(), param_seed.imag(), z_seed.real(), z_seed.imag()};
    if (family.family == Family::RealCubic && x[0] < 0) x[0] = -x[0];

    auto residual = [&](const double* v, double* out) {
        Complex param(v[0], v[1]);
        Complex z(v[2], v[3]);
        Complex F1 = fr.apply(param, z, cycle_period) - z;
        Complex F2 = fr.deriv_chain(param, z, cycle_period) - lambda;
        out[0] = F1.real();
        out[1] = F1.imag();
        out[2] = F2.real();
        out[3] = F2.imag();
    };

    double f[4];
    residual(x, f);
    double fn2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3];
    double damp = 1e-8;
    const double h = 1e-7;
    for (int it = 0; it < 120; ++it) {
        if (fn2 < 1e-16) break;
        double J[4][4];
        for (int k = 0; k < 4; ++k) {
            double xp[4], xm[4], fp[4], fm[4];
            for (int t = 0; t < 4; ++t) xp[t] = xm[t] = x[t];
            xp[k] += h;
            xm[k] -= h;
            residual(xp, fp);
            residual(xm, fm);
            for (int r = 0; r < 4; ++r) J[r][k] = (fp[r] - fm[r]) / (2 * h);
        }
        // damped normal equations
        double A[4][5] = {};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c)
                for (int k = 0; k < 4; ++k) A[r][c] += J[k][r] * J[k][c];
            A[r][r] += damp;
            for (int k = 0; k < 4; ++k) A[r][4] += J[k][r] * f[k];
        }
        bool singular = false;
        for (int col = 0; col < 4 && !singular; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-20) {
                singular = true;
                break;
            }
            for (int cc = 0; cc <= 4; ++cc) std::swap(A[piv][cc], A[col][cc]);
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                double fct = A[r][col] / A[col][col];
                for (int cc = col; cc <= 4; ++cc) A[r][cc] -= fct * A[col][cc];
            }
        }
        if (singular) fail(Status::DegenerateJacobian, "parabolic solver Jacobian degenerate");
        double trial[4];
        for (int r = 0; r < 4; ++r) trial[r] = x[r] - A[r][4] / A[r][r];
        if (family.family == Family::RealCubic && trial[0] < 0) trial[0] = -trial[0];
        double ft[4];
        residual(trial, ft);
        double ftn2 = ft[0] * ft[0] + ft[1] * ft[1] + ft[2] * ft[2] + ft[3] * ft[3];
        if (ftn2 < fn2) {
            for (int r = 0; r < 4; ++r) {
                x[r] = trial[r];
                f[r] = ft[r];
            }
            fn2 = ftn2;
            damp = std::max(damp / 3, 1e-12);
        } else {
            damp *= 10;
            if (damp > 1e8) break;
        }
    }
    // Alternating polish: the cycle equation is quadratically degenerate at
    // the tangency, so pin z by the multiplier equation (a simple root) and
    // Gauss-Newton the cycle residual over the parameter alone.
    {
        auto solve_z = [&](Complex param, Complex z) {
            const double hz = 1e-6;
            for (int it = 0; it < 40; ++it) {
                Complex W = fr.deriv_chain(param, z, cycle_period) - lambda;
                if (std::abs(W) < 1e-14) break;
                Complex dW = (fr.deriv_chain(param, z + hz, cycle_period) -
                              fr.deriv_chain(param, z - hz, cycle_period)) /
                             (2 * hz);
                if (!(std::abs(dW) > 1e-12)) break;
                z -= W / dW;
            }
            return z;
        };
        Complex param(x[0], x[1]);
        Complex z(x[2], x[3]);
        double pd = 1e-10;
        for (int round = 0; round < 30; ++round) {
            z = solve_z(param, z);
            Complex F1 = fr.apply(param, z, cycle_period) - z;
            if (std::abs(F1) < 1e-13) break;
            // 2-real Gauss-Newton step in the parameter
            Complex zp = z, zm = z;
            zp = solve_z(param + h, zp);
            zm = solve_z(param - h, zm);
            Complex Gx = ((fr.apply(param + h, zp, cycle_period) - zp) -
                          (fr.apply(param - h, zm, cycle_period) - zm)) /
                         (2 * h);
            zp = solve_z(param + Complex(0, h), z);
            zm = solve_z(param - Complex(0, h), z);
            Complex Gy = ((fr.apply(param + Complex(0, h), zp, cycle_period) - zp) -
                          (fr.apply(param - Complex(0, h), zm, cycle_period) - zm)) /
                         (2 * h);
            double J00 = Gx.real(), J01 = Gy.real(), J10 = Gx.imag(), J11 = Gy.imag();
            double g0 = J00 * F1.real() + J10 * F1.imag();
            double g1 = J01 * F1.real() + J11 * F1.imag();
            double A00 = J00 * J00 + J10 * J10 + pd;
            double A01 = J00 * J01 + J10 * J11;
            double A11 = J01 * J01 + J11 * J11 + pd;
            double det = A00 * A11 - A01 * A01;
            if (!(std::abs(det) > 1e-30)) break;
            param -= Complex((g0 * A11 - A01 * g1) / det, (A00 * g1 - A01 * g0) / det);
            if (family.family == Family::RealCubic && param.real() < 0)
                param = Complex(-param.real(), param.imag());
        }
        z = solve_z(param, z);
        x[0] = param.real();
        x[1] = param.imag();
        x[2] = z.real();
        x[3] = z.imag();
        residual(x, f);
        fn2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3];
    }
    if (!(fn2 < 1e-22)) fail(Status::NoConvergence, "parabolic system did not reach 1e-11");

    Complex param(x[0], x[1]);
    Complex zstar(x[2], x[3]);
    DynamicalMap map = family.map_at(param);

    // minimal-period check in return-map units
    for (int j = 1; j < cycle_period; ++j) {
        Complex w = fr.apply(param, zstar, j);
        if (std::abs(w - zstar) < 1e-7)
            fail(Status::WrongPeriod, "solution has a lower true period");
    }

    // characteristic point: the cycle point whose petal holds the critical value
    Complex v = family.family == Family::RealCubic ? eval(map, map.critical_point()) : param;
    Complex tail = v;
    for (int i = 0; i < 300 * cycle_period; ++i) tail = fr.apply(param, tail, 1);
    Complex zchar = zstar;
    double best = 1e18;
    Complex cyc = zstar;
    for (int i = 0; i < cycle_period; ++i) {
        double dist = std::abs(tail - cyc);
        if (dist < best) {
            best = dist;
            zchar = cyc;
        }
        cyc = fr.apply(param, cyc, 1);
    }

    int return_period = 0, anti_period = 0;
    if (family.family == Family::Multicorn) {
        // minimal period under the raw anti map
        Complex w = zchar;
        int jmin = 0;
        for (int j = 1; j <= 2 * cycle_period; ++j) {
            w = eval(map, w);
            if (std::abs(w - zchar) < 1e-7) {
                jmin = j;
                break;
            }
        }
        if (jmin == 0) fail(Status::NoConvergence, "could not identify the raw cycle period");
        if (jmin % 2 == 1) {
            anti_period = jmin;
            return_period = 2 * jmin * q;
        } else {
            return_period = jmin * q;
        }
    } else {
        return_period = cycle_period * q;
    }

    return ParabolicParameter{param, make_germ(map, zchar, return_period, anti_period)};
}

} // namespace mclab
