#include "mclab/curves.hpp"

#include <cmath>
#include <fstream>

namespace mclab {

const char* curve_name(CurveId id) {
    switch (id) {
        case CurveId::Per1_minus1: return "per1-1";
        case CurveId::Per2_1: return "per2-1";
    }
    return "?";
}

double phi1(double a) {
    double s = 3 * a * a;
    return -4 * (s - 1) * (s + 2) * (s + 2);
}

bool in_H1(double a, double b) {
    if (a < 0) fail(Status::InvalidArgument, "a must be >= 0");
    const double third = 1.0 / std::sqrt(3.0);
    return a < third && 27 * b * b < phi1(a);
}

CurvePoint per1_minus1_point(double a) {
    if (a < 0) fail(Status::InvalidArgument, "a must be >= 0");
    double v = phi1(a);
    if (v < 0 && v > -1e-12) v = 0;  // roundoff at the a = 1/sqrt(3) endpoint
    if (v < 0) fail(Status::OutOfRange, "Phi_1(a) < 0: no real b on Per_1(-1)");
    return CurvePoint{a, std::sqrt(v / 27.0), CurveId::Per1_minus1};
}

std::pair<double, double> bitransitive_center() {
    const double a0 = 0.7071067811865476;
    auto g = DynamicalMap::real_cubic(a0, 0.0);
    Complex residual = eval(g, Complex(0, a0)) + Complex(0, a0);
    if (!(std::abs(residual) < 1e-12))
        fail(Status::PrecisionLoss, "bitransitive center residual above 1e-12");
    return {a0, 0.0};
}

namespace {

// g, g^2, (g^2 - z)/(g - z) and d/dz g^2 - 1 over Z[A, b], A = a^2.
struct CubicSymbols {
    ZPoly g, g2, phi2, q;
};

CubicSymbols build_symbols() {
    BivarPoly A = BivarPoly::var_A();
    BivarPoly b = BivarPoly::var_b();
    BivarPoly one(Rational(1));
    BivarPoly zero;

    ZPoly g = {b, -(A * Rational(3)), zero, -one};                  // -z^3 - 3A z + b
    ZPoly w3 = zpoly_mul(zpoly_mul(g, g), g);
    ZPoly g2(w3.size());
    for (size_t k = 0; k < w3.size(); ++k) g2[k] = -w3[k];
    for (size_t k = 0; k < g.size(); ++k) g2[k] = g2[k] - g[k] * (A * Rational(3));
    g2[0] = g2[0] + b;

    ZPoly z = {zero, one};
    ZPoly phi2 = zpoly_divide_exact(zpoly_sub(g2, z), zpoly_sub(g, z));
    ZPoly q = zpoly_derivative(g2);
    q[0] = q[0] - one;
    return {std::move(g), std::move(g2), std::move(phi2), std::move(q)};
}

BivarPoly per1_minus1_poly() {
    // 4(3A - 1)(3A + 2)^2 + 27 b^2
    BivarPoly A = BivarPoly::var_A();
    BivarPoly b = BivarPoly::var_b();
    BivarPoly t1 = A * Rational(3) - BivarPoly(Rational(1));
    BivarPoly t2 = A * Rational(3) + BivarPoly(Rational(2));
    return t1 * t2 * t2 * Rational(4) + b * b * Rational(27);
}

} // namespace

const Per2Curve& per2_1_polynomial() {
    static Per2Curve curve = [] {
        CubicSymbols sym = build_symbols();
        BivarPoly res = resultant_z(sym.phi2, sym.q);
        // Res(phi2, q) vanishes identically on Per_1(-1): the multiplier -1
        // fixed point is a root of phi2 with (g^2)' = 1. Strip that factor.
        BivarPoly e = per1_minus1_poly();
        BivarPoly quotient;
        int stripped = 0;
        while (res.try_divide_exact(e, &quotient)) {
            res = quotient;
            ++stripped;
        }
        // Both points of a tangent 2-cycle carry the same multiplier, so the
        // resultant is the square of the classical Per_2(1) polynomial;
        // return the square root.
        BivarPoly root;
        if (bivar_sqrt(res, &root)) res = std::move(root);
        res.normalize_content(Rational(1, 2), Rational(0));
        Per2Curve c;
        c.poly_ = std::move(res);
        c.stripped_ = stripped;
        return c;
    }();
    return curve;
}

double Per2Curve::eval(double a, double b) const { return poly_.eval_double(a * a, b); }

double Per2Curve::scaled_residual(double a, double b) const {
    double v = poly_.eval_double(a * a, b);
    auto [dA, db] = poly_.gradient_double(a * a, b);
    double da = dA * 2 * a;  // chain rule through A = a^2
    double grad = std::hypot(da, db);
    return std::abs(v) / (1.0 + grad);
}

Rational Per2Curve::eval_exact(const Rational& a_squared, const Rational& b) const {
    return poly_.eval(a_squared, b);
}

int Per2Curve::deg_A() const { return poly_.deg_A(); }
int Per2Curve::deg_b() const { return poly_.deg_b(); }

std::vector<CurvePoint> sample_per1_minus1(int n) {
    if (n < 1) fail(Status::InvalidArgument, "need n >= 1");
    std::vector<CurvePoint> pts;
    pts.reserve(size_t(n));
    const double third = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < n; ++i) {
        double a = third * (n == 1 ? 0.0 : double(i) / (n - 1));
        pts.push_back(per1_minus1_point(a));
    }
    return pts;
}

namespace {

// Conjugate-pair parabolic 2-cycle equations: g(z) = conj(z), |g'(z)|^2 = 1.
void per2_system(const double x[4], double out[3]) {
    double a = x[0], b = x[1];
    Complex z(x[2], x[3]);
    auto g = DynamicalMap::real_cubic(std::abs(a), b);
    Complex r = eval(g, z) - std::conj(z);
    Complex d = -3.0 * (z * z + a * a);
    out[0] = r.real();
    out[1] = r.imag();
    out[2] = std::norm(d) - 1.0;
}

bool newton_correct(double x[4], const double tangent[4]) {
    // solve {per2_system = 0, tangent . (x - x0) = 0}
    double x0[4] = {x[0], x[1], x[2], x[3]};
    for (int it = 0; it < 40; ++it) {
        double f[4];
        per2_system(x, f);
        f[3] = 0;
        for (int k = 0; k < 4; ++k) f[3] += tangent[k] * (x[k] - x0[k]);
        double n2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
        if (n2 < 1e-26) return true;
        double J[4][4];
        const double h = 1e-7;
        for (int k = 0; k < 4; ++k) {
            double xp[4], xm[4];
            for (int t = 0; t < 4; ++t) xp[t] = xm[t] = x[t];
            xp[k] += h;
            xm[k] -= h;
            double fp[3], fm[3];
            per2_system(xp, fp);
            per2_system(xm, fm);
            for (int r = 0; r < 3; ++r) J[r][k] = (fp[r] - fm[r]) / (2 * h);
            J[3][k] = tangent[k];
        }
        // gaussian solve J s = f
        double s[4];
        {
            double M[4][5];
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) M[r][c] = J[r][c];
                M[r][4] = f[r];
            }
            for (int col = 0; col < 4; ++col) {
                int piv = col;
                for (int r = col + 1; r < 4; ++r)
                    if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
                if (std::abs(M[piv][col]) < 1e-14) return false;
                for (int c = 0; c <= 4; ++c) std::swap(M[piv][c], M[col][c]);
                for (int r = 0; r < 4; ++r) {
                    if (r == col) continue;
                    double fct = M[r][col] / M[col][col];
                    for (int c = col; c <= 4; ++c) M[r][c] -= fct * M[col][c];
                }
            }
            for (int r = 0; r < 4; ++r) s[r] = M[r][4] / M[r][r];
        }
        for (int k = 0; k < 4; ++k) x[k] -= s[k];
    }
    double f[3];
    per2_system(x, f);
    return f[0] * f[0] + f[1] * f[1] + f[2] * f[2] < 1e-20;
}

void tangent_at(const double x[4], double t_out[4], const double* prev) {
    // numeric Jacobian of the 3 equations, then its null direction
    double J[3][4];
    const double h = 1e-7;
    for (int k = 0; k < 4; ++k) {
        double xp[4], xm[4];
        for (int t = 0; t < 4; ++t) xp[t] = xm[t] = x[t];
        xp[k] += h;
        xm[k] -= h;
        double fp[3], fm[3];
        per2_system(xp, fp);
        per2_system(xm, fm);
        for (int r = 0; r < 3; ++r) J[r][k] = (fp[r] - fm[r]) / (2 * h);
    }
    // null vector by cross-product analogue: solve J t = 0 with |t| = 1;
    // use the 3x3 minors expansion
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
    if (norm < 1e-14) fail(Status::DegenerateJacobian, "curve tangent degenerate");
    for (int k = 0; k < 4; ++k) t[k] /= norm;
    if (prev) {
        double dot = t[0] * prev[0] + t[1] * prev[1] + t[2] * prev[2] + t[3] * prev[3];
        if (dot < 0)
            for (int k = 0; k < 4; ++k) t[k] = -t[k];
    }
    for (int k = 0; k < 4; ++k) t_out[k] = t[k];
}

} // namespace

std::vector<CurvePoint> sample_per2_1(int n) {
    if (n < 1) fail(Status::InvalidArgument, "need n >= 1");
    // real-axis crossing of the conjugate-pair branch: a = sqrt(2/3), z = i
    double start[4] = {std::sqrt(2.0 / 3.0), 0.0, 0.0, 1.0};
    const double step = 0.01;
    int side_steps = n / 2;
    std::vector<CurvePoint> pts;
    pts.reserve(size_t(n) + 1);
    pts.push_back({start[0], start[1], CurveId::Per2_1});
    for (int dir = -1; dir <= 1; dir += 2) {
        double x[4] = {start[0], start[1], start[2], start[3]};
        double tan[4];
        double seed_dir[4] = {0, double(dir), 0, 0};
        tangent_at(x, tan, seed_dir);
        for (int i = 0; i < side_steps; ++i) {
            for (int k = 0; k < 4; ++k) x[k] += step * tan[k];
            if (!newton_correct(x, tan)) break;
            if (x[0] < 0) break;
            pts.push_back({x[0], x[1], CurveId::Per2_1});
            tangent_at(x, tan, tan);
        }
    }
    if (int(pts.size()) > n) pts.resize(size_t(n));
    return pts;
}

void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points) {
    std::ofstream f(path);
    if (!f) fail(Status::IoError, "cannot open " + path);
    f << "a,b,curve_id\n";
    char line[96];
    for (const auto& p : points) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%s\n", p.a, p.b, curve_name(p.curve_id));
        f << line;
    }
    if (!f) fail(Status::IoError, "write failed: " + path);
}

} // namespace mclab
