#include "mclab/rational_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace mclab {

namespace {
const Rational kZero(0);
}

BivarPoly::BivarPoly(Rational constant) {
    if (constant != 0) rows_.push_back({std::move(constant)});
}

BivarPoly BivarPoly::var_A() {
    BivarPoly p;
    p.rows_ = {{Rational(0)}, {Rational(1)}};
    return p;
}

BivarPoly BivarPoly::var_b() {
    BivarPoly p;
    p.rows_ = {{Rational(0), Rational(1)}};
    return p;
}

int BivarPoly::deg_b() const {
    int d = -1;
    for (const auto& row : rows_) d = std::max(d, int(row.size()) - 1);
    return d;
}

const Rational& BivarPoly::coeff(int i, int j) const {
    if (i < 0 || i >= int(rows_.size())) return kZero;
    const auto& row = rows_[size_t(i)];
    if (j < 0 || j >= int(row.size())) return kZero;
    return row[size_t(j)];
}

void BivarPoly::set_coeff(int i, int j, Rational v) {
    if (int(rows_.size()) <= i) rows_.resize(size_t(i) + 1);
    auto& row = rows_[size_t(i)];
    if (int(row.size()) <= j) row.resize(size_t(j) + 1, Rational(0));
    row[size_t(j)] = std::move(v);
    trim();
}

void BivarPoly::trim() {
    for (auto& row : rows_)
        while (!row.empty() && row.back() == 0) row.pop_back();
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    if (r.rows_.size() < o.rows_.size()) r.rows_.resize(o.rows_.size());
    for (size_t i = 0; i < o.rows_.size(); ++i) {
        auto& row = r.rows_[i];
        if (row.size() < o.rows_[i].size()) row.resize(o.rows_[i].size(), Rational(0));
        for (size_t j = 0; j < o.rows_[i].size(); ++j) row[j] += o.rows_[i][j];
    }
    r.trim();
    return r;
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly r = *this;
    for (auto& row : r.rows_)
        for (auto& v : row) v = -v;
    return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + (-o); }

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly r;
    if (rows_.empty() || o.rows_.empty()) return r;
    r.rows_.assign(rows_.size() + o.rows_.size() - 1, {});
    size_t bw = 0;
    for (const auto& row : rows_) bw = std::max(bw, row.size());
    size_t ow = 0;
    for (const auto& row : o.rows_) ow = std::max(ow, row.size());
    for (auto& row : r.rows_) row.assign(bw + ow - 1, Rational(0));
    for (size_t i = 0; i < rows_.size(); ++i)
        for (size_t j = 0; j < rows_[i].size(); ++j) {
            if (rows_[i][j] == 0) continue;
            for (size_t k = 0; k < o.rows_.size(); ++k)
                for (size_t l = 0; l < o.rows_[k].size(); ++l) {
                    if (o.rows_[k][l] == 0) continue;
                    r.rows_[i + k][j + l] += rows_[i][j] * o.rows_[k][l];
                }
        }
    r.trim();
    return r;
}

BivarPoly BivarPoly::operator*(const Rational& s) const {
    BivarPoly r = *this;
    for (auto& row : r.rows_)
        for (auto& v : row) v *= s;
    r.trim();
    return r;
}

Rational BivarPoly::eval(const Rational& A, const Rational& b) const {
    Rational acc(0);
    for (size_t i = rows_.size(); i-- > 0;) {
        Rational row_val(0);
        const auto& row = rows_[i];
        for (size_t j = row.size(); j-- > 0;) row_val = row_val * b + row[j];
        acc = acc * A + row_val;
    }
    return acc;
}

double BivarPoly::eval_double(double A, double b) const {
    double acc = 0;
    for (size_t i = rows_.size(); i-- > 0;) {
        double row_val = 0;
        const auto& row = rows_[i];
        for (size_t j = row.size(); j-- > 0;) row_val = row_val * b + row[j].get_d();
        acc = acc * A + row_val;
    }
    return acc;
}

std::pair<double, double> BivarPoly::gradient_double(double A, double b) const {
    double dA = 0, db = 0;
    for (size_t i = 0; i < rows_.size(); ++i)
        for (size_t j = 0; j < rows_[i].size(); ++j) {
            if (rows_[i][j] == 0) continue;
            double c = rows_[i][j].get_d();
            if (i > 0) dA += c * double(i) * std::pow(A, double(i - 1)) * std::pow(b, double(j));
            if (j > 0) db += c * std::pow(A, double(i)) * double(j) * std::pow(b, double(j - 1));
        }
    return {dA, db};
}

bool BivarPoly::try_divide_exact(const BivarPoly& o, BivarPoly* quotient) const {
    int ob = o.deg_b();
    if (ob < 0) return false;
    // leading b-coefficient of o must be constant in A
    BivarPoly olead;
    for (int i = 0; i <= o.deg_A(); ++i)
        if (o.coeff(i, ob) != 0) {
            if (i > 0) return false;
        }
    Rational lead = o.coeff(0, ob);
    if (lead == 0) return false;

    BivarPoly rem = *this;
    BivarPoly q;
    while (!rem.is_zero() && rem.deg_b() >= ob) {
        int rb = rem.deg_b();
        // collect the A-polynomial multiplying b^rb
        BivarPoly factor;
        for (int i = 0; i <= rem.deg_A(); ++i) {
            Rational c = rem.coeff(i, rb);
            if (c != 0) factor.set_coeff(i, rb - ob, c / lead);
        }
        if (factor.is_zero()) return false;
        q = q + factor;
        rem = rem - factor * o;
        if (!rem.is_zero() && rem.deg_b() >= rb) return false;  // no progress
    }
    if (!rem.is_zero()) return false;
    if (quotient) *quotient = q;
    return true;
}

void BivarPoly::normalize_content(const Rational& at_A, const Rational& at_b) {
    if (rows_.empty()) return;
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& row : rows_)
        for (const auto& v : row) {
            if (v == 0) continue;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
        }
    if (num_gcd == 0) return;
    Rational scale(den_lcm, num_gcd);
    for (auto& row : rows_)
        for (auto& v : row) {
            v *= scale;
            v.canonicalize();
        }
    if (eval(at_A, at_b) < 0)
        for (auto& row : rows_)
            for (auto& v : row) v = -v;
}

ZPoly zpoly_mul(const ZPoly& p, const ZPoly& q) {
    ZPoly r(p.size() + q.size() - 1);
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
    return r;
}

ZPoly zpoly_sub(const ZPoly& p, const ZPoly& q) {
    ZPoly r = p;
    if (r.size() < q.size()) r.resize(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = r[i] - q[i];
    while (r.size() > 1 && r.back().is_zero()) r.pop_back();
    return r;
}

ZPoly zpoly_derivative(const ZPoly& p) {
    if (p.size() <= 1) return {BivarPoly()};
    ZPoly r(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) r[k - 1] = p[k] * Rational(long(k));
    return r;
}

int zpoly_degree(const ZPoly& p) {
    for (size_t k = p.size(); k-- > 0;)
        if (!p[k].is_zero()) return int(k);
    return -1;
}

ZPoly zpoly_divide_exact(const ZPoly& p, const ZPoly& q) {
    int dq = zpoly_degree(q);
    if (dq < 0) throw std::invalid_argument("division by zero polynomial");
    const BivarPoly& qlead = q[size_t(dq)];
    if (qlead.deg_A() != 0 || qlead.deg_b() != 0)
        throw std::invalid_argument("divisor leading coefficient must be constant");
    Rational lead_inv = Rational(1) / qlead.coeff(0, 0);

    ZPoly rem = p;
    int dp = zpoly_degree(rem);
    if (dp < dq) throw std::invalid_argument("degree underflow in division");
    ZPoly quot(size_t(dp - dq) + 1);
    for (int k = dp; k >= dq; --k) {
        BivarPoly f = rem[size_t(k)] * lead_inv;
        quot[size_t(k - dq)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= dq; ++j) rem[size_t(k - dq + j)] = rem[size_t(k - dq + j)] - f * q[size_t(j)];
    }
    for (int k = 0; k < dq; ++k)
        if (!rem[size_t(k)].is_zero()) throw std::logic_error("inexact polynomial division");
    return quot;
}

Rational rational_det(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = Rational(1) / m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] * inv;
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

namespace {

Rational sylvester_at(const ZPoly& p, const ZPoly& q, const Rational& A, const Rational& b) {
    int dp = zpoly_degree(p), dq = zpoly_degree(q);
    size_t n = size_t(dp + dq);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int row = 0; row < dq; ++row)
        for (int k = 0; k <= dp; ++k) m[size_t(row)][size_t(row + k)] = p[size_t(dp - k)].eval(A, b);
    for (int row = 0; row < dp; ++row)
        for (int k = 0; k <= dq; ++k)
            m[size_t(dq + row)][size_t(row + k)] = q[size_t(dq - k)].eval(A, b);
    return rational_det(std::move(m));
}

} // namespace

Rational resultant_value_at(const ZPoly& p, const ZPoly& q, const Rational& A, const Rational& b) {
    return sylvester_at(p, q, A, b);
}

BivarPoly resultant_z(const ZPoly& p, const ZPoly& q) {
    int dp = zpoly_degree(p), dq = zpoly_degree(q);
    int pA = 0, pb = 0, qA = 0, qb = 0;
    for (const auto& c : p) {
        pA = std::max(pA, c.deg_A());
        pb = std::max(pb, c.deg_b());
    }
    for (const auto& c : q) {
        qA = std::max(qA, c.deg_A());
        qb = std::max(qb, c.deg_b());
    }
    int degA = dq * pA + dp * qA;
    int degb = dq * pb + dp * qb;

    // Values on the integer grid, then Newton divided differences in b for
    // each A node, then in A for each b coefficient.
    std::vector<std::vector<Rational>> vals(size_t(degA) + 1,
                                            std::vector<Rational>(size_t(degb) + 1));
    for (int i = 0; i <= degA; ++i)
        for (int j = 0; j <= degb; ++j) vals[size_t(i)][size_t(j)] = sylvester_at(p, q, Rational(i), Rational(j));

    auto newton_coeffs = [](std::vector<Rational> v) {
        // nodes 0..n-1; returns monomial-basis coefficients
        size_t n = v.size();
        std::vector<Rational> dd = std::move(v);
        for (size_t level = 1; level < n; ++level)
            for (size_t i = n - 1; i >= level; --i)
                dd[i] = (dd[i] - dd[i - 1]) / Rational(long(level));
        // expand newton form: sum dd[k] * prod_{m<k} (x - m)
        std::vector<Rational> mono(n, Rational(0));
        std::vector<Rational> basis{Rational(1)};  // running product
        for (size_t k = 0; k < n; ++k) {
            for (size_t t = 0; t < basis.size(); ++t) mono[t] += dd[k] * basis[t];
            // multiply basis by (x - k)
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * Rational(long(k));
            }
            basis = std::move(next);
        }
        return mono;
    };

    // interpolate in b per A node
    std::vector<std::vector<Rational>> bcoef(size_t(degA) + 1);
    for (int i = 0; i <= degA; ++i) bcoef[size_t(i)] = newton_coeffs(vals[size_t(i)]);
    // interpolate in A per b power
    BivarPoly result;
    for (int j = 0; j <= degb; ++j) {
        std::vector<Rational> col(size_t(degA) + 1);
        for (int i = 0; i <= degA; ++i) col[size_t(i)] = bcoef[size_t(i)][size_t(j)];
        std::vector<Rational> mono = newton_coeffs(std::move(col));
        for (int i = 0; i <= degA; ++i)
            if (mono[size_t(i)] != 0) result.set_coeff(i, j, mono[size_t(i)]);
    }
    return result;
}

namespace {

bool rational_sqrt(const Rational& v, Rational* out) {
    if (v < 0) return false;
    if (v == 0) {
        *out = 0;
        return true;
    }
    mpz_class num = v.get_num(), den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    *out = Rational(sn, sd);
    return true;
}

// univariate polynomials in A as coefficient vectors
using APoly = std::vector<Rational>;

APoly atrim(APoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

APoly amul(const APoly& p, const APoly& q) {
    if (p.empty() || q.empty()) return {};
    APoly r(p.size() + q.size() - 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

APoly asub(APoly p, const APoly& q) {
    if (p.size() < q.size()) p.resize(q.size(), Rational(0));
    for (size_t i = 0; i < q.size(); ++i) p[i] -= q[i];
    return atrim(std::move(p));
}

bool adiv_exact(const APoly& p, const APoly& q, APoly* out) {
    APoly rem = atrim(p), d = atrim(q);
    if (d.empty()) return false;
    if (rem.empty()) {
        out->clear();
        return true;
    }
    if (rem.size() < d.size()) return false;
    APoly quot(rem.size() - d.size() + 1, Rational(0));
    while (rem.size() >= d.size() && !rem.empty()) {
        Rational f = rem.back() / d.back();
        size_t shift = rem.size() - d.size();
        quot[shift] = f;
        for (size_t i = 0; i < d.size(); ++i) rem[shift + i] -= f * d[i];
        rem = atrim(std::move(rem));
        if (rem.empty()) break;
    }
    if (!rem.empty()) return false;
    *out = quot;
    return true;
}

bool asqrt(const APoly& p_in, APoly* out) {
    APoly p = atrim(p_in);
    if (p.empty()) {
        out->clear();
        return true;
    }
    if ((p.size() - 1) % 2 != 0) return false;
    size_t d = (p.size() - 1) / 2;
    APoly s(d + 1, Rational(0));
    if (!rational_sqrt(p.back(), &s[d])) return false;
    for (size_t k = d; k-- > 0;) {
        // coefficient of A^{d+k} in s^2 must match p[d+k]
        Rational acc(0);
        for (size_t i = k + 1; i <= d; ++i) {
            size_t j = d + k - i;
            if (j > d || j <= k) continue;
            acc += s[i] * s[j];
        }
        Rational rhs = p[d + k] - acc;
        // 2 s[d] s[k] + (terms with both indices in (k, d)) handled above;
        // note i = d, j = k term is excluded by j <= k guard, so solve it here
        s[k] = rhs / (2 * s[d]);
    }
    if (amul(s, s) != atrim(p_in)) return false;
    *out = s;
    return true;
}

} // namespace

bool bivar_sqrt(const BivarPoly& r, BivarPoly* root) {
    if (r.is_zero()) {
        *root = BivarPoly();
        return true;
    }
    int db = r.deg_b();
    if (db % 2 != 0) return false;
    int m = db / 2;
    int dA = r.deg_A();
    // R_j(A) = coefficient of b^j
    auto rcoef = [&](int j) {
        APoly p(size_t(dA) + 1, Rational(0));
        for (int i = 0; i <= dA; ++i) p[size_t(i)] = r.coeff(i, j);
        return atrim(std::move(p));
    };
    std::vector<APoly> S(size_t(m) + 1);
    if (!asqrt(rcoef(db), &S[size_t(m)])) return false;
    for (int j = m - 1; j >= 0; --j) {
        // b^{m+j} of S^2: 2 S_m S_j plus the ordered cross sum over interior
        // index pairs (i, m+j-i), both within [j+1, m-1]
        APoly cross;
        for (int i = j + 1; i <= m - 1; ++i) {
            int other = m + j - i;
            if (other < j + 1 || other > m - 1) continue;
            APoly t = amul(S[size_t(i)], S[size_t(other)]);
            for (auto& v : t) v = -v;
            cross = asub(std::move(cross), t);  // cross += S_i S_other
        }
        APoly rhs = asub(rcoef(m + j), cross);
        APoly twos = S[size_t(m)];
        for (auto& v : twos) v *= 2;
        if (!adiv_exact(rhs, twos, &S[size_t(j)])) return false;
    }
    BivarPoly result;
    for (int j = 0; j <= m; ++j)
        for (size_t i = 0; i < S[size_t(j)].size(); ++i)
            if (S[size_t(j)][i] != 0) result.set_coeff(int(i), j, S[size_t(j)][i]);
    if (!((result * result) - r).is_zero()) return false;
    *root = result;
    return true;
}

} // namespace mclab
