#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace mclab {

using Rational = mpq_class;

/// Dense bivariate polynomial over Q in the variables (A, b); for the
/// cubic family A stands for a^2. coeff[i][j] multiplies A^i b^j.
class BivarPoly {
public:
    BivarPoly() = default;
    explicit BivarPoly(Rational constant);
    static BivarPoly var_A();
    static BivarPoly var_b();

    int deg_A() const { return rows_.empty() ? -1 : int(rows_.size()) - 1; }
    int deg_b() const;
    bool is_zero() const { return rows_.empty(); }

    const Rational& coeff(int i, int j) const;
    void set_coeff(int i, int j, Rational v);

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly operator*(const Rational& s) const;
    BivarPoly operator-() const;

    Rational eval(const Rational& A, const Rational& b) const;
    double eval_double(double A, double b) const;
    std::pair<double, double> gradient_double(double A, double b) const;

    /// Exact division; returns false (and leaves *this untouched) if o does
    /// not divide exactly. Requires o's leading coefficient in b to be a
    /// nonzero constant in A.
    bool try_divide_exact(const BivarPoly& o, BivarPoly* quotient) const;

    /// Divides all coefficients by their common content and fixes the sign
    /// so that eval(at_A, at_b) > 0 (when nonzero there).
    void normalize_content(const Rational& at_A, const Rational& at_b);

private:
    void trim();
    // rows_[i][j] = coefficient of A^i b^j
    std::vector<std::vector<Rational>> rows_;
};

/// Polynomial in z with BivarPoly coefficients (coefficient of z^k at
/// index k).
using ZPoly = std::vector<BivarPoly>;

ZPoly zpoly_mul(const ZPoly& p, const ZPoly& q);
ZPoly zpoly_sub(const ZPoly& p, const ZPoly& q);
ZPoly zpoly_derivative(const ZPoly& p);
/// Long division p / q, requiring q's leading coefficient to be a nonzero
/// rational constant; asserts zero remainder.
ZPoly zpoly_divide_exact(const ZPoly& p, const ZPoly& q);
int zpoly_degree(const ZPoly& p);

/// Determinant of a rational matrix by Gaussian elimination.
Rational rational_det(std::vector<std::vector<Rational>> m);

/// Res_z(p, q) computed exactly: Sylvester determinants at integer nodes
/// (A, b), then bivariate Newton interpolation back to a polynomial.
BivarPoly resultant_z(const ZPoly& p, const ZPoly& q);

/// Sylvester determinant of (p, q) with the coefficients evaluated at one
/// rational point; the pointwise value of Res_z.
Rational resultant_value_at(const ZPoly& p, const ZPoly& q, const Rational& A, const Rational& b);

/// Exact square root of a bivariate polynomial; returns false when r is
/// not a perfect square over Q.
bool bivar_sqrt(const BivarPoly& r, BivarPoly* root);

} // namespace mclab
