#pragma once

#include <optional>
#include <vector>

#include "mclab/loci.hpp"
#include "mclab/raster.hpp"

namespace mclab {

/// A located parabolic point together with the iterate structure of its
/// tangent-to-identity return map R = map^{return_period}. For
/// anti-holomorphic germs, anti_period > 0 names the anti-return
/// A = map^{anti_period} with A∘A = R.
struct ParabolicGerm {
    DynamicalMap map;
    Complex z0{};
    int return_period = 1;
    int anti_period = 0;  // 0 for purely holomorphic germs
    int petals = 1;       // q

    /// Taylor coefficients of R at z0 (index = order), through order
    /// petals + 3; expansion[1] is within 1e-9 of 1.
    std::vector<Complex> expansion;

    /// Additive normalization of the attracting/repelling Fatou
    /// coordinates; 0 keeps the raw chart constants, which are invariants
    /// of the germ's affine conjugacy class.
    Complex att_offset{};
    Complex rep_offset{};

    /// Numeric knobs: how deep into the u-chart orbits run before the
    /// asymptotic expansion is applied, and the orbit budget to get there.
    double w_stop = 6000;
    int64_t max_orbit = 4000000;

    bool anti() const { return anti_period > 0; }
    Complex a2() const { return expansion.size() > 2 ? expansion[2] : Complex(0, 0); }
};

/// One application of the holomorphic return map R = map^{return_period}.
Complex germ_return(const ParabolicGerm& germ, Complex z);
/// One application of the anti-return A = map^{anti_period} (anti germs).
Complex germ_anti_return(const ParabolicGerm& germ, Complex z);

/// Builds the germ at z0: Cauchy-integral Taylor coefficients, petal count
/// from the first non-vanishing nonlinear order, derivative validation.
ParabolicGerm make_germ(const DynamicalMap& map, Complex z0, int return_period, int anti_period);

/// Solves {map^p(z) = z, (map^p)'(z) = lambda} over (parameter, z) by
/// damped Gauss-Newton (the return map is map∘map for the multicorn) and
/// anchors the germ at the characteristic parabolic point. lambda must be
/// a root of unity.
struct ParabolicParameter {
    Complex param;  // c, or (a, b) as re/im
    ParabolicGerm germ;
};
ParabolicParameter find_parabolic_parameter(const FamilySpec& family, int cycle_period,
                                            Complex lambda, Complex param_seed, Complex z_seed);

/// Attracting Fatou coordinate: psi(R(z)) = psi(z) + 1, computed by riding
/// the orbit into the u-chart and applying the asymptotics with
/// logarithmic correction. Throws NotInPetal when the orbit fails to
/// converge to z0.
Complex attracting_fatou(const ParabolicGerm& germ, Complex z);

/// Extended inverse repelling coordinate: R(zeta_rep(zeta)) =
/// zeta_rep(zeta + 1), evaluated by asymptotic inversion far left plus
/// forward iteration.
Complex repelling_fatou_inverse(const ParabolicGerm& germ, Complex zeta);

/// Lifted horn map H = psi_att ∘ zeta_rep; OutsideDomain when the image
/// point is not in the parabolic basin.
Complex lifted_horn(const ParabolicGerm& germ, Complex zeta);

/// Critical Ecalle height of an anti-holomorphic germ with a single petal:
/// Im psi_att(A(critical point)) under the normalization conjugating A to
/// zeta -> conj(zeta) + 1/2.
double critical_ecalle_height(const ParabolicGerm& germ);

struct GermFingerprint {
    Complex eta_upper{};
    Complex eta_lower{};
    std::vector<Complex> singular_values;
    int singular_count = 0;
    std::optional<double> ecalle_height;
};

/// Numerical conjugacy invariants: horn-map translation constants, the
/// projected singular values of the supplied critical values, and for
/// anti-germs the critical Ecalle height.
GermFingerprint germ_fingerprint(const ParabolicGerm& germ,
                                 const std::vector<Complex>& critical_values);

/// Compares two fingerprints after the forced relabeling of conjugate
/// parameters (conjugation swaps the cylinder ends); returns the max
/// componentwise deviation.
double fingerprint_distance_conjugate(const GermFingerprint& fp1, const GermFingerprint& fp2);

/// max_w |1/conj(h^-(1/conj(w))) - h^+(w)| over the samples; small values
/// certify a real-symmetric germ.
double check_real_symmetry(const ParabolicGerm& germ, const std::vector<Complex>& sample_ws);

/// Fatou-coordinate chessboard: cell value encodes (sign Im psi, parity of
/// floor Re psi) as palette slots 1..4; pixels outside the basin are
/// Unknown.
Raster render_chessboard(const ParabolicGerm& germ, const Window& window, int width_px,
                         int height_px);

/// Germ of z + z^2: the cauliflower map z^2 + 1/4 at z0 = 1/2, which the
/// translation z -> z - 1/2 carries to z + z^2.
ParabolicGerm cauliflower_germ();

namespace detail {
// Equator-normalized offsets for anti germs: the attracting/repelling
// coordinates conjugate A to zeta -> conj(zeta) + 1/2, and
// Re psi_att(A(critical point)) = 0.
std::pair<Complex, Complex> anti_equator_offsets(const ParabolicGerm& germ);
} // namespace detail

} // namespace mclab
