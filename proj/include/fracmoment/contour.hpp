// Numerical contour integration: vertical lines, Hankel loops and segment
// chains, plus the concrete contour identities checked against discrete
// oracles (Perron weights, 1/Gamma, fractional zeta powers, the two-variable
// lower-bound integrals and the Euler-product correction eta).
#pragma once

#include <functional>
#include <vector>

#include "fracmoment/multiplicative.hpp"

namespace fracmoment {

struct ContourPath {
    enum class Kind { Vertical, Hankel, SegmentChain };

    Kind kind = Kind::Vertical;
    double anchor = 1.0;          // Re w of a vertical line
    double height = 50.0;         // vertical truncation |Im w| <= height
    double radius = 1.0;          // Hankel loop radius
    double arm = 25.0;            // Hankel arms run out to Re w = -arm
    double nodes_per_unit = 10.0;
    std::vector<cplx> vertices;  // segment chain, traversed in order

    /// Throws DomainError on non-positive height, radius, arm below 10,
    /// fewer than 10 nodes per unit, or a chain with < 2 vertices.
    void validate() const;

    static ContourPath vertical(double c, double height, double nodes_per_unit = 10.0);
    static ContourPath hankel(double radius = 1.0, double arm = 25.0, double nodes_per_unit = 10.0);
    static ContourPath chain(std::vector<cplx> vertices, double nodes_per_unit = 10.0);
};

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    std::size_t nodes = 0;
    bool budget_exceeded = false;
};

using ContourIntegrand = std::function<cplx(cplx)>;

/// (1/2 pi i) int f(w) dw along any path kind, by 10-point Gauss-Legendre
/// panels; error_estimate is the change against half as many panels.
QuadratureResult contour_integral(const ContourIntegrand& f, const ContourPath& path);

/// (1/2 pi i) int_{c-iT}^{c+iT} f(w) dw by trapezoid refinement (step
/// halving) until two levels agree to 1e-9. The tail over T < |t| < 2T is
/// sampled; a significant tail or exhausted node budget sets
/// budget_exceeded. Requires a vertical path.
QuadratureResult vertical_quadrature(const ContourIntegrand& f, const ContourPath& path);

/// (1/2 pi i) int_{(c)} x^w w^{-order} dw with c = 1: log^{order-1}(x)/(order-1)!
/// for x > 1, 0 for x < 1. Orders 2 and 3. Throws DomainError at x = 1 or x <= 0.
QuadratureResult perron_weight_quadrature(int order, double x);
double perron_weight(int order, double x);
double perron_closed_form(int order, double x);

/// (1/2 pi i) int_H w^{-alpha} e^w dw over the truncated Hankel loop;
/// equals 1/Gamma(alpha) up to about e^{-arm}. Requires alpha > 0, arm >= 10.
QuadratureResult hankel_recip_gamma_quadrature(double alpha, double arm = 25.0, double radius = 1.0);
double hankel_recip_gamma(double alpha, double arm = 25.0);

/// zeta(s)^alpha = exp(alpha log zeta(s)) with log zeta continued from the
/// real ray Re s >= 2 along a vertical then a horizontal segment. Requires
/// Re s > 1/2; throws PoleError at s = 1.
cplx zeta_frac_power(double alpha, cplx s);

/// Continuous log zeta(sigma + i t_k) along increasing |t| from t = 0, for
/// t_k = k * step, k = -n .. n (index k + n). Requires sigma > 1.
std::vector<cplx> log_zeta_on_line(double sigma, double step, std::size_t n);

struct Lemma6Params {
    int m = 1;
    double alpha = 3.0;
    Rational beta{1};
    double y = 1e4;
    // scaled-variable grid for the two-variable integral: u in [-u_max, u_max]
    double u_max = 400.0;
    double step = 0.2;
};

struct Lemma6Report {
    Lemma6Params params;
    double gamma = 0.0;  // 2 m alpha + m^2 beta - 2m
    bool has_numeric = false;
    double numeric = 0.0;
    double numeric_imag = 0.0;
    double numeric_error = 0.0;  // |full grid - every other node|
    double oracle = 0.0;
    double relative_error = 0.0;
    double ratio = 0.0;  // oracle / (log y)^gamma
};

/// Largest y accepted for the four-fold (m = 2) oracle sum.
inline constexpr double kLemma6MaxYForM2 = 5000.0;

/// Discrete oracle: m = 1 sums d_beta(n)/n (log^{alpha-1}(y/n)/Gamma(alpha))^2
/// over n < y; m = 2 is the four-fold analogue over a 2 x 2 array of indices
/// whose row and column products stay below y.
double lemma6_oracle(int m, double alpha, const Rational& beta, double y);

/// m = 1 two-variable integral
///   (1/2 pi i)^2 int int zeta^beta(1 + z1 + z2) y^{z1+z2} z1^{-alpha} z2^{-alpha} dz
/// on the lines Re z = 1/log y. Returns {value, |full - coarse|}.
QuadratureResult lemma6_integral(double alpha, const Rational& beta, double y, double u_max = 400.0,
                                 double step = 0.2);

/// Numeric path only for m = 1. Throws DomainError for alpha <= 2, beta <= 0,
/// y < 10 or m outside {1, 2}.
Lemma6Report lemma6_check(const Lemma6Params& params, bool numeric = true);

struct SweepRow {
    double y = 0.0;
    double value = 0.0;  // numeric value, NaN when only the oracle ran
    double oracle = 0.0;
    double ratio = 0.0;
};

std::vector<SweepRow> lemma6_sweep(int m, double alpha, const Rational& beta, const std::vector<double>& ys,
                                   bool numeric = false);

/// The k = 1/2 final integral: lemma6 machinery with alpha = 5/2, beta = 1/4.
Lemma6Report khalf_final_check(double y, bool numeric = true);

struct EtaLevel {
    std::size_t cutoff = 0;
    cplx eta{};
};

struct EtaReport {
    int s_param = 1;
    cplx w0{};
    ShiftVector shifts;
    std::vector<EtaLevel> levels;
    double drift = 0.0;  // |eta at the last cutoff - eta at the one before|
};

/// Minimum Re(w0 + w_i) accepted by eta_stability.
inline constexpr double kEtaMinRealPart = 0.2;

/// eta(N) = sum_{n <= N} sigma_w(n) / n^{1 + w0} / prod_i zeta^{1/2s}(1 + w0 + w_i).
EtaReport eta_stability(int s_param, cplx w0, const ShiftVector& shifts, const std::vector<std::size_t>& cutoffs);

}  // namespace fracmoment
