// Fractional moments, the auxiliary sums S_l and S_u, the |P|^{4r}
// diagonal majorant, and the Holder/Cauchy chain that ties them together.
//
// For k = r/s, with P = P_{1/2s} and M = M_{1/s}:
//   M_k(q) = sum_{chi != chi_0} |L(1/2, chi)|^{2k}
//   S_l    = sum_{chi != chi_0} L(1/2, chi) conj(P)^{2s} |M|^{2(s-r)}
//   S_u    = sum_{chi != chi_0} |L(1/2, chi)|^2 |P|^{4s} |M|^{2(2s-r)}
//   |S_l| <= M_k^{1/(2(2-k))} (sum |P|^{4r})^{1/(2(2-k))} S_u^{(1-k)/(2-k)}
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fracmoment/characters.hpp"
#include "fracmoment/lvalues.hpp"
#include "fracmoment/multiplicative.hpp"

namespace fracmoment {

struct MomentParams {
    std::int64_t q = 1009;
    std::int64_t r = 1;
    std::int64_t s = 2;
    double x = 16.0;
    double y = 2.0;
    double a = 4.0;

    Rational k() const { return {r, s}; }
    /// Throws DomainError unless q is prime, 0 < r < s coprime, y > 1, a >= 1
    /// and x = y^a to 1e-12 relative.
    void validate() const;
    /// x^{4s} <= q^{1/20}.
    bool regime_satisfied() const;

    /// Default bundle: y = q^{1/(4 a s)} clamped to >= 2, x = y^a.
    static MomentParams defaults(std::int64_t q, Rational k, double a = 4.0);
    /// Explicit y with x = y^a.
    static MomentParams with_y(std::int64_t q, Rational k, double y, double a);
};

/// Largest supported s for the conj(P)^{2s} products.
inline constexpr std::int64_t kMaxS = 6;

/// Floor applied to |L|^2 before taking fractional powers.
inline constexpr double kSquareFloor = 1e-30;

/// out[j] = sum_n c_n chi_j(n) n^{-1/2} (chi_j replaced by conj chi_j when
/// conjugate is set), for every j including the principal slot j = 0.
/// Throws DomainError if a nonzero coefficient sits at n >= q.
std::vector<cplx> evaluate_polynomial_all(const CharacterTable& table, const CoefficientSeries& coeffs,
                                          bool conjugate = false);
std::vector<cplx> evaluate_polynomial_all(const CharacterTable& table, const ComplexSeries& coeffs,
                                          bool conjugate = false);

struct MomentReport {
    MomentParams params;
    LMethod method = LMethod::Oracle;
    double moment = 0.0;
    std::vector<double> contributions;  // index j - 1 for j = 1 .. q-2
    std::vector<std::int64_t> flagged;  // characters whose |L|^2 hit the floor
};

/// M_k from precomputed records (j = 1 .. q-2).
MomentReport moment_from_records(const MomentParams& params, const std::vector<LValueRecord>& records);
MomentReport moment_k(const MomentParams& params, LMethod method);

/// Per-character values the auxiliary sums are built from.
struct CharacterData {
    std::vector<LValueRecord> lvalues;  // oracle records, j = 1 .. q-2
    std::vector<cplx> p_values;         // P_{1/2s}(chi_j), all j
    std::vector<cplx> m_values;         // M_{1/s}(chi_j), all j
};

CharacterData character_data(const MomentParams& params, const CharacterTable& table);

cplx s_lower(const MomentParams& params, const CharacterData& data);
double s_upper(const MomentParams& params, const CharacterData& data);
cplx s_lower(const MomentParams& params, const CharacterTable& table);
double s_upper(const MomentParams& params, const CharacterTable& table);

struct P4Report {
    double lhs = 0.0;  // sum_{chi != chi_0} |P|^{4r}
    double rhs = 0.0;  // phi(q) sum_{n <= x^{2r}} d_{2r/2s}(n, x)^2 / n
};

/// Requires x^{2r} < q.
P4Report p4_bound_check(const MomentParams& params, const CharacterTable& table);
/// lhs only, from precomputed polynomial values.
double p4_sum(const MomentParams& params, const std::vector<cplx>& p_values);

struct HolderReport {
    MomentParams params;
    double moment = 0.0;
    cplx s_lower{};
    double s_upper = 0.0;
    P4Report p4;
    bool p4_applicable = false;  // x^{2r} < q, so rhs was computed
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double slack = 0.0;
    bool pass = false;
    bool regime_flag = false;
};

/// Exponents (1/(2(2-k)), 1/(2(2-k)), (1-k)/(2-k)) as exact rationals.
std::array<Rational, 3> holder_exponents(const Rational& k);

HolderReport holder_chain_check(const MomentParams& params, const CharacterTable& table);

struct SurveyRow {
    std::int64_t q = 0;
    double moment_over_phi = 0.0;
    double logq_pow_k2 = 0.0;
    double ratio = 0.0;
};

/// Band the survey ratio is asserted to lie in.
inline constexpr double kSurveyBandLow = 0.1;
inline constexpr double kSurveyBandHigh = 10.0;

std::vector<SurveyRow> scaling_survey(const Rational& k, const std::vector<std::int64_t>& primes, LMethod method);

}  // namespace fracmoment
