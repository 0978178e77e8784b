// Central values L(1/2, chi) for characters modulo a prime, by three
// independent routes:
//   oracle   - exact finite Hurwitz decomposition
//              L(1/2, chi) = q^{-1/2} sum_a chi(a) zeta(1/2, a/q);
//   smoothed - sum_m chi(m) m^{-1/2} e^{-m/X} with X = q^{5/4};
//   afe      - |L(1/2, chi)|^2 = 2 sum_{m,n} chi(m) conj chi(n) (mn)^{-1/2}
//              W_parity(q / (pi m n)), exact for primitive chi.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracmoment/characters.hpp"
#include "fracmoment/special.hpp"

namespace fracmoment {

enum class LMethod { Oracle, Smoothed, Afe };

std::string to_string(LMethod m);
LMethod parse_lmethod(const std::string& text);

struct LValueRecord {
    std::int64_t index = 0;
    int parity = 0;
    std::optional<cplx> value;  // absent for the afe route, which only yields |L|^2
    double square = 0.0;
    LMethod method = LMethod::Oracle;
    double error_estimate = 0.0;
};

/// Vertical-line quadrature parameters for W_parity.
struct WWeightSpec {
    int parity = 0;
    double line = 0.25;    // Re w of the integration line
    double height = 40.0;  // |Im w| truncation
    double step = 0.025;   // trapezoid spacing in Im w
};

/// W_parity(x) = (1/2 pi i) int_(c) G(w)/G(0) x^w dw/w with
/// G(w) = Gamma(1/4 + (w + parity)/2)^2. Nodes are precomputed once; the
/// evaluator is immutable and safe to share across threads.
class WWeight {
public:
    explicit WWeight(const WWeightSpec& spec);

    const WWeightSpec& spec() const { return spec_; }

    /// Throws DomainError for x <= 0.
    double operator()(double x) const;

    /// |W at full spacing - W on every other node|.
    double error_estimate(double x) const;

private:
    double evaluate(double x, std::size_t stride) const;

    WWeightSpec spec_;
    std::vector<cplx> weights_;  // G(c + ikh)/G(0) / (c + ikh), k >= 0
};

double w_weight(double x, int parity, const WWeightSpec& spec = {});

/// Default smallest argument q/(pi m n) kept in the afe double sum.
inline constexpr double kAfeMinArgument = 1e-3;

struct AfeOptions {
    double min_argument = kAfeMinArgument;
    WWeightSpec weight{};
    /// Parity override for negative testing; by default the table parity is used.
    std::optional<int> force_parity;
};

LValueRecord l_half_oracle(const CharacterTable& table, std::int64_t j);
LValueRecord l_half_smoothed(const CharacterTable& table, std::int64_t j, double tail_multiplier = 40.0);
LValueRecord l_square_afe(const CharacterTable& table, std::int64_t j, const AfeOptions& options = {});

/// All non-principal characters at once (records for j = 1 .. q-2), through
/// residue-class grouping and the group DFT.
std::vector<LValueRecord> l_half_oracle_all(const CharacterTable& table);
std::vector<LValueRecord> l_half_smoothed_all(const CharacterTable& table, double tail_multiplier = 40.0);
std::vector<LValueRecord> l_square_afe_all(const CharacterTable& table, const AfeOptions& options = {});

std::vector<LValueRecord> l_values_all(const CharacterTable& table, LMethod method);

/// Analytic error allowance 10 q^{-1/8} log q for the smoothed route.
double smoothed_error_allowance(std::int64_t q);

/// CSV with header q,j,parity,ReL,ImL,Lsq,method,err.
void write_lvalue_csv(std::ostream& out, std::int64_t q, const std::vector<LValueRecord>& records);

}  // namespace fracmoment
