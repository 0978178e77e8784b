// Sieve-backed generation of the multiplicative coefficient sequences:
// generalized divisor functions d_alpha, the Mobius function, log-weighted
// polynomial and mollifier coefficients, and shifted (complex) series.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracmoment/numeric.hpp"

namespace fracmoment {

/// Largest dense series cutoff accepted by the generators.
inline constexpr std::size_t kMaxSeriesCutoff = 10'000'000;

struct PrimePower {
    std::uint32_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Smallest-prime-factor table on [0, limit].
class FactorSieve {
public:
    explicit FactorSieve(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t smallest_prime_factor(std::uint32_t n) const;
    bool is_prime(std::uint32_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    /// Prime factorization with strictly increasing primes; [] for n = 1.
    /// Throws DomainError for n = 0 or n > limit.
    std::vector<PrimePower> factorize(std::uint32_t n) const;

    int mobius(std::uint32_t n) const;

    /// All primes up to limit, ascending.
    std::vector<std::uint32_t> primes() const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

/// Dense coefficient array indexed 1..cutoff; values[0] is unused and zero.
template <typename T>
struct Series {
    std::string label;
    std::size_t cutoff = 0;
    std::vector<T> values;

    Series() = default;
    Series(std::string lbl, std::size_t n) : label(std::move(lbl)), cutoff(n), values(n + 1, T{}) {}

    T operator[](std::size_t n) const { return values[n]; }
    T& operator[](std::size_t n) { return values[n]; }
};

using CoefficientSeries = Series<double>;
using ComplexSeries = Series<cplx>;

/// d_alpha(p^j) = prod_{i<j} (alpha + i)/(i + 1), evaluated in exact rational
/// arithmetic while the numbers fit in 128 bits.
double prime_power_coeff(const Rational& alpha, int j);

/// d_alpha(n); multiplicative in n.
double divisor_coeff(const FactorSieve& sieve, const Rational& alpha, std::uint32_t n);

CoefficientSeries divisor_series(const FactorSieve& sieve, const Rational& alpha, std::size_t cutoff);
CoefficientSeries mobius_series(const FactorSieve& sieve, std::size_t cutoff);

/// Unit series delta_1 = (1, 0, 0, ...).
CoefficientSeries unit_series(std::size_t cutoff);

/// out[n] = sum_{d | n} f[d] g[n/d] for n <= cutoff. Throws DomainError if
/// either input is shorter than cutoff.
CoefficientSeries dirichlet_convolve(const CoefficientSeries& f, const CoefficientSeries& g, std::size_t cutoff);
ComplexSeries dirichlet_convolve(const ComplexSeries& f, const ComplexSeries& g, std::size_t cutoff);

/// d_{A/B}(n, x): A-fold convolution of d_{1/B}(m) log(x/m)/log x over m <= floor(x).
CoefficientSeries weighted_poly_coeffs(const FactorSieve& sieve, int a_count, int b_denominator, double x,
                                       std::size_t cutoff);

/// d*_{A/B}(n, y): 2^{-A} times the A-fold convolution of
/// d_{1/B}(m) mu(m) log^2(y/m)/log^2 y over m <= floor(y).
CoefficientSeries mollifier_coeffs(const FactorSieve& sieve, int a_count, int b_denominator, double y,
                                   std::size_t cutoff);

/// Lower bound on the real part of every shift.
inline constexpr double kMinShiftRealPart = -3.0 / 16.0;

struct ShiftVector {
    std::vector<cplx> shifts;

    ShiftVector() = default;
    ShiftVector(std::initializer_list<cplx> s) : shifts(s) {}
    explicit ShiftVector(std::vector<cplx> s) : shifts(std::move(s)) {}

    std::size_t size() const { return shifts.size(); }
    bool empty() const { return shifts.empty(); }
    /// Throws DomainError when empty or a real part is below -3/16.
    void validate() const;
};

enum class ShiftMode { Sigma, Rho, Psi };

/// Shifted series over ordered factorizations n = n_1 ... n_k:
///   sigma: prod d_{1/2s}(n_i) n_i^{-w_i}
///   rho:   prod d_{1/s}(n_i) mu(n_i) n_i^{-z_i}
///   psi:   sigma factors over w-shifts times rho factors over z-shifts.
/// `secondary` holds the z-shifts and is required for psi, rejected otherwise.
ComplexSeries shifted_series(const FactorSieve& sieve, ShiftMode mode, const ShiftVector& primary, int s_param,
                             std::size_t cutoff, const ShiftVector& secondary = {});

/// Calls visit(n, d_alpha(n)) for every n in [lo, hi] in increasing order,
/// factoring block by block so hi may exceed any dense sieve.
void for_each_divisor_coeff(const Rational& alpha, std::uint64_t lo, std::uint64_t hi,
                            const std::function<void(std::uint64_t, double)>& visit);

}  // namespace fracmoment
