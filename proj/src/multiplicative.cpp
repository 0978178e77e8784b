#include "fracmoment/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

namespace fracmoment {

namespace {

__extension__ typedef __int128 i128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 kExactLimit = i128(1) << 100;

void check_cutoff(std::size_t cutoff) {
    if (cutoff == 0) throw DomainError("series cutoff must be positive");
    if (cutoff > kMaxSeriesCutoff) throw DomainError("series cutoff exceeds " + std::to_string(kMaxSeriesCutoff));
}

void check_sieve(const FactorSieve& sieve, std::size_t cutoff) {
    if (cutoff > sieve.limit()) throw DomainError("sieve limit below series cutoff");
}

// Builds a multiplicative series from local factors. local(p, e) must
// return f(p^e); values[1] = 1.
template <typename T, typename Local>
Series<T> build_multiplicative(const FactorSieve& sieve, std::string label, std::size_t cutoff, Local&& local) {
    Series<T> out(std::move(label), cutoff);
    out[1] = T(1);
    for (std::size_t n = 2; n <= cutoff; ++n) {
        const std::uint32_t p = sieve.smallest_prime_factor(static_cast<std::uint32_t>(n));
        std::size_t m = n;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out[n] = out[m] * local(p, e);
    }
    return out;
}

int max_exponent(std::size_t cutoff) {
    int e = 0;
    for (std::size_t v = 1; v * 2 <= cutoff; v *= 2) ++e;
    return e;
}

template <typename T>
Series<T> convolve_impl(const Series<T>& f, const Series<T>& g, std::size_t cutoff) {
    if (f.cutoff < cutoff || g.cutoff < cutoff) throw DomainError("dirichlet_convolve: cutoff mismatch");
    Series<T> out("(" + f.label + ")*(" + g.label + ")", cutoff);
    for (std::size_t d = 1; d <= cutoff; ++d) {
        const T fd = f[d];
        if (fd == T{}) continue;
        for (std::size_t m = 1, n = d; n <= cutoff; ++m, n += d) out[n] += fd * g[m];
    }
    return out;
}

// A-fold convolution of a kernel supported on [1, support].
CoefficientSeries fold_power(const std::vector<double>& kernel, std::size_t support, int folds, std::size_t cutoff,
                             std::string label) {
    CoefficientSeries acc(label, cutoff);
    for (std::size_t n = 1; n <= std::min(support, cutoff); ++n) acc[n] = kernel[n];
    for (int f = 1; f < folds; ++f) {
        CoefficientSeries next(label, cutoff);
        for (std::size_t d = 1; d <= std::min(support, cutoff); ++d) {
            const double kd = kernel[d];
            if (kd == 0.0) continue;
            for (std::size_t m = 1, n = d; n <= cutoff; ++m, n += d) next[n] += kd * acc[m];
        }
        acc = std::move(next);
    }
    return acc;
}

std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

FactorSieve::FactorSieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t(limit) + 1, 0) {
    if (limit < 1) throw DomainError("sieve limit must be positive");
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = i;
        for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = i;
    }
}

std::uint32_t FactorSieve::smallest_prime_factor(std::uint32_t n) const {
    if (n < 2 || n > limit_) throw DomainError("smallest_prime_factor: n out of range");
    return spf_[n];
}

std::vector<PrimePower> FactorSieve::factorize(std::uint32_t n) const {
    if (n == 0 || n > limit_) throw DomainError("factorize: n must be in [1, sieve limit]");
    std::vector<PrimePower> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

int FactorSieve::mobius(std::uint32_t n) const {
    int mu = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.exponent > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<std::uint32_t> FactorSieve::primes() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit_; ++i)
        if (spf_[i] == i) out.push_back(i);
    return out;
}

double prime_power_coeff(const Rational& alpha, int j) {
    if (j < 0) throw DomainError("prime_power_coeff: negative exponent");
    i128 num = 1;
    i128 den = 1;
    int i = 0;
    for (; i < j; ++i) {
        // (alpha + i)/(i + 1) = (r + i s)/(s (i + 1))
        const i128 f_num = i128(alpha.num) + i128(i) * alpha.den;
        const i128 f_den = i128(alpha.den) * (i + 1);
        if (f_num == 0) return 0.0;
        const i128 g1 = gcd128(num, f_den);
        const i128 g2 = gcd128(f_num, den);
        const i128 a = num / g1;
        const i128 b = f_num / g2;
        const i128 c = den / g2;
        const i128 d = f_den / g1;
        const auto mag = [](i128 v) { return v < 0 ? -v : v; };
        if (mag(a) > kExactLimit / std::max<i128>(mag(b), 1) || c > kExactLimit / std::max<i128>(d, 1)) break;
        num = a * b;
        den = c * d;
    }
    long double v = static_cast<long double>(num) / static_cast<long double>(den);
    const long double av = static_cast<long double>(alpha.num) / static_cast<long double>(alpha.den);
    for (; i < j; ++i) v *= (av + i) / (i + 1);
    return static_cast<double>(v);
}

double divisor_coeff(const FactorSieve& sieve, const Rational& alpha, std::uint32_t n) {
    double v = 1.0;
    for (const auto& pp : sieve.factorize(n)) v *= prime_power_coeff(alpha, pp.exponent);
    return v;
}

CoefficientSeries divisor_series(const FactorSieve& sieve, const Rational& alpha, std::size_t cutoff) {
    check_cutoff(cutoff);
    check_sieve(sieve, cutoff);
    std::vector<double> local(max_exponent(cutoff) + 1);
    for (std::size_t e = 0; e < local.size(); ++e) local[e] = prime_power_coeff(alpha, static_cast<int>(e));
    return build_multiplicative<double>(sieve, "d_" + alpha.str(), cutoff,
                                        [&](std::uint32_t, int e) { return local[e]; });
}

CoefficientSeries mobius_series(const FactorSieve& sieve, std::size_t cutoff) {
    check_cutoff(cutoff);
    check_sieve(sieve, cutoff);
    return build_multiplicative<double>(sieve, "mu", cutoff,
                                        [](std::uint32_t, int e) { return e == 1 ? -1.0 : 0.0; });
}

CoefficientSeries unit_series(std::size_t cutoff) {
    check_cutoff(cutoff);
    CoefficientSeries out("delta_1", cutoff);
    out[1] = 1.0;
    return out;
}

CoefficientSeries dirichlet_convolve(const CoefficientSeries& f, const CoefficientSeries& g, std::size_t cutoff) {
    return convolve_impl(f, g, cutoff);
}

ComplexSeries dirichlet_convolve(const ComplexSeries& f, const ComplexSeries& g, std::size_t cutoff) {
    return convolve_impl(f, g, cutoff);
}

namespace {
// min(floor(x), cutoff) without converting huge x to an integer
std::size_t support_limit(double x, std::size_t cutoff) {
    return std::floor(x) >= double(cutoff) ? cutoff : static_cast<std::size_t>(std::floor(x));
}
}  // namespace

CoefficientSeries weighted_poly_coeffs(const FactorSieve& sieve, int a_count, int b_denominator, double x,
                                       std::size_t cutoff) {
    if (!(x > 1.0)) throw DomainError("weighted_poly_coeffs requires x > 1");
    if (a_count < 1 || b_denominator < 1) throw DomainError("weighted_poly_coeffs requires A, B >= 1");
    check_cutoff(cutoff);
    check_sieve(sieve, cutoff);
    const std::size_t support = support_limit(x, cutoff);
    const auto base = divisor_series(sieve, Rational(1, b_denominator), support);
    const double log_x = std::log(x);
    std::vector<double> kernel(support + 1, 0.0);
    for (std::size_t n = 1; n <= support; ++n) kernel[n] = base[n] * std::log(x / double(n)) / log_x;
    return fold_power(kernel, support, a_count, cutoff,
                      "d_" + std::to_string(a_count) + "/" + std::to_string(b_denominator) + "(n;x=" + fmt_real(x) + ")");
}

CoefficientSeries mollifier_coeffs(const FactorSieve& sieve, int a_count, int b_denominator, double y,
                                   std::size_t cutoff) {
    if (!(y > 1.0)) throw DomainError("mollifier_coeffs requires y > 1");
    if (a_count < 1 || b_denominator < 1) throw DomainError("mollifier_coeffs requires A, B >= 1");
    check_cutoff(cutoff);
    check_sieve(sieve, cutoff);
    const std::size_t support = support_limit(y, cutoff);
    const auto base = divisor_series(sieve, Rational(1, b_denominator), support);
    const auto mu = mobius_series(sieve, support);
    const double log_y = std::log(y);
    std::vector<double> kernel(support + 1, 0.0);
    for (std::size_t n = 1; n <= support; ++n) {
        const double w = std::log(y / double(n)) / log_y;
        kernel[n] = base[n] * mu[n] * w * w;
    }
    auto out = fold_power(kernel, support, a_count, cutoff,
                          "d*_" + std::to_string(a_count) + "/" + std::to_string(b_denominator) + "(n;y=" + fmt_real(y) + ")");
    const double prefactor = std::ldexp(1.0, -a_count);
    for (auto& v : out.values) v *= prefactor;
    return out;
}

void ShiftVector::validate() const {
    if (shifts.empty()) throw DomainError("shift vector must be non-empty");
    for (const auto& w : shifts)
        if (w.real() < kMinShiftRealPart) throw DomainError("shift real part below -3/16");
}

ComplexSeries shifted_series(const FactorSieve& sieve, ShiftMode mode, const ShiftVector& primary, int s_param,
                             std::size_t cutoff, const ShiftVector& secondary) {
    if (s_param < 1) throw DomainError("shifted_series requires s >= 1");
    primary.validate();
    if (mode == ShiftMode::Psi)
        secondary.validate();
    else if (!secondary.empty())
        throw DomainError("secondary shifts are only used in psi mode");
    check_cutoff(cutoff);
    check_sieve(sieve, cutoff);

    // Factor kinds: divisor-type d_{1/2s}, or Mobius-twisted d_{1/s} mu.
    struct Factor {
        cplx shift;
        bool mobius;
    };
    std::vector<Factor> factors;
    const bool primary_mobius = mode == ShiftMode::Rho;
    for (const auto& w : primary.shifts) factors.push_back({w, primary_mobius});
    for (const auto& z : secondary.shifts) factors.push_back({z, true});

    const int emax = max_exponent(cutoff);
    std::vector<double> d_half(emax + 1), d_one(emax + 1);
    for (int e = 0; e <= emax; ++e) {
        d_half[e] = prime_power_coeff(Rational(1, 2 * s_param), e);
        d_one[e] = prime_power_coeff(Rational(1, s_param), e);
    }

    // Local factor at p: polynomial product over factors, truncated at p^e <= cutoff.
    auto local_values = [&](std::uint32_t p) {
        int top = 0;
        for (std::size_t v = p; v <= cutoff / p; v *= p) ++top;
        ++top;  // p^top <= cutoff
        std::vector<cplx> acc(top + 1, 0.0);
        acc[0] = 1.0;
        const double logp = std::log(double(p));
        for (const auto& f : factors) {
            std::vector<cplx> g(top + 1, 0.0);
            for (int e = 0; e <= top; ++e) {
                double c = f.mobius ? (e == 0 ? 1.0 : (e == 1 ? -d_one[1] : 0.0)) : d_half[e];
                if (c != 0.0) g[e] = c * std::exp(-f.shift * (e * logp));
            }
            std::vector<cplx> next(top + 1, 0.0);
            for (int i = 0; i <= top; ++i)
                for (int k = 0; i + k <= top; ++k) next[i + k] += acc[i] * g[k];
            acc = std::move(next);
        }
        return acc;
    };

    std::string label = mode == ShiftMode::Sigma ? "sigma" : (mode == ShiftMode::Rho ? "rho" : "psi");
    label += "[s=" + std::to_string(s_param) + ",k=" + std::to_string(primary.size());
    if (mode == ShiftMode::Psi) label += ",l=" + std::to_string(secondary.size());
    label += "]";

    std::unordered_map<std::uint32_t, std::vector<cplx>> cache;
    return build_multiplicative<cplx>(sieve, label, cutoff, [&](std::uint32_t p, int e) {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, local_values(p)).first;
        return it->second[e];
    });
}

void for_each_divisor_coeff(const Rational& alpha, std::uint64_t lo, std::uint64_t hi,
                            const std::function<void(std::uint64_t, double)>& visit) {
    if (lo == 0) throw DomainError("for_each_divisor_coeff: range must start at 1 or above");
    if (hi < lo) return;
    const auto root = static_cast<std::uint32_t>(std::sqrt(double(hi))) + 2;
    const FactorSieve small(root);
    const auto primes = small.primes();
    std::vector<double> local(66);
    for (int e = 0; e < 66; ++e) local[e] = prime_power_coeff(alpha, e);

    constexpr std::uint64_t kBlock = 1 << 18;
    std::vector<std::uint64_t> rest(kBlock);
    std::vector<double> value(kBlock);
    for (std::uint64_t start = lo; start <= hi; start += kBlock) {
        const std::uint64_t stop = std::min(hi, start + kBlock - 1);
        const std::size_t len = stop - start + 1;
        for (std::size_t i = 0; i < len; ++i) {
            rest[i] = start + i;
            value[i] = 1.0;
        }
        for (const std::uint32_t p : primes) {
            if (std::uint64_t(p) * p > stop) break;
            std::uint64_t first = ((start + p - 1) / p) * p;
            for (std::uint64_t n = first; n <= stop; n += p) {
                const std::size_t i = n - start;
                int e = 0;
                while (rest[i] % p == 0) {
                    rest[i] /= p;
                    ++e;
                }
                value[i] *= local[e];
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (rest[i] > 1) value[i] *= local[1];
            visit(start + i, value[i]);
        }
    }
}

}  // namespace fracmoment
