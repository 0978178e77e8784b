#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fracmoment/multiplicative.hpp"
#include "oracles.hpp"

using namespace fracmoment;

TEST_CASE("factorize examples and errors") {
    const FactorSieve sieve(1000);
    CHECK(sieve.factorize(1).empty());
    CHECK((sieve.factorize(12) == std::vector<PrimePower>{{2, 2}, {3, 1}}));
    CHECK((sieve.factorize(97) == std::vector<PrimePower>{{97, 1}}));
    CHECK_THROWS_AS(sieve.factorize(0), DomainError);
    CHECK_THROWS_AS(sieve.factorize(1001), DomainError);
}

TEST_CASE("factorize agrees with trial division and reconstructs n") {
    const FactorSieve sieve(20000);
    for (std::uint32_t n = 1; n <= 20000; ++n) {
        const auto f = sieve.factorize(n);
        const auto ref = oracle::trial_factor(n);
        REQUIRE(f.size() == ref.size());
        std::uint64_t prod = 1;
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(f[i].prime == ref[i].first);
            CHECK(f[i].exponent == ref[i].second);
            if (i) CHECK(f[i].prime > f[i - 1].prime);
            for (int e = 0; e < f[i].exponent; ++e) prod *= f[i].prime;
        }
        CHECK(prod == n);
    }
    for (std::uint32_t p : {2u, 3u, 9973u}) CHECK(sieve.smallest_prime_factor(p) == p);
}

TEST_CASE("divisor_coeff examples") {
    const FactorSieve sieve(1000);
    CHECK(divisor_coeff(sieve, Rational(1), 360) == doctest::Approx(1.0));
    CHECK(divisor_coeff(sieve, Rational(1, 2), 2) == doctest::Approx(0.5));
    CHECK(divisor_coeff(sieve, Rational(1, 2), 4) == doctest::Approx(0.375));
}

TEST_CASE("divisor_coeff matches the binomial-series oracle") {
    const FactorSieve sieve(5000);
    for (const auto& alpha : {Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(-1, 4), Rational(7, 3)})
        for (std::uint32_t n = 1; n <= 5000; n += 7)
            CHECK(divisor_coeff(sieve, alpha, n) ==
                  doctest::Approx(oracle::d_alpha(alpha.value(), n)).epsilon(1e-12));
}

TEST_CASE("d_alpha is multiplicative on coprime pairs") {
    const FactorSieve sieve(1'000'000);
    const Rational alpha(1, 3);
    for (std::uint32_t m = 1; m <= 1000; m += 13)
        for (std::uint32_t n = 1; n <= 1000; n += 17) {
            if (std::gcd(m, n) != 1) continue;
            const double lhs = divisor_coeff(sieve, alpha, m * n);
            const double rhs = divisor_coeff(sieve, alpha, m) * divisor_coeff(sieve, alpha, n);
            CHECK(std::abs(lhs - rhs) <= 1e-15 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("dirichlet_convolve examples") {
    const FactorSieve sieve(100);
    const auto half = divisor_series(sieve, Rational(1, 2), 100);
    const auto sq = dirichlet_convolve(half, half, 100);
    CHECK(sq[4] == doctest::Approx(1.0));
    const auto ones = divisor_series(sieve, Rational(1), 100);
    CHECK(dirichlet_convolve(ones, ones, 100)[6] == doctest::Approx(4.0));
    const auto id = dirichlet_convolve(unit_series(100), half, 100);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(id[n] == half[n]);
    CHECK_THROWS_AS(dirichlet_convolve(half, unit_series(50), 100), DomainError);
}

TEST_CASE("s-fold self-convolution of d_{1/s} is all ones") {
    const std::size_t n_max = 10'000;
    const FactorSieve sieve(n_max);
    for (int s : {2, 3, 5}) {
        const auto base = divisor_series(sieve, Rational(1, s), n_max);
        auto acc = base;
        for (int i = 1; i < s; ++i) acc = dirichlet_convolve(acc, base, n_max);
        double worst = 0.0;
        for (std::size_t n = 1; n <= n_max; ++n) worst = std::max(worst, std::abs(acc[n] - 1.0));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("exponents add under convolution") {
    const std::size_t n_max = 10'000;
    const FactorSieve sieve(n_max);
    const std::pair<Rational, Rational> pairs[] = {
        {Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}, {Rational(1, 4), Rational(1, 4)}};
    for (const auto& [a, b] : pairs) {
        const auto conv = dirichlet_convolve(divisor_series(sieve, a, n_max), divisor_series(sieve, b, n_max), n_max);
        const auto sum = divisor_series(sieve, a + b, n_max);
        for (std::size_t n = 1; n <= n_max; ++n) CHECK(std::abs(conv[n] - sum[n]) < 1e-10);
    }
}

TEST_CASE("weighted_poly_coeffs examples") {
    const FactorSieve sieve(100);
    CHECK(weighted_poly_coeffs(sieve, 1, 1, 10.0, 20)[5] == doctest::Approx(std::log(2.0) / std::log(10.0)));
    CHECK(weighted_poly_coeffs(sieve, 2, 2, 4.0, 16)[2] == doctest::Approx(0.5));
    CHECK(weighted_poly_coeffs(sieve, 1, 1, 10.0, 20)[11] == 0.0);
    CHECK(weighted_poly_coeffs(sieve, 3, 2, 7.5, 50)[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(weighted_poly_coeffs(sieve, 1, 1, 1.0, 10), DomainError);
}

TEST_CASE("weighted_poly_coeffs equals a brute-force sum over ordered pairs") {
    const double x = 37.3;
    const std::size_t cutoff = 37 * 37;
    const FactorSieve sieve(cutoff);
    const auto got = weighted_poly_coeffs(sieve, 2, 3, x, cutoff);
    std::vector<double> ref(cutoff + 1, 0.0);
    for (std::uint64_t a = 1; a <= 37; ++a)
        for (std::uint64_t b = 1; b <= 37; ++b)
            ref[a * b] += oracle::d_alpha(1.0 / 3, a) * std::log(x / a) / std::log(x) * oracle::d_alpha(1.0 / 3, b) *
                          std::log(x / b) / std::log(x);
    for (std::size_t n = 1; n <= cutoff; ++n) CHECK(got[n] == doctest::Approx(ref[n]).epsilon(1e-12));
}

TEST_CASE("weighted coefficients approach d_{A/B} as x grows") {
    // Each decomposition carries prod(1 - log n_i / log x), so the deficit t - ab/L^2 sits in [t - t^2/4, t]
    // with t = log n / log x. At x = n^10 that is about 0.1, far above 1e-3.
    const FactorSieve sieve(100);
    for (std::uint32_t n : {6u, 12u, 30u}) {
        const double exact = divisor_coeff(sieve, Rational(2, 3), n);
        double prev = 1.0;
        for (double power : {10.0, 30.0, 100.0}) {
            const double x = std::pow(double(n), power);
            const double deficit = 1.0 - weighted_poly_coeffs(sieve, 2, 3, x, n)[n] / exact;
            const double t = 1.0 / power;
            CHECK(deficit <= t + 1e-12);
            CHECK(deficit >= t - t * t / 4 - 1e-12);
            CHECK(deficit < prev);
            prev = deficit;
        }
    }
}

TEST_CASE("mollifier_coeffs examples") {
    const FactorSieve sieve(100);
    CHECK(mollifier_coeffs(sieve, 1, 1, 10.0, 10)[1] == doctest::Approx(0.5));
    const double w = std::log(5.0) / std::log(10.0);
    CHECK(mollifier_coeffs(sieve, 1, 2, 10.0, 10)[2] == doctest::Approx(-0.25 * w * w));
    CHECK(mollifier_coeffs(sieve, 1, 1, 10.0, 10)[4] == 0.0);
    CHECK(mollifier_coeffs(sieve, 2, 1, 10.0, 100)[1] == doctest::Approx(0.25));
    CHECK_THROWS_AS(mollifier_coeffs(sieve, 1, 1, 0.5, 10), DomainError);
}

TEST_CASE("mollifier_coeffs brute force, A = 2") {
    const double y = 23.7;
    const std::size_t cutoff = 23 * 23;
    const FactorSieve sieve(cutoff);
    const auto got = mollifier_coeffs(sieve, 2, 2, y, cutoff);
    std::vector<double> ref(cutoff + 1, 0.0);
    auto kernel = [&](std::uint64_t m) {
        const double w = std::log(y / m) / std::log(y);
        return oracle::d_alpha(0.5, m) * oracle::mobius(m) * w * w;
    };
    for (std::uint64_t a = 1; a <= 23; ++a)
        for (std::uint64_t b = 1; b <= 23; ++b) ref[a * b] += 0.25 * kernel(a) * kernel(b);
    for (std::size_t n = 1; n <= cutoff; ++n) CHECK(got[n] == doctest::Approx(ref[n]).epsilon(1e-12));
}

TEST_CASE("shifted_series examples") {
    const FactorSieve sieve(100);
    CHECK(shifted_series(sieve, ShiftMode::Sigma, {0.0}, 1, 20)[7].real() == doctest::Approx(0.5));
    CHECK(shifted_series(sieve, ShiftMode::Rho, {0.0}, 1, 20)[2].real() == doctest::Approx(-1.0));
    CHECK(shifted_series(sieve, ShiftMode::Sigma, {1.0, 1.0}, 1, 20)[2].real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(shifted_series(sieve, ShiftMode::Sigma, ShiftVector{}, 1, 20), DomainError);
    CHECK_THROWS_AS(shifted_series(sieve, ShiftMode::Sigma, {-0.5}, 1, 20), DomainError);
    CHECK_THROWS_AS(shifted_series(sieve, ShiftMode::Psi, {0.0}, 1, 20), DomainError);
    CHECK_NOTHROW(shifted_series(sieve, ShiftMode::Sigma, {-3.0 / 16.0}, 1, 20));
}

TEST_CASE("zero shifts reproduce the unshifted convolutions") {
    const std::size_t n_max = 2000;
    const FactorSieve sieve(n_max);
    const auto sigma = shifted_series(sieve, ShiftMode::Sigma, {0.0, 0.0, 0.0}, 2, n_max);
    const auto d = divisor_series(sieve, Rational(1, 4), n_max);
    const auto d3 = dirichlet_convolve(dirichlet_convolve(d, d, n_max), d, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) CHECK(sigma[n].real() == doctest::Approx(d3[n]).epsilon(1e-12));

    const auto rho = shifted_series(sieve, ShiftMode::Rho, {0.0, 0.0}, 3, n_max);
    auto base = divisor_series(sieve, Rational(1, 3), n_max);
    const auto mu = mobius_series(sieve, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) base[n] *= mu[n];
    const auto r2 = dirichlet_convolve(base, base, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) CHECK(rho[n].real() == doctest::Approx(r2[n]).epsilon(1e-12));
}

TEST_CASE("complex shifts match ordered-factorization enumeration") {
    const std::size_t n_max = 300;
    const FactorSieve sieve(n_max);
    const cplx w1(0.3, 1.2), w2(-0.1, -0.4), z1(0.2, 0.5);
    const auto sigma = shifted_series(sieve, ShiftMode::Sigma, {w1, w2}, 2, n_max);
    const auto psi = shifted_series(sieve, ShiftMode::Psi, {w1, w2}, 2, n_max, {z1});
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        cplx ref = 0.0, ref_psi = 0.0;
        for (std::uint64_t a = 1; a <= n; ++a) {
            if (n % a) continue;
            const std::uint64_t b = n / a;
            ref += oracle::d_alpha(0.25, a) * std::pow(double(a), -w1) * oracle::d_alpha(0.25, b) *
                   std::pow(double(b), -w2);
            for (std::uint64_t c = 1; c <= b; ++c) {
                if (b % c) continue;
                const std::uint64_t e = b / c;
                ref_psi += oracle::d_alpha(0.25, a) * std::pow(double(a), -w1) * oracle::d_alpha(0.25, c) *
                           std::pow(double(c), -w2) * oracle::d_alpha(0.5, e) * double(oracle::mobius(e)) *
                           std::pow(double(e), -z1);
            }
        }
        CHECK(std::abs(sigma[n] - ref) < 1e-12);
        CHECK(std::abs(psi[n] - ref_psi) < 1e-12);
    }
}

TEST_CASE("segmented divisor enumeration matches the dense sieve") {
    const FactorSieve sieve(300'000);
    const auto dense = divisor_series(sieve, Rational(1, 4), 300'000);
    std::uint64_t expect = 250'000;
    for_each_divisor_coeff(Rational(1, 4), 250'000, 300'000, [&](std::uint64_t n, double v) {
        CHECK(n == expect);
        CHECK(v == doctest::Approx(dense[n]).epsilon(1e-14));
        ++expect;
    });
    CHECK(expect == 300'001);
}
