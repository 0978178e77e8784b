#include <random>

#include "doctest.h"
#include "fracmoment/characters.hpp"
#include "fracmoment/fft.hpp"
#include "oracles.hpp"

using namespace fracmoment;

namespace {

std::vector<cplx> random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& c : v) c = {u(rng), u(rng)};
    return v;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("table construction examples") {
    const CharacterTable t5(5);
    CHECK(t5.primitive_root() == 2);
    CHECK(t5.dlog(4) == 2);
    const CharacterTable t3(3);
    CHECK(t3.primitive_root() == 2);
    CHECK(t3.order() == 2);
    CHECK_THROWS_AS(CharacterTable(4), DomainError);
    CHECK_THROWS_AS(CharacterTable(2), DomainError);
    CHECK_THROWS_AS(CharacterTable(1'000'003), DomainError);
}

TEST_CASE("primitive root is the smallest and dlog inverts powering") {
    for (std::int64_t q : {7, 11, 23, 101, 1009}) {
        const CharacterTable t(q);
        const auto g = t.primitive_root();
        for (std::int64_t h = 2; h < g; ++h) {
            bool generates = true;
            for (std::int64_t d = 1; d < q - 1; ++d)
                if ((q - 1) % d == 0 && oracle::powmod(h, d, q) == 1) generates = false;
            CHECK_FALSE(generates);
        }
        for (std::int64_t a = 1; a < q; ++a) CHECK(oracle::powmod(g, t.dlog(a), q) == a);
    }
}

TEST_CASE("chi_value examples") {
    const CharacterTable t(5);
    CHECK(std::abs(t.chi(0, 3) - cplx(1.0)) < 1e-15);
    for (std::int64_t j = 0; j < 4; ++j) CHECK(t.chi(j, 5) == cplx(0.0));
    CHECK(std::abs(t.chi(2, 2) - cplx(-1.0)) < 1e-15);
}

TEST_CASE("the middle character is the Legendre symbol") {
    for (std::int64_t q : {5, 13, 101, 1009}) {
        const CharacterTable t(q);
        for (std::int64_t a = 1; a < 3 * q; ++a)
            CHECK(std::abs(t.chi((q - 1) / 2, a) - cplx(oracle::legendre(a, q))) < 1e-12);
    }
}

TEST_CASE("complete multiplicativity and conjugation") {
    const CharacterTable t(31);
    for (std::int64_t j = 0; j < 30; ++j)
        for (std::int64_t a = 1; a < 31; ++a) {
            CHECK(std::abs(t.chi(t.conjugate_index(j), a) - std::conj(t.chi(j, a))) < 1e-14);
            CHECK(std::abs(std::abs(t.chi(j, a)) - 1.0) < 1e-14);
            for (std::int64_t b = 1; b < 31; b += 3)
                CHECK(std::abs(t.chi(j, a * b) - t.chi(j, a) * t.chi(j, b)) < 1e-13);
        }
}

TEST_CASE("parity bit agrees with chi(-1) and splits characters evenly") {
    for (std::int64_t q : {3, 7, 11, 101}) {
        const CharacterTable t(q);
        int even = 0;
        for (std::int64_t j = 0; j < q - 1; ++j) {
            const double minus_one = t.chi(j, q - 1).real();
            CHECK(std::abs(std::abs(minus_one) - 1.0) < 1e-12);
            CHECK((minus_one > 0) == (t.parity(j) == Parity::Even));
            even += t.parity(j) == Parity::Even;
        }
        CHECK(even == (q - 1) / 2);
    }
}

TEST_CASE("character_sum examples") {
    const CharacterTable t(7);
    CHECK(std::abs(character_sum(t, 1) - cplx(6.0)) < 1e-12);
    CHECK(std::abs(character_sum(t, 2)) < 1e-12);
    CHECK(std::abs(character_sum(t, 8) - cplx(6.0)) < 1e-12);
    CHECK_THROWS_AS(character_sum(t, 14), DomainError);
}

TEST_CASE("parity_restricted_sum examples") {
    const CharacterTable t(7);
    CHECK(std::abs(parity_restricted_sum(t, Parity::Even, 3) - cplx(-1.0)) < 1e-12);
    CHECK(std::abs(parity_restricted_sum(t, Parity::Even, 6) - cplx(2.0)) < 1e-12);
    CHECK(std::abs(parity_restricted_sum(t, Parity::Odd, 6) - cplx(-3.0)) < 1e-12);
    CHECK(std::abs(parity_restricted_sum(t, Parity::Odd, 1) - cplx(3.0)) < 1e-12);
    CHECK_THROWS_AS(parity_restricted_sum(t, Parity::Odd, 7), DomainError);
}

TEST_CASE("projector and filtered sums agree for q up to 101") {
    for (std::int64_t q = 3; q <= 101; ++q) {
        if (!is_prime(q)) continue;
        const CharacterTable t(q);
        for (std::int64_t a = 1; a < 2 * q; ++a) {
            if (a % q == 0) continue;
            for (auto p : {Parity::Even, Parity::Odd})
                CHECK(std::abs(parity_restricted_sum(t, p, a) - parity_restricted_sum_projector(t, p, a)) < 1e-9);
        }
    }
}

TEST_CASE("dft_all_characters special inputs") {
    const CharacterTable t(101);
    std::vector<cplx> delta(100, 0.0);
    delta[0] = 1.0;
    for (const auto& v : dft_all_characters(t, delta)) CHECK(std::abs(v - cplx(1.0)) < 1e-12);
    std::vector<cplx> ones(100, 1.0);
    const auto out = dft_all_characters(t, ones);
    CHECK(std::abs(out[0] - cplx(100.0)) < 1e-10);
    for (std::size_t j = 1; j < out.size(); ++j) CHECK(std::abs(out[j]) < 1e-10);
    CHECK_THROWS_AS(dft_all_characters(t, std::vector<cplx>(99)), DomainError);
}

TEST_CASE("dft_all_characters matches direct character evaluation") {
    for (std::int64_t q : {3, 5, 17, 257, 1009}) {
        const CharacterTable t(q);
        const auto c = random_coeffs(static_cast<std::size_t>(q - 1), static_cast<std::uint64_t>(q));
        std::vector<cplx> ref(c.size());
        for (std::int64_t j = 0; j < q - 1; ++j) {
            cplx acc = 0.0;
            for (std::int64_t a = 1; a < q; ++a) acc += c[static_cast<std::size_t>(a - 1)] * t.chi(j, a);
            ref[static_cast<std::size_t>(j)] = acc;
        }
        CHECK(max_abs_diff(dft_all_characters(t, c), ref) < 1e-9);
    }
}

TEST_CASE("dft at q = 10007 matches the naive double loop") {
    const CharacterTable t(10007);
    const auto c = random_coeffs(10006, 99);
    CHECK(max_abs_diff(dft_all_characters(t, c), naive_all_characters(t, c)) < 1e-8);
}

TEST_CASE("inverse dft round trip") {
    for (std::int64_t q : {7, 1009, 10007}) {
        const CharacterTable t(q);
        const auto c = random_coeffs(static_cast<std::size_t>(q - 1), 5);
        CHECK(max_abs_diff(inverse_dft_all_characters(t, dft_all_characters(t, c)), c) < 1e-9);
    }
}

TEST_CASE("raw dft against an independent O(n^2) transform") {
    for (std::size_t n : {1u, 2u, 6u, 16u, 100u, 1008u, 1023u}) {
        const auto v = random_coeffs(n, n);
        for (auto sign : {FftSign::Negative, FftSign::Positive})
            CHECK(max_abs_diff(dft(v, sign), oracle::naive_dft(v, static_cast<int>(sign))) < 1e-9);
    }
}

TEST_CASE("diagonal decomposition examples") {
    const CharacterTable t(7);
    std::vector<cplx> c(7, 0.0), e(7, 0.0);
    c[2] = 1.0;
    e[2] = 1.0;
    auto r = diagonal_decomposition_check(t, c, e);
    CHECK(std::abs(r.lhs - cplx(6.0)) < 1e-12);
    CHECK(std::abs(r.rhs - cplx(6.0)) < 1e-12);
    e[2] = 0.0;
    e[3] = 1.0;
    r = diagonal_decomposition_check(t, c, e);
    CHECK(std::abs(r.lhs) < 1e-12);
    CHECK(std::abs(r.rhs) < 1e-12);
}

TEST_CASE("diagonal decomposition on random coefficients") {
    for (std::int64_t q : {101, 1009}) {
        const CharacterTable t(q);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto c = random_coeffs(static_cast<std::size_t>(q), seed);
            auto e = random_coeffs(static_cast<std::size_t>(q), seed + 100);
            c[0] = e[0] = 0.0;
            const auto r = diagonal_decomposition_check(t, c, e);
            CHECK(r.diff < 1e-8 * std::max(1.0, r.scale));
        }
    }
}
