#include "fracmoment/characters.hpp"

#include <algorithm>
#include <cmath>

#include "fracmoment/fft.hpp"

namespace fracmoment {

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::int64_t smallest_primitive_root(std::int64_t q) {
    const std::int64_t n = q - 1;
    std::vector<std::int64_t> factors;
    std::int64_t m = n;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            factors.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) factors.push_back(m);
    for (std::int64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (const auto p : factors)
            if (powmod(g, n / p, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;  // q = 2 only; excluded by the constructor
}

}  // namespace

CharacterTable::CharacterTable(std::int64_t q) : q_(q) {
    if (q < 3 || q > kMaxModulus) throw DomainError("modulus must satisfy 3 <= q <= 10^6");
    if (!is_prime(q)) throw DomainError("modulus must be prime, got " + std::to_string(q));
    g_ = smallest_primitive_root(q);
    const auto n = static_cast<std::size_t>(q - 1);
    dlog_.assign(static_cast<std::size_t>(q), -1);
    power_.resize(n);
    std::int64_t v = 1;
    for (std::size_t k = 0; k < n; ++k) {
        power_[k] = static_cast<std::int32_t>(v);
        dlog_[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(k);
        v = v * g_ % q;
    }
    roots_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        roots_[k] = {std::cos(angle), std::sin(angle)};
    }
}

std::int64_t CharacterTable::reduce(std::int64_t a) const {
    a %= q_;
    return a < 0 ? a + q_ : a;
}

void CharacterTable::check_index(std::int64_t j) const {
    if (j < 0 || j >= q_ - 1) throw DomainError("character index out of range");
}

std::int64_t CharacterTable::dlog(std::int64_t a) const {
    const auto r = reduce(a);
    if (r == 0) throw DomainError("dlog undefined for multiples of q");
    return dlog_[static_cast<std::size_t>(r)];
}

cplx CharacterTable::chi(std::int64_t j, std::int64_t a) const {
    check_index(j);
    const auto r = reduce(a);
    if (r == 0) return 0.0;
    const auto k = (j * dlog_[static_cast<std::size_t>(r)]) % (q_ - 1);
    return roots_[static_cast<std::size_t>(k)];
}

cplx character_sum(const CharacterTable& table, std::int64_t a) {
    if (a % table.modulus() == 0) throw DomainError("character_sum requires gcd(a, q) = 1");
    ComplexCompensatedSum acc;
    for (std::int64_t j = 0; j < table.order(); ++j) acc += table.chi(j, a);
    return acc.value();
}

cplx parity_restricted_sum(const CharacterTable& table, Parity parity, std::int64_t a) {
    if (a % table.modulus() == 0) throw DomainError("parity_restricted_sum requires gcd(a, q) = 1");
    ComplexCompensatedSum acc;
    for (std::int64_t j = 1; j < table.order(); ++j)
        if (table.parity(j) == parity) acc += table.chi(j, a);
    return acc.value();
}

cplx parity_restricted_sum_projector(const CharacterTable& table, Parity parity, std::int64_t a) {
    if (a % table.modulus() == 0) throw DomainError("parity_restricted_sum requires gcd(a, q) = 1");
    const double sign = parity == Parity::Even ? 1.0 : -1.0;
    ComplexCompensatedSum acc;
    for (std::int64_t j = 0; j < table.order(); ++j)
        acc += 0.5 * (1.0 + sign * table.chi(j, -1)) * table.chi(j, a);
    cplx v = acc.value();
    if (parity == Parity::Even) v -= 1.0;
    return v;
}

std::vector<cplx> dft_all_characters(const CharacterTable& table, std::span<const cplx> coeffs) {
    const auto n = static_cast<std::size_t>(table.order());
    if (coeffs.size() != n) throw DomainError("dft_all_characters: coefficient length must be q-1");
    // Reorder by discrete log: b[k] = c_{g^k}; then out[j] = sum_k b[k] e^{2 pi i jk/n}.
    std::vector<cplx> b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = coeffs[static_cast<std::size_t>(table.power_[k]) - 1];
    return dft(b, FftSign::Positive);
}

std::vector<cplx> inverse_dft_all_characters(const CharacterTable& table, std::span<const cplx> sums) {
    const auto n = static_cast<std::size_t>(table.order());
    if (sums.size() != n) throw DomainError("inverse_dft_all_characters: length must be q-1");
    const auto b = dft(sums, FftSign::Negative);
    std::vector<cplx> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) out[static_cast<std::size_t>(table.power_[k]) - 1] = b[k] * scale;
    return out;
}

std::vector<cplx> naive_all_characters(const CharacterTable& table, std::span<const cplx> coeffs) {
    const auto n = table.order();
    if (static_cast<std::int64_t>(coeffs.size()) != n) throw DomainError("naive_all_characters: length must be q-1");
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        ComplexCompensatedSum acc;
        for (std::int64_t a = 1; a <= n; ++a) acc += coeffs[static_cast<std::size_t>(a - 1)] * table.chi(j, a);
        out[static_cast<std::size_t>(j)] = acc.value();
    }
    return out;
}

DiagonalReport diagonal_decomposition_check(const CharacterTable& table, std::span<const cplx> c,
                                            std::span<const cplx> e) {
    const auto q = table.modulus();
    const auto n = static_cast<std::size_t>(table.order());
    // Fold each array onto residues; reject mass on multiples of q.
    auto fold = [&](std::span<const cplx> v, const char* name) {
        std::vector<cplx> r(n, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (static_cast<std::int64_t>(i) % q == 0) {
                if (v[i] != cplx(0.0)) throw DomainError(std::string(name) + " has support on a multiple of q");
                continue;
            }
            r[static_cast<std::size_t>(static_cast<std::int64_t>(i) % q) - 1] += v[i];
        }
        return r;
    };
    const auto cr = fold(c, "c");
    const auto er = fold(e, "e");

    // lhs through the group DFT: sum_j C_j * conj(E~_j), E~_j = sum_n conj(e_n) chi_j(n).
    std::vector<cplx> er_conj(n);
    for (std::size_t i = 0; i < n; ++i) er_conj[i] = std::conj(er[i]);
    const auto cs = dft_all_characters(table, cr);
    const auto es = dft_all_characters(table, er_conj);
    ComplexCompensatedSum lhs;
    for (std::size_t j = 0; j < n; ++j) lhs += cs[j] * std::conj(es[j]);

    // rhs straight from the residue classes.
    ComplexCompensatedSum rhs;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rhs += cr[i] * er[i];
        scale += std::abs(cr[i]) * std::abs(er[i]);
    }
    const cplx rhs_v = static_cast<double>(n) * rhs.value();
    scale *= static_cast<double>(n);
    double c_mass = 0.0, e_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c_mass += std::abs(cr[i]);
        e_mass += std::abs(er[i]);
    }
    scale = std::max({scale, c_mass * e_mass, 1.0});
    return {lhs.value(), rhs_v, std::abs(lhs.value() - rhs_v), scale};
}

}  // namespace fracmoment
