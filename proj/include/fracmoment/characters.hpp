// Dirichlet characters modulo a prime q.
//
// The group (Z/qZ)* is cyclic with generator g, so every character is
//   chi_j(a) = exp(2 pi i j dlog(a) / (q - 1)),   j = 0 .. q-2,
// with chi_0 principal. Characters are addressed by j only; values are
// computed from the discrete-log table, never stored as a q x q table.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracmoment/numeric.hpp"

namespace fracmoment {

/// Largest modulus accepted by CharacterTable.
inline constexpr std::int64_t kMaxModulus = 1'000'000;

enum class Parity { Even, Odd };

class CharacterTable {
public:
    /// Throws DomainError unless q is prime and 3 <= q <= 10^6.
    explicit CharacterTable(std::int64_t q);

    std::int64_t modulus() const { return q_; }
    std::int64_t order() const { return q_ - 1; }  // phi(q) = number of characters
    std::int64_t primitive_root() const { return g_; }

    /// dlog(a) in [0, q-2] with g^dlog(a) = a mod q. Throws if q | a.
    std::int64_t dlog(std::int64_t a) const;

    /// Parity bit: 0 when chi_j(-1) = 1, i.e. j even.
    int parity_bit(std::int64_t j) const { return static_cast<int>(j & 1); }
    Parity parity(std::int64_t j) const { return parity_bit(j) == 0 ? Parity::Even : Parity::Odd; }

    /// Index of the conjugate character.
    std::int64_t conjugate_index(std::int64_t j) const { return j == 0 ? 0 : q_ - 1 - j; }

    /// chi_j(a); 0 when q | a.
    cplx chi(std::int64_t j, std::int64_t a) const;

    /// exp(2 pi i k / (q - 1)) for k in [0, q-2].
    cplx root(std::int64_t k) const { return roots_[static_cast<std::size_t>(k)]; }

private:
    void check_index(std::int64_t j) const;
    std::int64_t reduce(std::int64_t a) const;

    std::int64_t q_;
    std::int64_t g_;
    std::vector<std::int32_t> dlog_;    // indexed by residue, dlog_[0] = -1
    std::vector<std::int32_t> power_;   // g^k mod q
    std::vector<cplx> roots_;

    friend std::vector<cplx> dft_all_characters(const CharacterTable&, std::span<const cplx>);
    friend std::vector<cplx> inverse_dft_all_characters(const CharacterTable&, std::span<const cplx>);
};

/// sum over all characters of chi(a): phi(q) if a = 1 mod q, else 0.
/// Throws DomainError if q | a.
cplx character_sum(const CharacterTable& table, std::int64_t a);

/// Sum of chi(a) over the non-principal characters of the given parity,
/// by direct filtered summation.
cplx parity_restricted_sum(const CharacterTable& table, Parity parity, std::int64_t a);

/// Same sum through the projector (1 +- chi(-1))/2 applied to the full
/// character sum, minus the principal term for the even case.
cplx parity_restricted_sum_projector(const CharacterTable& table, Parity parity, std::int64_t a);

/// out[j] = sum_{a=1}^{q-1} coeffs[a-1] chi_j(a) for every j, in O(q log q).
/// coeffs has length q-1 and is indexed by residue minus one.
std::vector<cplx> dft_all_characters(const CharacterTable& table, std::span<const cplx> coeffs);

/// Inverse of dft_all_characters: recovers coeffs from the per-character sums.
std::vector<cplx> inverse_dft_all_characters(const CharacterTable& table, std::span<const cplx> sums);

/// Direct O(q^2) evaluation of the same sums, for verification.
std::vector<cplx> naive_all_characters(const CharacterTable& table, std::span<const cplx> coeffs);

struct DiagonalReport {
    cplx lhs;
    cplx rhs;
    double diff;
    double scale;
};

/// Checks sum_chi (sum_m c_m chi(m)) (sum_n e_n conj chi(n))
///      = phi(q) sum_{m = n mod q} c_m e_n.
/// c and e are indexed by n (entry 0 unused, must be zero); entries at
/// multiples of q must vanish, otherwise DomainError.
DiagonalReport diagonal_decomposition_check(const CharacterTable& table, std::span<const cplx> c,
                                            std::span<const cplx> e);

}  // namespace fracmoment
