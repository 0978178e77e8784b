#include "fracmoment/special.hpp"

#include <array>
#include <cmath>

namespace fracmoment {

namespace {

// B_2, B_4, ..., B_32
constexpr std::array<double, 16> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
};

constexpr int kEulerMaclaurinTerms = 15;

int em_shift(cplx s) {
    return 20 + static_cast<int>(std::ceil(std::abs(s)));
}

// Coefficient B_{2j}/(2j)! * (s)_{2j-1} * base^{-s-2j+1}, j = 1..M, accumulated.
struct EmTail {
    cplx sum;
    cplx next;  // first omitted term
};

EmTail em_tail(cplx s, double base) {
    const cplx base_pow = std::exp(-s * std::log(base));  // base^{-s}
    cplx rising = s;                                       // (s)_{2j-1}
    double factorial = 2.0;                                // (2j)!
    double inv_pow = 1.0 / base;                           // base^{-(2j-1)}
    cplx sum = 0.0;
    cplx term = 0.0;
    for (int j = 1; j <= kEulerMaclaurinTerms + 1; ++j) {
        term = kBernoulliEven[j - 1] / factorial * rising * base_pow * inv_pow;
        if (j == kEulerMaclaurinTerms + 1) break;
        sum += term;
        rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
        factorial *= double(2 * j + 1) * double(2 * j + 2);
        inv_pow /= base * base;
    }
    return {sum, term};
}

}  // namespace

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma at a non-positive integer");
    cplx shift_log = 0.0;
    while (z.real() < 15.0) {
        shift_log += std::log(z);
        z += 1.0;
    }
    // Stirling series with B_{2k}/(2k(2k-1) z^{2k-1}), k = 1..10.
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift_log;
}

cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta requires a in (0, 1]");
    if (s.real() <= -1.0) throw DomainError("hurwitz_zeta requires Re s > -1");
    if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta has a pole at s = 1");
    const int n_shift = em_shift(s);
    ComplexCompensatedSum head;
    for (int k = 0; k < n_shift; ++k) head += std::exp(-s * std::log(k + a));
    const double base = n_shift + a;
    const cplx base_pow = std::exp(-s * std::log(base));
    cplx result = head.value() + base * base_pow / (s - 1.0) + 0.5 * base_pow;
    result += em_tail(s, base).sum;
    return result;
}

cplx riemann_zeta(cplx s) {
    return hurwitz_zeta(s, 1.0);
}

double hurwitz_remainder_bound(cplx s, double a) {
    const double base = em_shift(s) + a;
    const EmTail tail = em_tail(s, base);
    const double sigma = s.real() + 2.0 * kEulerMaclaurinTerms + 1.0;
    return std::abs(tail.next) * std::abs(s + double(2 * kEulerMaclaurinTerms + 1)) / sigma;
}

}  // namespace fracmoment
