#include "fracmoment/fft.hpp"

#include <bit>
#include <cmath>

namespace fracmoment {

namespace {

// exp(sign * 2 pi i k / n) with k reduced mod n first.
cplx unit_root(std::uint64_t k, std::uint64_t n, int sign) {
    k %= n;
    const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), sign * std::sin(angle)};
}

void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles for the largest stage; smaller stages stride through them.
    std::vector<cplx> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) tw[k] = unit_root(k, n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + half] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> in, FftSign sign_enum) {
    const int sign = static_cast<int>(sign_enum);
    const std::size_t n = in.size();
    if (n == 0) return {};
    if (std::has_single_bit(n)) {
        std::vector<cplx> a(in.begin(), in.end());
        fft_pow2(a, sign);
        return a;
    }
    // Bluestein: jk = (j^2 + k^2 - (k - j)^2) / 2, chirp w_m = exp(sign i pi m^2 / n).
    // m^2 is reduced mod 2n in integers so the chirp angle stays exact.
    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        chirp[k] = unit_root(sq, 2 * n, sign);
    }
    std::vector<cplx> a(m, 0.0), b(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) a[k] = in[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, +1);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
    return out;
}

std::vector<cplx> dft_naive(std::span<const cplx> in, FftSign sign_enum) {
    const int sign = static_cast<int>(sign_enum);
    const std::size_t n = in.size();
    std::vector<cplx> roots(n);
    for (std::size_t k = 0; k < n; ++k) roots[k] = unit_root(k, n, sign);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexCompensatedSum acc;
        for (std::size_t j = 0; j < n; ++j) acc += in[j] * roots[(static_cast<std::uint64_t>(j) * k) % n];
        out[k] = acc.value();
    }
    return out;
}

}  // namespace fracmoment
