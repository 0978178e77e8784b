// Complex DFT of arbitrary length: iterative radix-2 for powers of two,
// Bluestein's chirp-z reduction otherwise.
#pragma once

#include <span>
#include <vector>

#include "fracmoment/numeric.hpp"

namespace fracmoment {

enum class FftSign { Negative = -1, Positive = +1 };

/// out[k] = sum_j in[j] exp(sign * 2 pi i j k / n), unnormalized.
std::vector<cplx> dft(std::span<const cplx> in, FftSign sign);

/// O(n^2) reference transform with the same convention.
std::vector<cplx> dft_naive(std::span<const cplx> in, FftSign sign);

}  // namespace fracmoment
