// Special functions used by the L-value oracle and the contour bench.
#pragma once

#include "fracmoment/numeric.hpp"

namespace fracmoment {

/// log Gamma(z) for complex z off the non-positive integers. The imaginary
/// part is a continuous-in-z choice, not necessarily the principal branch;
/// exp(log_gamma(z)) is always Gamma(z).
cplx log_gamma(cplx z);

/// Hurwitz zeta(s, a) by Euler-Maclaurin summation, for Re s > -1 and
/// a in (0, 1]. Throws PoleError at s = 1.
cplx hurwitz_zeta(cplx s, double a);

/// Riemann zeta(s) = hurwitz_zeta(s, 1).
cplx riemann_zeta(cplx s);

/// Upper bound on the truncation error of the Euler-Maclaurin evaluation
/// used by hurwitz_zeta at (s, a).
double hurwitz_remainder_bound(cplx s, double a);

}  // namespace fracmoment
