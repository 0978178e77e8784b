// Self-contained verification runs behind `fracmoment verify <check>`.
// Each returns a JSON detail block and a pass flag at fixed tolerances.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracmoment/report.hpp"

namespace fracmoment {

struct CheckResult {
    std::string name;
    bool pass = false;
    Json details;
};

CheckResult check_convolution(const std::vector<int>& s_values, std::size_t nmax);
CheckResult check_orthogonality(std::int64_t qmax);
CheckResult check_afe(std::int64_t qmin, std::int64_t qmax);
CheckResult check_smoothed(const std::vector<std::int64_t>& moduli);
CheckResult check_diagonal(const std::vector<std::int64_t>& moduli, int pairs, std::uint64_t seed);
CheckResult check_dft(std::int64_t q, std::uint64_t seed);
CheckResult check_perron_hankel();
CheckResult check_lemma6(double y_numeric, double y_ratio);
CheckResult check_khalf(double y_numeric, const std::vector<double>& sweep);
CheckResult check_eta();
CheckResult check_holder(const std::vector<std::int64_t>& moduli, const Rational& k, double a);
CheckResult check_survey(const Rational& k, const std::vector<std::int64_t>& primes, LMethod method);

/// Lemma 5.1 case table: sum of chi(a) over non-principal characters of the
/// given parity, for prime q and gcd(a, q) = 1.
double parity_case_value(std::int64_t q, Parity parity, std::int64_t a);

}  // namespace fracmoment
