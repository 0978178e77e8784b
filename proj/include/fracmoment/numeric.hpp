// Small numeric utilities shared by every module: error types, exact
// rationals, compensated summation and a deterministic parallel map.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracmoment {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation requested at a pole (zeta at s = 1).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Operation undefined for the principal character.
class PrincipalCharacterError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Report could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduced fraction num/den with den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    /// Parses "r/s" or an integer literal.
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Component-wise compensated accumulator for complex sums.
class ComplexCompensatedSum {
public:
    ComplexCompensatedSum& operator+=(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
        return *this;
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Worker count: FRACMOMENT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Each index is
/// handled exactly once; callers write into per-index slots and reduce in
/// index order afterwards, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
bool is_prime(std::int64_t n);

}  // namespace fracmoment
