#include "fracmoment/lvalues.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace fracmoment {

std::string to_string(LMethod m) {
    switch (m) {
        case LMethod::Oracle: return "oracle";
        case LMethod::Smoothed: return "smoothed";
        case LMethod::Afe: return "afe";
    }
    return "?";
}

LMethod parse_lmethod(const std::string& text) {
    if (text == "oracle") return LMethod::Oracle;
    if (text == "smoothed") return LMethod::Smoothed;
    if (text == "afe") return LMethod::Afe;
    throw DomainError("unknown L-value method '" + text + "'");
}

namespace {

void require_nonprincipal(const CharacterTable& table, std::int64_t j) {
    if (j == 0) throw PrincipalCharacterError("the principal character is excluded");
    if (j < 0 || j >= table.order()) throw DomainError("character index out of range");
}

std::vector<cplx> hurwitz_half_values(std::int64_t q) {
    std::vector<cplx> z(static_cast<std::size_t>(q - 1));
    for (std::int64_t a = 1; a < q; ++a)
        z[static_cast<std::size_t>(a - 1)] = hurwitz_zeta(cplx(0.5, 0.0), double(a) / double(q));
    return z;
}

double oracle_error(std::int64_t q, const std::vector<cplx>& z) {
    double mass = 0.0;
    for (const auto& v : z) mass += std::abs(v);
    const double rem = hurwitz_remainder_bound(cplx(0.5, 0.0), 1.0 / double(q));
    return (mass * 4e-16 + double(q) * rem) / std::sqrt(double(q));
}

// Tail of sum_{m > M} m^{-1/2} e^{-m/X} plus the analytic allowance.
double smoothed_error(std::int64_t q, double big_x, std::int64_t last) {
    const double m = double(last);
    const double tail = big_x * std::exp(-m / big_x) / std::sqrt(m);
    return smoothed_error_allowance(q) + tail;
}

std::int64_t smoothed_terms(std::int64_t q, double tail_multiplier, double& big_x) {
    if (!(tail_multiplier > 0.0)) throw DomainError("tail multiplier must be positive");
    big_x = std::pow(double(q), 1.25);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(tail_multiplier * big_x)));
}

std::int64_t afe_terms(std::int64_t q, const AfeOptions& opt) {
    if (!(opt.min_argument > 0.0)) throw DomainError("afe min_argument must be positive");
    return static_cast<std::int64_t>(std::floor(double(q) / (kPi * opt.min_argument)));
}

// W(q/(pi d)) / sqrt(d) for d = 1..D.
std::vector<double> afe_weights(std::int64_t q, std::int64_t terms, const WWeight& w) {
    std::vector<double> out(static_cast<std::size_t>(terms + 1), 0.0);
    parallel_for(static_cast<std::size_t>(terms), [&](std::size_t i) {
        const double d = double(i + 1);
        out[i + 1] = w(double(q) / (kPi * d)) / std::sqrt(d);
    });
    return out;
}

double afe_error(std::int64_t q, std::int64_t terms, const WWeight& w) {
    double worst = 0.0;
    for (int k = 0; k <= 32; ++k) {
        const double d = std::max(1.0, std::floor(std::pow(double(terms), k / 32.0)));
        worst = std::max(worst, w.error_estimate(double(q) / (kPi * d)));
    }
    const double dt = double(terms);
    // 2 sum_{d<=D} tau(d)/sqrt(d) <= 4 sqrt(D) (log D + 1)
    const double mass = 4.0 * std::sqrt(dt) * (std::log(dt) + 1.0);
    return worst * mass + 1e-14 * mass;
}

WWeightSpec spec_for(const AfeOptions& opt, int parity) {
    WWeightSpec s = opt.weight;
    s.parity = parity;
    return s;
}

}  // namespace

WWeight::WWeight(const WWeightSpec& spec) : spec_(spec) {
    if (spec.parity != 0 && spec.parity != 1) throw DomainError("parity must be 0 or 1");
    if (!(spec.line > 0.0)) throw DomainError("W line must have positive real part");
    if (!(spec.height >= 10.0)) throw DomainError("W truncation height must be at least 10");
    if (!(spec.step > 0.0)) throw DomainError("W step must be positive");
    const double shift = 0.25 + 0.5 * spec.parity;
    const cplx norm = 2.0 * log_gamma(cplx(shift, 0.0));
    const auto count = static_cast<std::size_t>(std::ceil(spec.height / spec.step));
    weights_.resize(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
        const cplx w(spec.line, double(k) * spec.step);
        weights_[k] = std::exp(2.0 * log_gamma(shift + 0.5 * w) - norm) / w;
    }
}

double WWeight::evaluate(double x, std::size_t stride) const {
    if (!(x > 0.0)) throw DomainError("W requires x > 0");
    const double lx = std::log(x);
    const double h = spec_.step * double(stride);
    CompensatedSum acc;
    acc += weights_[0].real();
    // x^{i t} advanced by multiplication, resynced every 32 nodes
    const cplx advance = std::polar(1.0, h * lx);
    cplx rot = advance;
    std::size_t k = stride;
    for (std::size_t step_no = 1; k < weights_.size(); k += stride, ++step_no) {
        if (step_no % 32 == 0) rot = std::polar(1.0, double(k) * spec_.step * lx);
        acc += 2.0 * (weights_[k] * rot).real();
        rot *= advance;
    }
    return h / kTwoPi * std::exp(spec_.line * lx) * acc.value();
}

double WWeight::operator()(double x) const {
    return evaluate(x, 1);
}

double WWeight::error_estimate(double x) const {
    return std::abs(evaluate(x, 1) - evaluate(x, 2));
}

double w_weight(double x, int parity, const WWeightSpec& spec) {
    WWeightSpec s = spec;
    s.parity = parity;
    return WWeight(s)(x);
}

double smoothed_error_allowance(std::int64_t q) {
    return 10.0 * std::pow(double(q), -0.125) * std::log(double(q));
}

LValueRecord l_half_oracle(const CharacterTable& table, std::int64_t j) {
    require_nonprincipal(table, j);
    const auto q = table.modulus();
    const auto z = hurwitz_half_values(q);
    ComplexCompensatedSum acc;
    for (std::int64_t a = 1; a < q; ++a) acc += table.chi(j, a) * z[static_cast<std::size_t>(a - 1)];
    const cplx value = acc.value() / std::sqrt(double(q));
    return {j, table.parity_bit(j), value, std::norm(value), LMethod::Oracle, oracle_error(q, z)};
}

std::vector<LValueRecord> l_half_oracle_all(const CharacterTable& table) {
    const auto q = table.modulus();
    const auto z = hurwitz_half_values(q);
    const auto sums = dft_all_characters(table, z);
    const double err = oracle_error(q, z);
    const double scale = 1.0 / std::sqrt(double(q));
    std::vector<LValueRecord> out;
    out.reserve(static_cast<std::size_t>(q - 2));
    for (std::int64_t j = 1; j < table.order(); ++j) {
        const cplx v = sums[static_cast<std::size_t>(j)] * scale;
        out.push_back({j, table.parity_bit(j), v, std::norm(v), LMethod::Oracle, err});
    }
    return out;
}

LValueRecord l_half_smoothed(const CharacterTable& table, std::int64_t j, double tail_multiplier) {
    require_nonprincipal(table, j);
    const auto q = table.modulus();
    double big_x = 0.0;
    const auto terms = smoothed_terms(q, tail_multiplier, big_x);
    ComplexCompensatedSum acc;
    for (std::int64_t m = 1; m <= terms; ++m) {
        if (m % q == 0) continue;
        acc += table.chi(j, m) * (std::exp(-double(m) / big_x) / std::sqrt(double(m)));
    }
    const cplx v = acc.value();
    return {j, table.parity_bit(j), v, std::norm(v), LMethod::Smoothed, smoothed_error(q, big_x, terms)};
}

std::vector<LValueRecord> l_half_smoothed_all(const CharacterTable& table, double tail_multiplier) {
    const auto q = table.modulus();
    double big_x = 0.0;
    const auto terms = smoothed_terms(q, tail_multiplier, big_x);
    std::vector<CompensatedSum> classes(static_cast<std::size_t>(q - 1));
    for (std::int64_t m = 1; m <= terms; ++m) {
        const auto r = m % q;
        if (r == 0) continue;
        classes[static_cast<std::size_t>(r - 1)] += std::exp(-double(m) / big_x) / std::sqrt(double(m));
    }
    std::vector<cplx> coeffs(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) coeffs[i] = classes[i].value();
    const auto sums = dft_all_characters(table, coeffs);
    const double err = smoothed_error(q, big_x, terms);
    std::vector<LValueRecord> out;
    for (std::int64_t j = 1; j < table.order(); ++j) {
        const cplx v = sums[static_cast<std::size_t>(j)];
        out.push_back({j, table.parity_bit(j), v, std::norm(v), LMethod::Smoothed, err});
    }
    return out;
}

LValueRecord l_square_afe(const CharacterTable& table, std::int64_t j, const AfeOptions& options) {
    require_nonprincipal(table, j);
    const auto q = table.modulus();
    const int parity = options.force_parity.value_or(table.parity_bit(j));
    const WWeight w(spec_for(options, parity));
    const auto terms = afe_terms(q, options);
    const auto weights = afe_weights(q, terms, w);
    std::vector<cplx> chi_scaled(static_cast<std::size_t>(terms + 1), 0.0);
    for (std::int64_t n = 1; n <= terms; ++n) chi_scaled[static_cast<std::size_t>(n)] = table.chi(j, n);
    ComplexCompensatedSum acc;
    for (std::int64_t m = 1; m <= terms; ++m) {
        const cplx cm = chi_scaled[static_cast<std::size_t>(m)];
        if (cm == cplx(0.0)) continue;
        cplx inner = 0.0;
        for (std::int64_t n = 1; m * n <= terms; ++n)
            inner += std::conj(chi_scaled[static_cast<std::size_t>(n)]) * weights[static_cast<std::size_t>(m * n)];
        acc += cm * inner;
    }
    const cplx total = 2.0 * acc.value();
    LValueRecord rec{j, parity, std::nullopt, total.real(), LMethod::Afe, afe_error(q, terms, w)};
    rec.error_estimate = std::max(rec.error_estimate, std::abs(total.imag()));
    return rec;
}

std::vector<LValueRecord> l_square_afe_all(const CharacterTable& table, const AfeOptions& options) {
    const auto q = table.modulus();
    const auto terms = afe_terms(q, options);
    const auto n = static_cast<std::size_t>(q - 1);

    // inverse residues via the discrete log
    std::vector<std::int64_t> inverse(static_cast<std::size_t>(q), 0);
    for (std::int64_t a = 1; a < q; ++a) {
        const auto k = (table.order() - table.dlog(a)) % table.order();
        std::int64_t v = 1;
        // g^k by repeated squaring
        std::int64_t base = table.primitive_root(), e = k;
        while (e > 0) {
            if (e & 1) v = v * base % q;
            base = base * base % q;
            e >>= 1;
        }
        inverse[static_cast<std::size_t>(a)] = v;
    }

    std::vector<std::vector<cplx>> sums(2);
    std::vector<double> errors(2);
    for (int parity = 0; parity < 2; ++parity) {
        if (options.force_parity && *options.force_parity != parity) continue;
        const WWeight w(spec_for(options, parity));
        const auto weights = afe_weights(q, terms, w);
        std::vector<CompensatedSum> classes(n);
        for (std::int64_t m = 1; m <= terms; ++m) {
            const auto mr = m % q;
            if (mr == 0) continue;
            for (std::int64_t k = 1; m * k <= terms; ++k) {
                const auto kr = k % q;
                if (kr == 0) continue;
                const auto r = mr * inverse[static_cast<std::size_t>(kr)] % q;
                classes[static_cast<std::size_t>(r - 1)] += weights[static_cast<std::size_t>(m * k)];
            }
        }
        std::vector<cplx> coeffs(n);
        for (std::size_t i = 0; i < n; ++i) coeffs[i] = classes[i].value();
        sums[static_cast<std::size_t>(parity)] = dft_all_characters(table, coeffs);
        errors[static_cast<std::size_t>(parity)] = afe_error(q, terms, w);
    }

    std::vector<LValueRecord> out;
    for (std::int64_t j = 1; j < table.order(); ++j) {
        const int parity = options.force_parity.value_or(table.parity_bit(j));
        const cplx v = 2.0 * sums[static_cast<std::size_t>(parity)][static_cast<std::size_t>(j)];
        LValueRecord rec{j, parity, std::nullopt, v.real(), LMethod::Afe, errors[static_cast<std::size_t>(parity)]};
        rec.error_estimate = std::max(rec.error_estimate, std::abs(v.imag()));
        out.push_back(rec);
    }
    return out;
}

std::vector<LValueRecord> l_values_all(const CharacterTable& table, LMethod method) {
    switch (method) {
        case LMethod::Oracle: return l_half_oracle_all(table);
        case LMethod::Smoothed: return l_half_smoothed_all(table);
        case LMethod::Afe: return l_square_afe_all(table);
    }
    return {};
}

void write_lvalue_csv(std::ostream& out, std::int64_t q, const std::vector<LValueRecord>& records) {
    out << "q,j,parity,ReL,ImL,Lsq,method,err\n";
    char buf[512];
    for (const auto& r : records) {
        const double re = r.value ? r.value->real() : std::nan("");
        const double im = r.value ? r.value->imag() : std::nan("");
        std::snprintf(buf, sizeof buf, "%lld,%lld,%d,%.17g,%.17g,%.17g,%s,%.17g\n", static_cast<long long>(q),
                      static_cast<long long>(r.index), r.parity, re, im, r.square, to_string(r.method).c_str(),
                      r.error_estimate);
        out << buf;
    }
}

}  // namespace fracmoment
