#include "fracmoment/moments.hpp"

#include <algorithm>
#include <cmath>

namespace fracmoment {

namespace {

std::size_t floor_index(double v) {
    return static_cast<std::size_t>(std::floor(v));
}

std::uint32_t sieve_limit_for(std::size_t n) {
    return static_cast<std::uint32_t>(std::max<std::size_t>(n, 2));
}

template <typename T>
std::vector<cplx> evaluate_impl(const CharacterTable& table, const Series<T>& coeffs, bool conjugate) {
    const auto q = table.modulus();
    std::vector<cplx> residues(static_cast<std::size_t>(q - 1), 0.0);
    for (std::size_t n = 1; n <= coeffs.cutoff; ++n) {
        const cplx c = coeffs.values[n];
        if (c == cplx(0.0)) continue;
        if (static_cast<std::int64_t>(n) >= q)
            throw DomainError("polynomial support must lie below q (nonzero coefficient at n=" + std::to_string(n) + ")");
        residues[n - 1] = c / std::sqrt(double(n));
    }
    auto sums = dft_all_characters(table, residues);
    if (!conjugate) return sums;
    std::vector<cplx> out(sums.size());
    for (std::int64_t j = 0; j < table.order(); ++j)
        out[static_cast<std::size_t>(j)] = sums[static_cast<std::size_t>(table.conjugate_index(j))];
    return out;
}

cplx ipow(cplx z, std::int64_t e) {
    cplx r = 1.0;
    for (std::int64_t i = 0; i < e; ++i) r *= z;
    return r;
}

double ipow(double v, std::int64_t e) {
    double r = 1.0;
    for (std::int64_t i = 0; i < e; ++i) r *= v;
    return r;
}

}  // namespace

void MomentParams::validate() const {
    if (q < 3 || q > kMaxModulus || !is_prime(q)) throw DomainError("q must be a prime in [3, 10^6], got " + std::to_string(q));
    if (!(r > 0 && r < s)) throw DomainError("k = r/s must satisfy 0 < r < s");
    if (gcd64(r, s) != 1) throw DomainError("k = r/s must be in lowest terms");
    if (s > kMaxS) throw DomainError("s above " + std::to_string(kMaxS) + " is not supported");
    if (!(y > 1.0)) throw DomainError("y must exceed 1");
    if (!(a >= 1.0)) throw DomainError("a must be at least 1");
    const double expected = std::pow(y, a);
    if (std::abs(x - expected) > 1e-12 * expected) throw DomainError("x must equal y^a");
}

bool MomentParams::regime_satisfied() const {
    return 4.0 * double(s) * std::log(x) <= std::log(double(q)) / 20.0;
}

MomentParams MomentParams::defaults(std::int64_t q, Rational k, double a) {
    const double y = std::max(2.0, std::pow(double(q), 1.0 / (4.0 * a * double(k.den))));
    return with_y(q, k, y, a);
}

MomentParams MomentParams::with_y(std::int64_t q, Rational k, double y, double a) {
    MomentParams p;
    p.q = q;
    p.r = k.num;
    p.s = k.den;
    p.y = y;
    p.a = a;
    p.x = std::pow(y, a);
    p.validate();
    return p;
}

std::vector<cplx> evaluate_polynomial_all(const CharacterTable& table, const CoefficientSeries& coeffs,
                                          bool conjugate) {
    return evaluate_impl(table, coeffs, conjugate);
}

std::vector<cplx> evaluate_polynomial_all(const CharacterTable& table, const ComplexSeries& coeffs, bool conjugate) {
    return evaluate_impl(table, coeffs, conjugate);
}

MomentReport moment_from_records(const MomentParams& params, const std::vector<LValueRecord>& records) {
    MomentReport rep;
    rep.params = params;
    if (!records.empty()) rep.method = records.front().method;
    const double k = params.k().value();
    rep.contributions.reserve(records.size());
    CompensatedSum acc;
    for (const auto& rec : records) {
        double sq = rec.square;
        if (!(sq >= kSquareFloor)) {
            rep.flagged.push_back(rec.index);
            sq = kSquareFloor;
        }
        const double c = std::exp(k * std::log(sq));
        rep.contributions.push_back(c);
        acc += c;
    }
    rep.moment = acc.value();
    return rep;
}

MomentReport moment_k(const MomentParams& params, LMethod method) {
    params.validate();
    const CharacterTable table(params.q);
    return moment_from_records(params, l_values_all(table, method));
}

CharacterData character_data(const MomentParams& params, const CharacterTable& table) {
    params.validate();
    if (table.modulus() != params.q) throw DomainError("character table modulus does not match q");
    const auto nx = floor_index(params.x);
    const auto ny = floor_index(params.y);
    const FactorSieve sieve(sieve_limit_for(std::max(nx, ny)));
    CharacterData d;
    d.lvalues = l_half_oracle_all(table);
    d.p_values = evaluate_polynomial_all(table, weighted_poly_coeffs(sieve, 1, int(2 * params.s), params.x, nx));
    d.m_values = evaluate_polynomial_all(table, mollifier_coeffs(sieve, 1, int(params.s), params.y, ny));
    return d;
}

cplx s_lower(const MomentParams& params, const CharacterData& data) {
    ComplexCompensatedSum acc;
    for (const auto& rec : data.lvalues) {
        const auto j = static_cast<std::size_t>(rec.index);
        const cplx p = std::conj(data.p_values[j]);
        const double m2 = std::norm(data.m_values[j]);
        acc += *rec.value * ipow(p, 2 * params.s) * ipow(m2, params.s - params.r);
    }
    return acc.value();
}

double s_upper(const MomentParams& params, const CharacterData& data) {
    CompensatedSum acc;
    for (const auto& rec : data.lvalues) {
        const auto j = static_cast<std::size_t>(rec.index);
        const double p2 = std::norm(data.p_values[j]);
        const double m2 = std::norm(data.m_values[j]);
        acc += rec.square * ipow(p2, 2 * params.s) * ipow(m2, 2 * params.s - params.r);
    }
    return acc.value();
}

cplx s_lower(const MomentParams& params, const CharacterTable& table) {
    return s_lower(params, character_data(params, table));
}

double s_upper(const MomentParams& params, const CharacterTable& table) {
    return s_upper(params, character_data(params, table));
}

double p4_sum(const MomentParams& params, const std::vector<cplx>& p_values) {
    CompensatedSum acc;
    for (std::size_t j = 1; j < p_values.size(); ++j) acc += ipow(std::norm(p_values[j]), 2 * params.r);
    return acc.value();
}

P4Report p4_bound_check(const MomentParams& params, const CharacterTable& table) {
    params.validate();
    if (!(std::pow(params.x, double(2 * params.r)) < double(params.q)))
        throw DomainError("p4_bound_check requires x^{2r} < q");
    const auto nx = floor_index(params.x);
    const auto n_max = static_cast<std::size_t>(ipow(double(nx), 2 * params.r));
    const FactorSieve sieve(sieve_limit_for(n_max));
    const auto p = evaluate_polynomial_all(table, weighted_poly_coeffs(sieve, 1, int(2 * params.s), params.x, nx));
    const auto big =
        weighted_poly_coeffs(sieve, int(2 * params.r), int(2 * params.s), params.x, n_max);
    CompensatedSum diag;
    for (std::size_t n = 1; n <= n_max; ++n) diag += big[n] * big[n] / double(n);
    return {p4_sum(params, p), double(table.order()) * diag.value()};
}

std::array<Rational, 3> holder_exponents(const Rational& k) {
    const Rational two(2), one(1);
    const Rational e1 = one / (two * (two - k));
    return {e1, e1, (one - k) / (two - k)};
}

HolderReport holder_chain_check(const MomentParams& params, const CharacterTable& table) {
    const auto data = character_data(params, table);
    HolderReport rep;
    rep.params = params;
    rep.regime_flag = params.regime_satisfied();
    rep.moment = moment_from_records(params, data.lvalues).moment;
    rep.s_lower = s_lower(params, data);
    rep.s_upper = s_upper(params, data);
    rep.p4.lhs = p4_sum(params, data.p_values);
    rep.p4_applicable = std::pow(params.x, double(2 * params.r)) < double(params.q);
    if (rep.p4_applicable) rep.p4.rhs = p4_bound_check(params, table).rhs;
    const auto e = holder_exponents(params.k());
    rep.f1 = std::pow(rep.moment, e[0].value());
    rep.f2 = std::pow(rep.p4.lhs, e[1].value());
    rep.f3 = std::pow(rep.s_upper, e[2].value());
    const double bound = rep.f1 * rep.f2 * rep.f3;
    rep.slack = bound - std::abs(rep.s_lower);
    rep.pass = rep.slack >= -1e-9 * bound;
    return rep;
}

std::vector<SurveyRow> scaling_survey(const Rational& k, const std::vector<std::int64_t>& primes, LMethod method) {
    // k = 1 is admitted here for the second-moment comparison.
    if (!(k.num > 0 && k.num <= k.den)) throw DomainError("survey k must lie in (0, 1]");
    std::vector<SurveyRow> rows;
    rows.reserve(primes.size());
    for (const auto q : primes) {
        const CharacterTable table(q);
        MomentParams p;
        p.q = q;
        p.r = k.num;
        p.s = k.den;
        const auto rep = moment_from_records(p, l_values_all(table, method));
        SurveyRow row;
        row.q = q;
        row.moment_over_phi = rep.moment / double(q - 1);
        row.logq_pow_k2 = std::pow(std::log(double(q)), k.value() * k.value());
        row.ratio = row.moment_over_phi / row.logq_pow_k2;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fracmoment
