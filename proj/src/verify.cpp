#include "fracmoment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracmoment/special.hpp"

namespace fracmoment {

namespace {

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = std::max<std::int64_t>(lo, 3); q <= hi; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

std::vector<cplx> random_complex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {u(rng), u(rng)};
    return v;
}

// Local factor sum_j sigma(p^j) p^{-j(1+w0)} times prod_i (1 - p^{-(1+w0+w_i)})^{1/2s}.
cplx eta_local(std::uint32_t p, int s_param, cplx w0, const ShiftVector& shifts) {
    constexpr int kDepth = 40;
    const Rational alpha(1, 2 * s_param);
    std::vector<cplx> poly(kDepth + 1, 0.0);
    poly[0] = 1.0;
    const double lp = std::log(double(p));
    for (const auto& w : shifts.shifts) {
        std::vector<cplx> next(kDepth + 1, 0.0);
        for (int a = 0; a <= kDepth; ++a)
            for (int e = 0; a + e <= kDepth; ++e)
                next[static_cast<std::size_t>(a + e)] +=
                    poly[static_cast<std::size_t>(a)] * prime_power_coeff(alpha, e) * std::exp(-double(e) * w * lp);
        poly = std::move(next);
    }
    cplx sum = 0.0;
    for (int j = 0; j <= kDepth; ++j) sum += poly[static_cast<std::size_t>(j)] * std::exp(-double(j) * (1.0 + w0) * lp);
    for (const auto& w : shifts.shifts)
        sum *= std::pow(1.0 - std::exp(-(1.0 + w0 + w) * lp), 1.0 / (2.0 * s_param));
    return sum;
}

}  // namespace

double parity_case_value(std::int64_t q, Parity parity, std::int64_t a) {
    const double phi = double(q - 1);
    const std::int64_t r = ((a % q) + q) % q;
    const bool plus = r == 1, minus = r == q - 1;
    if (parity == Parity::Even) return (plus || minus) ? (phi - 2.0) / 2.0 : -1.0;
    if (plus) return phi / 2.0;
    if (minus) return -phi / 2.0;
    return 0.0;
}

CheckResult check_convolution(const std::vector<int>& s_values, std::size_t nmax) {
    CheckResult res{"convolution", true, Json::object()};
    const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(nmax, 2)));
    Json rows = Json::array();
    for (const int s : s_values) {
        if (s < 1) throw DomainError("s must be positive");
        const auto base = divisor_series(sieve, Rational(1, s), nmax);
        auto acc = base;
        for (int i = 1; i < s; ++i) acc = dirichlet_convolve(acc, base, nmax);
        double worst = 0.0;
        for (std::size_t n = 1; n <= nmax; ++n) worst = std::max(worst, std::abs(acc[n] - 1.0));
        const bool ok = worst < 1e-10;
        res.pass = res.pass && ok;
        rows.push_back(Json{{"s", s}, {"max_error", worst}, {"pass", ok}});
    }
    res.details = Json{{"nmax", nmax}, {"tolerance", 1e-10}, {"rows", rows}};
    return res;
}

CheckResult check_orthogonality(std::int64_t qmax) {
    CheckResult res{"orthogonality", true, Json::object()};
    double worst_full = 0.0, worst_parity = 0.0, worst_projector = 0.0;
    const auto qs = primes_between(3, qmax);
    for (const auto q : qs) {
        const CharacterTable table(q);
        for (std::int64_t a = 1; a < 2 * q; ++a) {
            if (a % q == 0) continue;
            const double expect = (a % q == 1) ? double(q - 1) : 0.0;
            worst_full = std::max(worst_full, std::abs(character_sum(table, a) - expect));
            for (const auto par : {Parity::Even, Parity::Odd}) {
                const double v = parity_case_value(q, par, a);
                worst_parity = std::max(worst_parity, std::abs(parity_restricted_sum(table, par, a) - v));
                worst_projector =
                    std::max(worst_projector, std::abs(parity_restricted_sum_projector(table, par, a) - v));
            }
        }
    }
    res.pass = worst_full < 1e-9 && worst_parity < 1e-9 && worst_projector < 1e-9;
    res.details = Json{{"qmax", qmax},
                       {"moduli", qs.size()},
                       {"tolerance", 1e-9},
                       {"max_error_full", worst_full},
                       {"max_error_parity", worst_parity},
                       {"max_error_projector", worst_projector}};
    return res;
}

CheckResult check_afe(std::int64_t qmin, std::int64_t qmax) {
    CheckResult res{"afe", true, Json::object()};
    double worst = 0.0;
    std::int64_t worst_q = 0, worst_j = 0, count = 0;
    for (const auto q : primes_between(qmin, qmax)) {
        const CharacterTable table(q);
        const auto oracle = l_half_oracle_all(table);
        const auto afe = l_square_afe_all(table);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            const double d = std::abs(afe[i].square - oracle[i].square);
            ++count;
            if (d > worst) {
                worst = d;
                worst_q = q;
                worst_j = oracle[i].index;
            }
        }
    }
    res.pass = worst < 1e-6;
    res.details = Json{{"qmin", qmin},     {"qmax", qmax},       {"characters", count}, {"tolerance", 1e-6},
                       {"max_error", worst}, {"worst_q", worst_q}, {"worst_j", worst_j}};
    return res;
}

CheckResult check_smoothed(const std::vector<std::int64_t>& moduli) {
    CheckResult res{"smoothed", true, Json::object()};
    Json rows = Json::array();
    std::vector<double> worst_by_q;
    for (const auto q : moduli) {
        const CharacterTable table(q);
        const auto oracle = l_half_oracle_all(table);
        const auto smooth = l_half_smoothed_all(table);
        double worst = 0.0;
        for (std::size_t i = 0; i < oracle.size(); ++i)
            worst = std::max(worst, std::abs(*smooth[i].value - *oracle[i].value));
        const double allowance = smoothed_error_allowance(q);
        const bool ok = worst <= allowance;
        res.pass = res.pass && ok;
        worst_by_q.push_back(worst);
        rows.push_back(Json{{"q", q}, {"max_discrepancy", worst}, {"allowance", allowance}, {"pass", ok}});
    }
    bool trend = true;
    if (worst_by_q.size() >= 2) trend = worst_by_q.back() < worst_by_q.front();
    res.pass = res.pass && trend;
    res.details = Json{{"rows", rows}, {"largest_below_smallest", trend}};
    return res;
}

CheckResult check_diagonal(const std::vector<std::int64_t>& moduli, int pairs, std::uint64_t seed) {
    CheckResult res{"diagonal", true, Json::object()};
    std::mt19937_64 rng(seed);
    Json rows = Json::array();
    for (const auto q : moduli) {
        const CharacterTable table(q);
        double worst = 0.0, worst_scaled = 0.0;
        for (int t = 0; t < pairs; ++t) {
            auto c = random_complex(rng, static_cast<std::size_t>(q));
            auto e = random_complex(rng, static_cast<std::size_t>(q));
            c[0] = e[0] = 0.0;
            const auto rep = diagonal_decomposition_check(table, c, e);
            worst = std::max(worst, rep.diff);
            worst_scaled = std::max(worst_scaled, rep.diff / rep.scale);
        }
        const bool ok = worst < 1e-8;
        res.pass = res.pass && ok;
        rows.push_back(Json{{"q", q}, {"pairs", pairs}, {"max_diff", worst}, {"max_scaled_diff", worst_scaled}, {"pass", ok}});
    }
    res.details = Json{{"seed", seed}, {"tolerance", 1e-8}, {"rows", rows}};
    return res;
}

CheckResult check_dft(std::int64_t q, std::uint64_t seed) {
    CheckResult res{"dft", true, Json::object()};
    const CharacterTable table(q);
    std::mt19937_64 rng(seed);
    const auto coeffs = random_complex(rng, static_cast<std::size_t>(q - 1));
    const auto fast = dft_all_characters(table, coeffs);
    const auto naive = naive_all_characters(table, coeffs);
    double worst = 0.0;
    for (std::size_t j = 0; j < fast.size(); ++j) worst = std::max(worst, std::abs(fast[j] - naive[j]));
    res.pass = worst < 1e-8;
    res.details = Json{{"q", q}, {"seed", seed}, {"tolerance", 1e-8}, {"max_error", worst}};
    return res;
}

CheckResult check_perron_hankel() {
    CheckResult res{"perron-hankel", true, Json::object()};
    Json perron = Json::array();
    for (const int order : {2, 3})
        for (const double x : {2.0, std::exp(1.0), 10.0, 100.0, std::exp(-1.0)}) {
            const double v = perron_weight(order, x);
            const double err = std::abs(v - perron_closed_form(order, x));
            const bool ok = err < 1e-6;
            res.pass = res.pass && ok;
            perron.push_back(Json{{"order", order}, {"x", x}, {"value", v}, {"error", err}, {"pass", ok}});
        }
    Json hankel = Json::array();
    for (const double alpha : {1.0, 1.5, 2.0, 2.25, 2.5}) {
        const double v = hankel_recip_gamma(alpha);
        const double expect = std::exp(-log_gamma(cplx(alpha, 0.0)).real());
        const double err = std::abs(v - expect);
        const bool ok = err < 1e-5;
        res.pass = res.pass && ok;
        hankel.push_back(Json{{"alpha", alpha}, {"value", v}, {"error", err}, {"pass", ok}});
    }
    res.details = Json{{"perron", perron}, {"hankel", hankel}};
    return res;
}

CheckResult check_lemma6(double y_numeric, double y_ratio) {
    CheckResult res{"lemma6", true, Json::object()};
    Lemma6Params p;
    p.y = y_numeric;
    const auto num = lemma6_check(p, true);
    p.y = y_ratio;
    const auto big = lemma6_check(p, false);
    const bool ok_num = num.relative_error < 1e-3;
    const bool ok_ratio = big.ratio >= 0.03 && big.ratio <= 0.07;
    res.pass = ok_num && ok_ratio;
    res.details = Json{{"numeric", to_json(num)}, {"ratio_point", to_json(big)}, {"numeric_pass", ok_num}, {"ratio_pass", ok_ratio}};
    return res;
}

CheckResult check_khalf(double y_numeric, const std::vector<double>& sweep) {
    CheckResult res{"khalf", true, Json::object()};
    const auto num = khalf_final_check(y_numeric, true);
    const bool ok_num = num.oracle > 0.0 && num.relative_error < 1e-2;
    double lo = INFINITY, hi = 0.0;
    bool positive = true;
    Json rows = Json::array();
    for (const double y : sweep) {
        const auto r = khalf_final_check(y, false);
        positive = positive && r.oracle > 0.0;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        rows.push_back(Json{{"y", y}, {"oracle", r.oracle}, {"ratio", r.ratio}});
    }
    const bool ok_band = sweep.empty() || hi <= 3.0 * lo;
    res.pass = ok_num && positive && ok_band;
    res.details = Json{{"numeric", to_json(num)}, {"sweep", rows}, {"numeric_pass", ok_num},
                       {"positive", positive},   {"band_pass", ok_band}};
    return res;
}

CheckResult check_eta() {
    CheckResult res{"eta", true, Json::object()};
    const std::vector<std::size_t> cutoffs{100'000, 1'000'000};
    const auto a = eta_stability(1, 0.5, ShiftVector{0.3}, cutoffs);
    const auto b = eta_stability(2, 0.5, ShiftVector{0.3, 0.3, 0.3, 0.3}, cutoffs);
    const ShiftVector large{5.0, 5.0};
    const auto c = eta_stability(2, 0.5, large, {1000, 100'000});
    const cplx euler = eta_local(2, 2, 0.5, large) * eta_local(3, 2, 0.5, large);
    const double euler_err = std::abs(c.levels.back().eta - euler);
    const bool ok = a.drift < 1e-3 && b.drift < 1e-3 && euler_err < 1e-6 && c.drift < 1e-6;
    res.pass = ok;
    res.details = Json{{"single_shift", to_json(a)},
                       {"four_shifts", to_json(b)},
                       {"large_shifts", to_json(c)},
                       {"euler_p2_p3", {{"re", euler.real()}, {"im", euler.imag()}}},
                       {"euler_error", euler_err}};
    return res;
}

CheckResult check_holder(const std::vector<std::int64_t>& moduli, const Rational& k, double a) {
    CheckResult res{"holder", true, Json::object()};
    Json rows = Json::array();
    for (const auto q : moduli) {
        const auto params = MomentParams::defaults(q, k, a);
        const CharacterTable table(q);
        const auto rep = holder_chain_check(params, table);
        res.pass = res.pass && rep.pass;
        rows.push_back(to_json(rep));
    }
    std::mt19937_64 rng(7);
    bool identity = true;
    Json ks = Json::array();
    for (int t = 0; t < 10; ++t) {
        const auto s = std::int64_t(2 + rng() % 40);
        auto r = std::int64_t(1 + rng() % std::uint64_t(s - 1));
        const Rational kk(r, s);
        const auto e = holder_exponents(kk);
        identity = identity && (e[0] + e[1] + e[2] == Rational(1));
        ks.push_back(kk.str());
    }
    res.pass = res.pass && identity;
    res.details = Json{{"rows", rows}, {"exponent_identity", identity}, {"k_samples", ks}};
    return res;
}

CheckResult check_survey(const Rational& k, const std::vector<std::int64_t>& primes, LMethod method) {
    CheckResult res{"survey", true, Json::object()};
    const auto rows = scaling_survey(k, primes, method);
    Json out = Json::array();
    for (const auto& r : rows) {
        const bool ok = r.ratio >= kSurveyBandLow && r.ratio <= kSurveyBandHigh;
        res.pass = res.pass && ok;
        out.push_back(Json{{"q", r.q},
                           {"moment_over_phi", r.moment_over_phi},
                           {"logq_pow_k2", r.logq_pow_k2},
                           {"ratio", r.ratio},
                           {"in_band", ok}});
    }
    res.details = Json{{"k", k.str()}, {"method", to_string(method)}, {"band", {kSurveyBandLow, kSurveyBandHigh}}, {"rows", out}};
    return res;
}

}  // namespace fracmoment
