#include "fracmoment/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fracmoment/report.hpp"
#include "fracmoment/special.hpp"
#include "fracmoment/verify.hpp"

namespace fracmoment {

namespace {

// "1.5", "-2i", "0.3+0.1i", "0.3-2.5i"
cplx parse_complex(const std::string& text) {
    if (text.empty()) throw DomainError("empty complex literal");
    if (text.back() != 'i') {
        std::size_t pos = 0;
        const double re = std::stod(text, &pos);
        if (pos != text.size()) throw DomainError("bad complex literal '" + text + "'");
        return {re, 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // split at the last sign that is not an exponent sign or the leading sign
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto num = [&](const std::string& s) {
        if (s == "" || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw DomainError("bad complex literal '" + text + "'");
        return v;
    };
    if (split == std::string::npos) return {0.0, num(body)};
    return {num(body.substr(0, split)), num(body.substr(split))};
}

ShiftVector parse_shifts(const std::vector<std::string>& items) {
    ShiftVector v;
    for (const auto& s : items) v.shifts.push_back(parse_complex(s));
    return v;
}

Json complex_json(cplx z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

struct Options {
    std::string out = "-";
    std::string format;

    // verify
    std::string check;
    std::vector<int> s_values{2, 3, 5};
    std::size_t nmax = 10'000;
    std::int64_t qmin = 5;
    std::int64_t qmax = 101;
    std::vector<std::int64_t> moduli;
    int pairs = 20;
    std::uint64_t seed = 1;

    // moments / holder / survey
    std::int64_t q = 1009;
    std::string k = "1/2";
    std::string method = "oracle";
    double a = 4.0;
    std::optional<double> y;
    bool contributions = false;
    std::string lvalues_csv;
    std::vector<std::int64_t> primes{1009, 10007, 100003};

    // contour
    int order = 2;
    double x = 2.0;
    double alpha = 3.0;
    double arm = 25.0;
    std::string beta = "1";
    int m = 1;
    double re = 2.0;
    double im = 0.0;
    bool no_numeric = false;
    bool numeric = false;
    std::vector<double> ys{1e3, 1e4, 1e5, 1e6};
    int s_param = 1;
    std::string w0 = "0.5";
    std::vector<std::string> shifts{"0.3"};
    std::vector<std::size_t> cutoffs{100'000, 1'000'000};

    // dump-coeffs
    std::string kind = "divisor";
    int big_a = 1;
    int big_b = 1;
    std::size_t n = 100;
    std::vector<std::string> zshifts;
};

Rational parse_k(const std::string& text) {
    const auto k = Rational::parse(text);
    if (!(k.num > 0 && k.num < k.den)) throw DomainError("k must satisfy 0 < k < 1, got " + text);
    return k;
}

int emit_json(const Options& o, const Json& doc, bool pass) {
    write_output(o.out, dump_json(doc));
    return pass ? kExitPass : kExitToleranceFail;
}

CheckResult run_check(const std::string& name, const Options& o) {
    auto mods = [&](std::vector<std::int64_t> fallback) { return o.moduli.empty() ? fallback : o.moduli; };
    if (name == "convolution") return check_convolution(o.s_values, o.nmax);
    if (name == "orthogonality") return check_orthogonality(o.qmax);
    if (name == "afe") return check_afe(o.qmin, o.moduli.empty() ? 61 : o.moduli.front());
    if (name == "smoothed") return check_smoothed(mods({101, 1009, 10007}));
    if (name == "diagonal") return check_diagonal(mods({101, 1009}), o.pairs, o.seed);
    if (name == "dft") return check_dft(mods({10007}).front(), o.seed);
    if (name == "perron") return check_perron_hankel();
    if (name == "lemma6") return check_lemma6(o.y.value_or(1e4), 1e6);
    if (name == "khalf") return check_khalf(o.y.value_or(1e4), o.ys);
    if (name == "eta") return check_eta();
    if (name == "holder") return check_holder(mods({1009, 10007}), parse_k(o.k), o.a);
    if (name == "survey") return check_survey(parse_k(o.k), o.primes, parse_lmethod(o.method));
    throw DomainError("unknown check '" + name + "'");
}

const std::vector<std::string> kChecks{"convolution", "orthogonality", "afe",  "smoothed", "diagonal", "dft",
                                       "perron",      "lemma6",        "khalf", "eta",      "holder",   "survey"};

int cmd_verify(const Options& o) {
    Json config{{"check", o.check}, {"s", o.s_values}, {"nmax", o.nmax}, {"qmin", o.qmin}, {"qmax", o.qmax},
                {"q", o.moduli},    {"pairs", o.pairs}, {"seed", o.seed}, {"k", o.k},       {"a", o.a},
                {"method", o.method}, {"primes", o.primes}};
    config["y"] = o.y ? Json(*o.y) : Json(nullptr);
    Json doc{{"command", "verify"}, {"config", config}};
    bool pass = true;
    if (o.check == "all") {
        Json results = Json::array();
        for (const auto& name : kChecks) {
            const auto r = run_check(name, o);
            pass = pass && r.pass;
            results.push_back(Json{{"check", r.name}, {"pass", r.pass}, {"details", r.details}});
        }
        doc["results"] = results;
    } else {
        const auto r = run_check(o.check, o);
        pass = r.pass;
        doc["result"] = r.details;
    }
    doc["pass"] = pass;
    return emit_json(o, doc, pass);
}

MomentParams params_from(const Options& o) {
    const auto k = parse_k(o.k);
    return o.y ? MomentParams::with_y(o.q, k, *o.y, o.a) : MomentParams::defaults(o.q, k, o.a);
}

int cmd_moments(const Options& o) {
    const auto params = params_from(o);
    const auto method = parse_lmethod(o.method);
    const CharacterTable table(params.q);
    const auto records = l_values_all(table, method);
    const auto rep = moment_from_records(params, records);
    if (!o.lvalues_csv.empty()) write_output(o.lvalues_csv, lvalue_csv(params.q, records));
    Json doc = to_json(rep, o.contributions);
    doc["regime_flag"] = params.regime_satisfied();
    return emit_json(o, doc, true);
}

int cmd_holder(const Options& o) {
    const auto params = params_from(o);
    const CharacterTable table(params.q);
    const auto rep = holder_chain_check(params, table);
    return emit_json(o, to_json(rep), rep.pass);
}

int cmd_survey(const Options& o) {
    const auto k = Rational::parse(o.k);
    const auto method = parse_lmethod(o.method);
    const auto rows = scaling_survey(k, o.primes, method);
    bool pass = true;
    for (const auto& r : rows) pass = pass && r.ratio >= kSurveyBandLow && r.ratio <= kSurveyBandHigh;
    if (o.format == "json") {
        Json trend = Json::array();
        for (std::size_t i = 1; i < rows.size(); ++i) trend.push_back(rows[i].ratio / rows[i - 1].ratio);
        Json table = Json::array();
        for (const auto& r : rows)
            table.push_back(Json{{"q", r.q},
                                 {"moment_over_phi", r.moment_over_phi},
                                 {"logq_pow_k2", r.logq_pow_k2},
                                 {"ratio", r.ratio}});
        Json doc{{"command", "survey"},
                 {"config", {{"k", k.str()}, {"method", o.method}, {"primes", o.primes}}},
                 {"rows", table},
                 {"successive_ratio_trend", trend},
                 {"band", {kSurveyBandLow, kSurveyBandHigh}},
                 {"pass", pass}};
        return emit_json(o, doc, pass);
    }
    write_output(o.out, survey_csv(rows));
    return pass ? kExitPass : kExitToleranceFail;
}

int cmd_contour(const std::string& which, const Options& o) {
    Json doc{{"command", "contour"}, {"kind", which}};
    bool pass = true;
    if (which == "perron") {
        const auto r = perron_weight_quadrature(o.order, o.x);
        const double closed = perron_closed_form(o.order, o.x);
        pass = std::abs(r.value.real() - closed) < 1e-6;
        doc["config"] = {{"order", o.order}, {"x", o.x}};
        doc["result"] = to_json(r);
        doc["closed_form"] = closed;
    } else if (which == "hankel") {
        const auto r = hankel_recip_gamma_quadrature(o.alpha, o.arm);
        const double expect = std::exp(-log_gamma(cplx(o.alpha, 0.0)).real());
        pass = std::abs(r.value.real() - expect) < 1e-6 + std::exp(-o.arm);
        doc["config"] = {{"alpha", o.alpha}, {"arm", o.arm}};
        doc["result"] = to_json(r);
        doc["reciprocal_gamma"] = expect;
    } else if (which == "zeta-power") {
        const cplx s(o.re, o.im);
        doc["config"] = {{"alpha", o.alpha}, {"s", complex_json(s)}};
        doc["result"] = complex_json(zeta_frac_power(o.alpha, s));
    } else if (which == "lemma6") {
        Lemma6Params p;
        p.m = o.m;
        p.alpha = o.alpha;
        p.beta = Rational::parse(o.beta);
        p.y = o.y.value_or(1e4);
        const auto r = lemma6_check(p, !o.no_numeric);
        pass = !r.has_numeric || r.relative_error < 1e-3;
        doc["config"] = {{"m", p.m}, {"alpha", p.alpha}, {"beta", p.beta.str()}, {"y", p.y}, {"numeric", !o.no_numeric}};
        doc["result"] = to_json(r);
    } else if (which == "khalf") {
        const double y = o.y.value_or(1e4);
        const auto r = khalf_final_check(y, !o.no_numeric);
        pass = r.oracle > 0.0 && (!r.has_numeric || r.relative_error < 1e-2);
        doc["config"] = {{"y", y}, {"numeric", !o.no_numeric}};
        doc["result"] = to_json(r);
    } else if (which == "sweep") {
        const auto rows = lemma6_sweep(o.m, o.alpha, Rational::parse(o.beta), o.ys, o.numeric);
        double lo = INFINITY, hi = 0.0;
        for (const auto& r : rows) {
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
        }
        pass = rows.empty() || (lo > 0.0 && hi <= 3.0 * lo);
        write_output(o.out, sweep_csv(rows));
        return pass ? kExitPass : kExitToleranceFail;
    } else if (which == "eta") {
        const auto rep = eta_stability(o.s_param, parse_complex(o.w0), parse_shifts(o.shifts), o.cutoffs);
        pass = rep.levels.size() < 2 || rep.drift < 1e-3;
        doc["config"] = {{"s", o.s_param}, {"w0", o.w0}, {"shifts", o.shifts}, {"cutoffs", o.cutoffs}};
        doc["result"] = to_json(rep);
    } else {
        throw DomainError("unknown contour kind '" + which + "'");
    }
    doc["pass"] = pass;
    return emit_json(o, doc, pass);
}

int cmd_dump(const Options& o) {
    if (o.n < 1 || o.n > kMaxSeriesCutoff) throw DomainError("n must lie in [1, 10^7]");
    const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(o.n, 2)));
    const double xv = o.x;
    const double yv = o.y.value_or(10.0);
    if (o.kind == "divisor") {
        write_output(o.out, coefficient_csv(divisor_series(sieve, Rational::parse(o.k), o.n)));
    } else if (o.kind == "mobius") {
        write_output(o.out, coefficient_csv(mobius_series(sieve, o.n)));
    } else if (o.kind == "weighted") {
        write_output(o.out, coefficient_csv(weighted_poly_coeffs(sieve, o.big_a, o.big_b, xv, o.n)));
    } else if (o.kind == "mollifier") {
        write_output(o.out, coefficient_csv(mollifier_coeffs(sieve, o.big_a, o.big_b, yv, o.n)));
    } else if (o.kind == "sigma" || o.kind == "rho" || o.kind == "psi") {
        const auto mode = o.kind == "sigma" ? ShiftMode::Sigma : o.kind == "rho" ? ShiftMode::Rho : ShiftMode::Psi;
        const auto secondary = mode == ShiftMode::Psi ? parse_shifts(o.zshifts) : ShiftVector{};
        write_output(o.out, coefficient_csv(shifted_series(sieve, mode, parse_shifts(o.shifts), o.s_param, o.n, secondary)));
    } else {
        throw DomainError("unknown coefficient kind '" + o.kind + "'");
    }
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"fracmoment: verification bench for mollified fractional moments of Dirichlet L-functions"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("-o,--out", o.out, "Output path ('-' for stdout)");
    };

    auto* verify = app.add_subcommand("verify", "Run a verification check at fixed tolerances");
    std::vector<std::string> check_names = kChecks;
    check_names.push_back("all");
    verify->add_option("check", o.check, "Check name")->required()->check(CLI::IsMember(check_names));
    verify->add_option("--s", o.s_values, "Convolution powers s");
    verify->add_option("--nmax", o.nmax, "Largest n for the convolution check");
    verify->add_option("--qmin", o.qmin, "Smallest modulus for the afe check");
    verify->add_option("--qmax", o.qmax, "Largest modulus for the orthogonality check");
    verify->add_option("--q", o.moduli, "Moduli (check-specific default)");
    verify->add_option("--pairs", o.pairs, "Random coefficient pairs per modulus");
    verify->add_option("--seed", o.seed, "Random seed");
    verify->add_option("--y", o.y, "y for the lemma6 / khalf checks");
    verify->add_option("--k", o.k, "k = r/s");
    verify->add_option("--a", o.a, "x = y^a exponent");
    verify->add_option("--method", o.method, "L-value method for the survey");
    verify->add_option("--primes", o.primes, "Survey primes");
    add_out(verify);
    verify->callback([&] { action = [&] { return cmd_verify(o); }; });

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--q", o.q, "Prime modulus");
        sub->add_option("--k", o.k, "k = r/s in lowest terms, 0 < k < 1");
        sub->add_option("--a", o.a, "Exponent in x = y^a");
        sub->add_option("--y", o.y, "Mollifier length y (default q^{1/(4as)} clamped to >= 2)");
    };

    auto* moments = app.add_subcommand("moments", "Fractional moment M_k(q)");
    add_params(moments);
    moments->add_option("--method", o.method, "oracle | smoothed | afe")
        ->check(CLI::IsMember({"oracle", "smoothed", "afe"}));
    moments->add_flag("--contributions", o.contributions, "Include per-character contributions");
    moments->add_option("--lvalues-csv", o.lvalues_csv, "Also write the L-value table as CSV");
    add_out(moments);
    moments->callback([&] { action = [&] { return cmd_moments(o); }; });

    auto* holder = app.add_subcommand("holder", "S_l, S_u, the |P|^{4r} sum and the Holder chain");
    add_params(holder);
    add_out(holder);
    holder->callback([&] { action = [&] { return cmd_holder(o); }; });

    auto* survey = app.add_subcommand("survey", "M_k(q)/phi(q) against (log q)^{k^2}");
    survey->add_option("--k", o.k, "k = r/s, 0 < k <= 1");
    survey->add_option("--primes", o.primes, "Prime moduli");
    survey->add_option("--method", o.method, "oracle | smoothed | afe")
        ->check(CLI::IsMember({"oracle", "smoothed", "afe"}));
    survey->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    add_out(survey);
    survey->callback([&] { action = [&] { return cmd_survey(o); }; });

    auto* contour = app.add_subcommand("contour", "Contour-integral identities");
    contour->require_subcommand(1);
    const std::vector<std::string> kinds{"perron", "hankel", "zeta-power", "lemma6", "khalf", "sweep", "eta"};
    for (const auto& kind : kinds) {
        auto* sub = contour->add_subcommand(kind);
        if (kind == "perron") {
            sub->add_option("--order", o.order, "2 or 3");
            sub->add_option("--x", o.x, "x > 0, x != 1");
        } else if (kind == "hankel") {
            sub->add_option("--alpha", o.alpha, "alpha > 0");
            sub->add_option("--arm", o.arm, "Arm length (>= 10)");
        } else if (kind == "zeta-power") {
            sub->add_option("--alpha", o.alpha, "Exponent");
            sub->add_option("--re", o.re, "Re s");
            sub->add_option("--im", o.im, "Im s");
        } else if (kind == "lemma6" || kind == "sweep") {
            sub->add_option("--m", o.m, "1 or 2");
            sub->add_option("--alpha", o.alpha, "alpha > 2");
            sub->add_option("--beta", o.beta, "beta > 0 as r/s");
            if (kind == "lemma6") {
                sub->add_option("--y", o.y, "y >= 10");
                sub->add_flag("--no-numeric", o.no_numeric, "Oracle only");
            } else {
                sub->add_option("--ys", o.ys, "y values");
                sub->add_flag("--numeric", o.numeric, "Also run the two-variable quadrature (m = 1)");
            }
        } else if (kind == "khalf") {
            sub->add_option("--y", o.y, "y >= 10");
            sub->add_flag("--no-numeric", o.no_numeric, "Oracle only");
        } else if (kind == "eta") {
            sub->add_option("--s", o.s_param, "s parameter");
            sub->add_option("--w0", o.w0, "Complex w0, e.g. 0.5 or 0.5+0.1i");
            sub->add_option("--shift", o.shifts, "Shifts w_i");
            sub->add_option("--cutoffs", o.cutoffs, "Truncation levels");
        }
        add_out(sub);
        sub->callback([&, kind] { action = [&, kind] { return cmd_contour(kind, o); }; });
    }

    auto* dump = app.add_subcommand("dump-coeffs", "Write a coefficient series as CSV");
    dump->add_option("--kind", o.kind, "divisor | mobius | weighted | mollifier | sigma | rho | psi")
        ->check(CLI::IsMember({"divisor", "mobius", "weighted", "mollifier", "sigma", "rho", "psi"}));
    dump->add_option("--alpha", o.k, "Exponent alpha as r/s (divisor)");
    dump->add_option("--A", o.big_a, "Convolution power A");
    dump->add_option("--B", o.big_b, "Denominator B");
    dump->add_option("--x", o.x, "Polynomial length x");
    dump->add_option("--y", o.y, "Mollifier length y");
    dump->add_option("--s", o.s_param, "s parameter (shifted series)");
    dump->add_option("--shift", o.shifts, "Primary shifts");
    dump->add_option("--zshift", o.zshifts, "Secondary shifts (psi)");
    dump->add_option("--n", o.n, "Cutoff N");
    add_out(dump);
    dump->callback([&] { action = [&] { return cmd_dump(o); }; });

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitPass;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "fracmoment: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "fracmoment: invalid parameters: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fracmoment: invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "fracmoment: invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace fracmoment
