#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracmoment/characters.hpp"
#include "fracmoment/cli.hpp"
#include "fracmoment/contour.hpp"
#include "fracmoment/lvalues.hpp"
#include "fracmoment/moments.hpp"
#include "fracmoment/multiplicative.hpp"
#include "fracmoment/report.hpp"

namespace py = pybind11;
using namespace fracmoment;

namespace {

std::uint32_t sieve_for(std::size_t n) {
    return static_cast<std::uint32_t>(std::max<std::size_t>(n, 2));
}

// Reports cross the boundary as JSON text; the package decodes them.
std::string holder_json(std::int64_t q, const std::string& k, double a, std::optional<double> y) {
    const auto kk = Rational::parse(k);
    const auto p = y ? MomentParams::with_y(q, kk, *y, a) : MomentParams::defaults(q, kk, a);
    return dump_json(to_json(holder_chain_check(p, CharacterTable(q))));
}

std::string moment_json(std::int64_t q, const std::string& k, const std::string& method) {
    const auto p = MomentParams::defaults(q, Rational::parse(k));
    return dump_json(to_json(moment_k(p, parse_lmethod(method))));
}

std::string lemma6_json(int m, double alpha, const std::string& beta, double y, bool numeric) {
    Lemma6Params p;
    p.m = m;
    p.alpha = alpha;
    p.beta = Rational::parse(beta);
    p.y = y;
    return dump_json(to_json(lemma6_check(p, numeric)));
}

}  // namespace

PYBIND11_MODULE(_fracmoment, m) {
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("factorize", [](std::uint32_t n) {
        std::vector<std::pair<std::uint32_t, int>> out;
        for (const auto& pp : FactorSieve(sieve_for(n)).factorize(n)) out.emplace_back(pp.prime, pp.exponent);
        return out;
    });
    m.def("divisor_coeff", [](const std::string& alpha, std::uint32_t n) {
        return divisor_coeff(FactorSieve(sieve_for(n)), Rational::parse(alpha), n);
    });
    m.def("divisor_series", [](const std::string& alpha, std::size_t cutoff) {
        return divisor_series(FactorSieve(sieve_for(cutoff)), Rational::parse(alpha), cutoff).values;
    });
    m.def("weighted_poly_coeffs", [](int a, int b, double x, std::size_t cutoff) {
        return weighted_poly_coeffs(FactorSieve(sieve_for(cutoff)), a, b, x, cutoff).values;
    });
    m.def("mollifier_coeffs", [](int a, int b, double y, std::size_t cutoff) {
        return mollifier_coeffs(FactorSieve(sieve_for(cutoff)), a, b, y, cutoff).values;
    });

    m.def("primitive_root", [](std::int64_t q) { return CharacterTable(q).primitive_root(); });
    m.def("chi", [](std::int64_t q, std::int64_t j, std::int64_t a) { return CharacterTable(q).chi(j, a); });
    m.def("character_sum", [](std::int64_t q, std::int64_t a) { return character_sum(CharacterTable(q), a); });
    m.def("dft_all_characters", [](std::int64_t q, const std::vector<cplx>& coeffs) {
        return dft_all_characters(CharacterTable(q), coeffs);
    });

    m.def("l_half", [](std::int64_t q, std::int64_t j, const std::string& method) {
        const CharacterTable t(q);
        switch (parse_lmethod(method)) {
            case LMethod::Oracle: return *l_half_oracle(t, j).value;
            case LMethod::Smoothed: return *l_half_smoothed(t, j).value;
            case LMethod::Afe: break;
        }
        throw DomainError("the afe route yields |L|^2 only; use l_square");
    }, py::arg("q"), py::arg("j"), py::arg("method") = "oracle");
    m.def("l_square", [](std::int64_t q, std::int64_t j, const std::string& method) {
        const CharacterTable t(q);
        switch (parse_lmethod(method)) {
            case LMethod::Oracle: return l_half_oracle(t, j).square;
            case LMethod::Smoothed: return l_half_smoothed(t, j).square;
            case LMethod::Afe: return l_square_afe(t, j).square;
        }
        return 0.0;
    }, py::arg("q"), py::arg("j"), py::arg("method") = "oracle");
    m.def("w_weight", [](double x, int parity) { return w_weight(x, parity); });

    m.def("moment_json", &moment_json, py::arg("q"), py::arg("k") = "1/2", py::arg("method") = "oracle");
    m.def("holder_json", &holder_json, py::arg("q"), py::arg("k") = "1/2", py::arg("a") = 4.0,
          py::arg("y") = py::none());
    m.def("holder_exponents", [](const std::string& k) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& e : holder_exponents(Rational::parse(k))) out.emplace_back(e.num, e.den);
        return out;
    });

    m.def("perron_weight", &perron_weight);
    m.def("hankel_recip_gamma", &hankel_recip_gamma, py::arg("alpha"), py::arg("arm") = 25.0);
    m.def("zeta_frac_power", &zeta_frac_power);
    m.def("lemma6_json", &lemma6_json, py::arg("m") = 1, py::arg("alpha") = 3.0, py::arg("beta") = "1",
          py::arg("y") = 1e4, py::arg("numeric") = true);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"fracmoment"};
        full.insert(full.end(), args.begin(), args.end());
        return run_cli(full);
    });
}
