#include "fracmoment/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace fracmoment {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_indent(std::string& out, int depth) {
    out.append(static_cast<std::size_t>(2 * depth), ' ');
}

void write_json(std::string& out, const Json& j, int depth) {
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [key, val] : j.items()) {
                write_indent(out, depth + 1);
                out += Json(key).dump();
                out += ": ";
                write_json(out, val, depth + 1);
                out += ++i < j.size() ? ",\n" : "\n";
            }
            write_indent(out, depth);
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                write_indent(out, depth + 1);
                write_json(out, j[i], depth + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            write_indent(out, depth);
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

Json complex_json(cplx z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string dump_json(const Json& doc) {
    std::string out;
    write_json(out, doc, 0);
    out += "\n";
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move report into '" + path + "'");
    }
}

Json to_json(const MomentParams& p, LMethod method) {
    return Json{{"q", p.q}, {"r", p.r}, {"s", p.s}, {"x", p.x}, {"y", p.y}, {"a", p.a}, {"method", to_string(method)}};
}

Json to_json(const MomentReport& r, bool include_contributions) {
    Json j{{"params", to_json(r.params, r.method)},
           {"k", r.params.k().str()},
           {"moment", r.moment},
           {"characters", r.contributions.size()},
           {"flagged", r.flagged}};
    if (include_contributions) j["contributions"] = r.contributions;
    return j;
}

Json to_json(const HolderReport& r) {
    Json p4{{"lhs", r.p4.lhs}};
    p4["rhs"] = r.p4_applicable ? Json(r.p4.rhs) : Json(nullptr);
    return Json{{"params", to_json(r.params, LMethod::Oracle)},
                {"moment", r.moment},
                {"s_lower", complex_json(r.s_lower)},
                {"s_upper", r.s_upper},
                {"p4", p4},
                {"holder", {{"f1", r.f1}, {"f2", r.f2}, {"f3", r.f3}, {"slack", r.slack}, {"pass", r.pass}}},
                {"regime_flag", r.regime_flag}};
}

Json to_json(const Lemma6Report& r) {
    Json j{{"params",
            {{"m", r.params.m},
             {"alpha", r.params.alpha},
             {"beta", r.params.beta.str()},
             {"y", r.params.y},
             {"u_max", r.params.u_max},
             {"step", r.params.step}}},
           {"gamma", r.gamma},
           {"oracle", r.oracle},
           {"ratio", r.ratio}};
    if (r.has_numeric) {
        j["numeric"] = r.numeric;
        j["numeric_imag"] = r.numeric_imag;
        j["numeric_error"] = r.numeric_error;
        j["relative_error"] = r.relative_error;
    } else {
        j["numeric"] = nullptr;
    }
    return j;
}

Json to_json(const EtaReport& r) {
    Json shifts = Json::array();
    for (const auto& w : r.shifts.shifts) shifts.push_back(complex_json(w));
    Json levels = Json::array();
    for (const auto& l : r.levels) levels.push_back(Json{{"cutoff", l.cutoff}, {"eta", complex_json(l.eta)}});
    return Json{{"s", r.s_param}, {"w0", complex_json(r.w0)}, {"shifts", shifts}, {"levels", levels}, {"drift", r.drift}};
}

Json to_json(const QuadratureResult& r) {
    return Json{{"value", complex_json(r.value)},
                {"error_estimate", r.error_estimate},
                {"nodes", r.nodes},
                {"budget_exceeded", r.budget_exceeded}};
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
    std::ostringstream out;
    out << "q,moment_over_phi,logq_pow_k2,ratio\n";
    for (const auto& r : rows)
        out << r.q << ',' << format_double(r.moment_over_phi) << ',' << format_double(r.logq_pow_k2) << ','
            << format_double(r.ratio) << '\n';
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "y,value,oracle,ratio\n";
    for (const auto& r : rows)
        out << format_double(r.y) << ',' << format_double(r.value) << ',' << format_double(r.oracle) << ','
            << format_double(r.ratio) << '\n';
    return out.str();
}

std::string coefficient_csv(const CoefficientSeries& s) {
    std::ostringstream out;
    out << "n,value\n";
    for (std::size_t n = 1; n <= s.cutoff; ++n) out << n << ',' << format_double(s.values[n]) << '\n';
    return out.str();
}

std::string coefficient_csv(const ComplexSeries& s) {
    std::ostringstream out;
    out << "n,re,im\n";
    for (std::size_t n = 1; n <= s.cutoff; ++n)
        out << n << ',' << format_double(s.values[n].real()) << ',' << format_double(s.values[n].imag()) << '\n';
    return out.str();
}

std::string lvalue_csv(std::int64_t q, const std::vector<LValueRecord>& records) {
    std::ostringstream out;
    write_lvalue_csv(out, q, records);
    return out.str();
}

}  // namespace fracmoment
