// Report serialization: JSON with fixed key order and 17-significant-digit
// floats, CSV tables, and atomic file output.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fracmoment/contour.hpp"
#include "fracmoment/lvalues.hpp"
#include "fracmoment/moments.hpp"

namespace fracmoment {

using Json = nlohmann::ordered_json;

/// "%.17g"; non-finite values become "nan", "inf" or "-inf".
std::string format_double(double v);

/// Serializes with two-space indentation. Floats use format_double;
/// non-finite floats are written as null.
std::string dump_json(const Json& doc);

/// Writes content to path through a temporary file and rename. "-" writes
/// to stdout. Throws IoError on failure.
void write_output(const std::string& path, const std::string& content);

Json to_json(const MomentParams& p, LMethod method);
Json to_json(const MomentReport& r, bool include_contributions = false);
/// Schema {params, moment, s_lower, s_upper, p4, holder, regime_flag}.
Json to_json(const HolderReport& r);
Json to_json(const Lemma6Report& r);
Json to_json(const EtaReport& r);
Json to_json(const QuadratureResult& r);

std::string survey_csv(const std::vector<SurveyRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string coefficient_csv(const CoefficientSeries& s);
std::string coefficient_csv(const ComplexSeries& s);
std::string lvalue_csv(std::int64_t q, const std::vector<LValueRecord>& records);

}  // namespace fracmoment
