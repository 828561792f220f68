#pragma once
// JSON wire formats: weight / representation / type records, genericity
// records, elimination reports (array and line-delimited), verdict reports,
// and survey reports.  Field names are part of the public contract.

#include "welim/elimination.hpp"
#include "welim/verify.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace welim {

inline constexpr char kSchemaVersion[] = "welim/1";

// Malformed input; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RecordKind { weight, rep, type };

// A record holds exactly one of "lambda" (weight), "summands" (rep), "xi"
// (type), always alongside "p", "n", "f".
RecordKind classify_record(const std::string& text);

RestrictedWeight parse_weight(const std::string& text);
SemisimpleInertialData parse_rep(const std::string& text);
InertialType parse_type(const std::string& text);

std::string serialize_weight(const RestrictedWeight& w);       // {p,n,f,lambda}
std::string serialize_rep(const SemisimpleInertialData& rho);  // {p,n,f,summands:[{ni,m}]}
std::string serialize_type(const InertialType& xi);            // {p,n,f,xi}

std::string weight_genericity_json(const RestrictedWeight& w);       // {margin,regular}
std::string rep_genericity_json(const SemisimpleInertialData& rho);  // {margin}

// Survivors sorted by (margin, class key); each carries the full canonical
// weight record, its margin, and "canonical": true.
std::string elimination_report_json(const EliminationReport& report);

// Line-delimited form: header object, one line per survivor, summary object.
std::vector<std::string> elimination_stream_lines(const EliminationReport& report);

// wall_seconds is the only field that varies between identical runs.
std::string verdict_report_json(const VerdictReport& report);
std::string survey_report_json(const SurveyReport& report);

VerifyMode parse_mode(const std::string& name);  // "general" | "f_equals_1"
std::string mode_name(VerifyMode mode);

}  // namespace welim
