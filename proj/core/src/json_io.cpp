// JSON encoding/decoding for records and reports; nlohmann/json stays an
// implementation detail of this translation unit.

#include "welim/json_io.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"

namespace welim {

namespace {

using json = nlohmann::json;

json parse_object(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
  return j;
}

const json& require_field(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + field + "\"");
  return *it;
}

Int require_int(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field \"") + field + "\" must be an integer");
  }
  return v.get<Int>();
}

Params params_from(const json& j) {
  const Int p = require_int(j, "p");
  const Int n = require_int(j, "n");
  const Int f = require_int(j, "f");
  if (n < 1 || n > 1024) throw ParseError("field \"n\" out of range");
  if (f < 1 || f > 1024) throw ParseError("field \"f\" out of range");
  try {
    return Params(p, static_cast<int>(n), static_cast<int>(f));
  } catch (const std::exception& ex) {
    throw ParseError(ex.what());
  }
}

json weight_json(const RestrictedWeight& w) {
  json rows = json::array();
  for (const auto& row : w.lambda) rows.push_back(row);
  return json{{"p", w.params.p}, {"n", w.params.n}, {"f", w.params.f}, {"lambda", rows}};
}

json rep_json(const SemisimpleInertialData& rho) {
  json summands = json::array();
  for (const auto& sm : rho.summands) summands.push_back(json{{"ni", sm.ni}, {"m", sm.m}});
  return json{{"p", rho.params.p},
              {"n", rho.params.n},
              {"f", rho.params.f},
              {"summands", summands}};
}

json type_json(const InertialType& xi) {
  json rows = json::array();
  for (const auto& row : xi.rows) rows.push_back(row.digits);
  return json{{"p", xi.params.p}, {"n", xi.params.n}, {"f", xi.params.f}, {"xi", rows}};
}

std::vector<std::vector<Int>> int_matrix(const json& j, const char* field, int rows,
                                         const char* row_length_name, int row_length) {
  const json& v = require_field(j, field);
  if (!v.is_array() || static_cast<int>(v.size()) != rows) {
    throw ParseError(std::string("field \"") + field + "\" must be an array of " +
                     std::to_string(rows) + " rows");
  }
  std::vector<std::vector<Int>> out;
  out.reserve(v.size());
  for (size_t r = 0; r < v.size(); ++r) {
    const json& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != row_length) {
      throw ParseError(std::string("field \"") + field + "\" row " + std::to_string(r) +
                       " must be an array of " + row_length_name + " = " +
                       std::to_string(row_length) + " integers");
    }
    std::vector<Int> entries;
    entries.reserve(row.size());
    for (size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number_integer()) {
        throw ParseError(std::string("field \"") + field + "\" entry (" +
                         std::to_string(r) + "," + std::to_string(c) +
                         ") must be an integer");
      }
      entries.push_back(row[c].get<Int>());
    }
    out.push_back(std::move(entries));
  }
  return out;
}

json survivor_json(const SurvivingWeight& s) {
  json rec = weight_json(s.weight);
  rec["margin"] = s.margin;
  rec["canonical"] = true;
  return rec;
}

// (margin, class key) ascending.
std::vector<const SurvivingWeight*> sorted_survivors(const EliminationReport& report) {
  std::vector<std::pair<WeightClassKey, const SurvivingWeight*>> keyed;
  keyed.reserve(report.survivors.size());
  for (const auto& s : report.survivors) keyed.emplace_back(class_key(s.weight), &s);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second->margin != b.second->margin) return a.second->margin < b.second->margin;
    return a.first < b.first;
  });
  std::vector<const SurvivingWeight*> out;
  out.reserve(keyed.size());
  for (const auto& [key, ptr] : keyed) out.push_back(ptr);
  return out;
}

json verify_config_json(const VerifyConfig& c) {
  return json{{"p", c.params.p},       {"n", c.params.n},
              {"f", c.params.f},       {"delta", c.delta},
              {"mode", mode_name(c.mode)}, {"sample", c.sampling.sample},
              {"seed", c.sampling.seed},   {"workers", c.workers}};
}

json survey_config_json(const SurveyConfig& c) {
  return json{{"p", c.params.p},           {"n", c.params.n},
              {"f", c.params.f},           {"delta_min", c.delta_min},
              {"delta_max", c.delta_max},  {"sample", c.sampling.sample},
              {"seed", c.sampling.seed},   {"workers", c.workers}};
}

}  // namespace

RecordKind classify_record(const std::string& text) {
  const json j = parse_object(text);
  const int hits = static_cast<int>(j.contains("lambda")) +
                   static_cast<int>(j.contains("summands")) +
                   static_cast<int>(j.contains("xi"));
  if (hits != 1) {
    throw ParseError(
        "record must contain exactly one of \"lambda\", \"summands\", \"xi\"");
  }
  if (j.contains("lambda")) return RecordKind::weight;
  if (j.contains("summands")) return RecordKind::rep;
  return RecordKind::type;
}

RestrictedWeight parse_weight(const std::string& text) {
  const json j = parse_object(text);
  const Params params = params_from(j);
  auto rows = int_matrix(j, "lambda", params.f, "n", params.n);
  try {
    return RestrictedWeight(params, std::move(rows));
  } catch (const std::exception& ex) {
    throw ParseError(std::string("field \"lambda\": ") + ex.what());
  }
}

SemisimpleInertialData parse_rep(const std::string& text) {
  const json j = parse_object(text);
  const Params params = params_from(j);
  const json& v = require_field(j, "summands");
  if (!v.is_array() || v.empty()) {
    throw ParseError("field \"summands\" must be a non-empty array");
  }
  std::vector<std::pair<int, Int>> parts;
  parts.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const json& sm = v[i];
    if (!sm.is_object()) {
      throw ParseError("field \"summands\" entry " + std::to_string(i) +
                       " must be an object with \"ni\" and \"m\"");
    }
    const Int ni = require_int(sm, "ni");
    const Int m = require_int(sm, "m");
    if (ni < 1 || ni > params.n) {
      throw ParseError("field \"ni\" must lie in [1, n] in summand " + std::to_string(i));
    }
    parts.emplace_back(static_cast<int>(ni), m);
  }
  try {
    return make_semisimple(params, parts);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("field \"summands\": ") + ex.what());
  }
}

InertialType parse_type(const std::string& text) {
  const json j = parse_object(text);
  const Params params = params_from(j);
  auto rows = int_matrix(j, "xi", params.n, "f", params.f);
  std::vector<DigitVector> digit_rows;
  digit_rows.reserve(rows.size());
  for (auto& row : rows) digit_rows.push_back(DigitVector{params.p, std::move(row)});
  try {
    return InertialType(params, std::move(digit_rows));
  } catch (const std::exception& ex) {
    throw ParseError(std::string("field \"xi\": ") + ex.what());
  }
}

std::string serialize_weight(const RestrictedWeight& w) { return weight_json(w).dump(); }

std::string serialize_rep(const SemisimpleInertialData& rho) { return rep_json(rho).dump(); }

std::string serialize_type(const InertialType& xi) { return type_json(xi).dump(); }

std::string weight_genericity_json(const RestrictedWeight& w) {
  return json{{"margin", weight_margin(w)}, {"regular", is_regular(w)}}.dump();
}

std::string rep_genericity_json(const SemisimpleInertialData& rho) {
  return json{{"margin", rep_margin(rho)}}.dump();
}

std::string elimination_report_json(const EliminationReport& report) {
  json survivors = json::array();
  for (const SurvivingWeight* s : sorted_survivors(report)) {
    survivors.push_back(survivor_json(*s));
  }
  const json j{{"schema_version", kSchemaVersion},
               {"rep", rep_json(report.rho)},
               {"survivor_count", report.survivors.size()},
               {"survivors", survivors}};
  return j.dump(2);
}

std::vector<std::string> elimination_stream_lines(const EliminationReport& report) {
  std::vector<std::string> lines;
  lines.reserve(report.survivors.size() + 2);
  lines.push_back(json{{"kind", "elimination_stream"},
                       {"schema_version", kSchemaVersion},
                       {"rep", rep_json(report.rho)}}
                      .dump());
  for (const SurvivingWeight* s : sorted_survivors(report)) {
    lines.push_back(survivor_json(*s).dump());
  }
  lines.push_back(
      json{{"kind", "elimination_summary"}, {"survivor_count", report.survivors.size()}}
          .dump());
  return lines;
}

std::string verdict_report_json(const VerdictReport& report) {
  json j{{"schema_version", kSchemaVersion},
         {"config", verify_config_json(report.config)}};
  switch (report.verdict) {
    case Verdict::pass:
      j["verdict"] = "pass";
      break;
    case Verdict::counterexample:
      j["verdict"] = "counterexample";
      break;
    case Verdict::invalid_input:
      j["verdict"] = "invalid-input";
      break;
  }
  if (report.verdict == Verdict::invalid_input) {
    j["invalid_reason"] = report.invalid_reason;
  } else {
    j["bound"] = report.bound;
  }
  if (report.counterexample) {
    const Counterexample& cex = *report.counterexample;
    j["counterexample"] = json{{"rep", rep_json(cex.rho)},
                               {"weight", weight_json(cex.weight)},
                               {"rep_margin", cex.rep_margin_value},
                               {"weight_margin", cex.weight_margin_value}};
  }
  json stats{{"reps_scanned", report.stats.reps_scanned},
             {"reps_checked", report.stats.reps_checked},
             {"weights_total", report.stats.weights_total},
             {"survivors_total", report.stats.survivors_total},
             {"wall_seconds", report.stats.wall_seconds}};
  stats["min_survivor_margin"] =
      report.stats.min_survivor_margin ? json(*report.stats.min_survivor_margin)
                                       : json(nullptr);
  j["stats"] = std::move(stats);
  return j.dump(2);
}

std::string survey_report_json(const SurveyReport& report) {
  json rows = json::array();
  for (const SurveyRow& row : report.rows) {
    json hist = json::array();
    for (const auto& [margin, count] : row.histogram) {
      hist.push_back(json::array({margin, count}));
    }
    json r{{"delta", row.delta},
           {"reps", row.reps},
           {"survivor_pairs", row.survivor_pairs},
           {"bound_satisfied", row.bound_satisfied},
           {"histogram", hist},
           {"empty_stratum", row.empty_stratum}};
    r["min_margin"] = row.min_margin ? json(*row.min_margin) : json(nullptr);
    r["asserted_bound"] = row.asserted_bound ? json(*row.asserted_bound) : json(nullptr);
    if (row.empty_stratum) r["note"] = "no representations at this genericity";
    rows.push_back(std::move(r));
  }
  const json j{{"schema_version", kSchemaVersion},
               {"config", survey_config_json(report.config)},
               {"rows", rows},
               {"wall_seconds", report.wall_seconds}};
  return j.dump(2);
}

VerifyMode parse_mode(const std::string& name) {
  if (name == "general") return VerifyMode::general;
  if (name == "f_equals_1") return VerifyMode::f_equals_one;
  throw ParseError("field \"mode\" must be \"general\" or \"f_equals_1\"");
}

std::string mode_name(VerifyMode mode) {
  return mode == VerifyMode::general ? "general" : "f_equals_1";
}

}  // namespace welim
