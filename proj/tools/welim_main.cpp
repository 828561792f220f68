// welim: command-line front end.  Subcommands: genericity, eliminate, verify,
// survey, selftest.  Exit codes: 0 pass, 1 mathematical counterexample or
// failed property, 2 invalid input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "welim/elimination.hpp"
#include "welim/json_io.hpp"
#include "welim/verify.hpp"

namespace {

using welim::Int;

std::string read_input(const std::string& in_path) {
  if (in_path.empty()) {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(in_path);
  if (!file) throw std::runtime_error("cannot open input file: " + in_path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  std::cout << content << "\n";
  if (out_path.empty()) return;
  std::ofstream file(out_path);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file << content << "\n";
}

int run_genericity(const std::string& in_path, const std::string& out_path) {
  const std::string text = read_input(in_path);
  switch (welim::classify_record(text)) {
    case welim::RecordKind::weight:
      write_output(out_path, welim::weight_genericity_json(welim::parse_weight(text)));
      return 0;
    case welim::RecordKind::rep:
      write_output(out_path, welim::rep_genericity_json(welim::parse_rep(text)));
      return 0;
    case welim::RecordKind::type:
      break;
  }
  throw welim::ParseError("genericity takes a weight or rep record, not a type");
}

int run_eliminate(const std::string& in_path, const std::string& out_path, bool stream) {
  const welim::SemisimpleInertialData rho = welim::parse_rep(read_input(in_path));
  const welim::EliminationReport report = welim::eliminate(rho);
  if (stream) {
    std::ostringstream joined;
    for (const std::string& line : welim::elimination_stream_lines(report)) {
      joined << line << "\n";
    }
    std::string content = joined.str();
    if (!content.empty()) content.pop_back();  // write_output appends the newline
    write_output(out_path, content);
  } else {
    write_output(out_path, welim::elimination_report_json(report));
  }
  return 0;
}

int run_verify(const welim::VerifyConfig& config, const std::string& out_path) {
  const welim::VerdictReport report = welim::verify_theorem(config);
  write_output(out_path, welim::verdict_report_json(report));
  switch (report.verdict) {
    case welim::Verdict::pass:
      return 0;
    case welim::Verdict::counterexample:
      std::cerr << "counterexample found: survivor margin "
                << report.counterexample->weight_margin_value << " below bound "
                << report.bound << "\n";
      return 1;
    case welim::Verdict::invalid_input:
      break;
  }
  std::cerr << "invalid input: " << report.invalid_reason << "\n";
  return 2;
}

int run_survey(const welim::SurveyConfig& config, const std::string& out_path) {
  const welim::SurveyReport report = welim::survey(config);
  write_output(out_path, welim::survey_report_json(report));
  for (const welim::SurveyRow& row : report.rows) {
    if (!row.bound_satisfied) {
      std::cerr << "bound violated at delta = " << row.delta << "\n";
      return 1;
    }
  }
  return 0;
}

// --- embedded selftest properties ---

std::optional<std::string> check_digit_convention(const std::vector<Int>& fixture) {
  const welim::DigitVector actual = welim::digits_of(38, 2, 7);
  if (actual.digits != fixture) {
    return "digit order fixture does not match digits_of(38, 2, 7)";
  }
  if (welim::DigitVector{7, fixture}.value() != 38) {
    return "digit fixture does not reassemble to 38";
  }
  return std::nullopt;
}

std::optional<std::string> check_carry_solver() {
  const Int p = 5;
  const Int e = welim::e_value(2, p);
  for (Int a0 = -6; a0 <= 6; ++a0) {
    for (Int a1 = -6; a1 <= 6; ++a1) {
      std::optional<std::pair<Int, Int>> brute;
      for (Int t0 = -3; t0 <= 3 && !brute; ++t0) {
        for (Int t1 = -3; t1 <= 3; ++t1) {
          if (a0 == t0 * p - t1 && a1 == t1 * p - t0) {
            brute = {t0, t1};
            break;
          }
        }
      }
      const std::vector<Int> alpha{a0, a1};
      const auto solved = welim::padic_solve(alpha, p);
      if (brute.has_value() != solved.has_value()) {
        return "solvability mismatch at alpha = (" + std::to_string(a0) + ", " +
               std::to_string(a1) + ")";
      }
      if (!solved) continue;
      if (solved->carries != std::vector<Int>{brute->first, brute->second} ||
          a0 + a1 * p != solved->quotient * e) {
        return "solution mismatch at alpha = (" + std::to_string(a0) + ", " +
               std::to_string(a1) + ")";
      }
    }
  }
  for (Int a = -12; a <= 12; ++a) {
    const std::vector<Int> alpha{a};
    if (welim::padic_solve(alpha, 7).has_value() != (a % 6 == 0)) {
      return "single-digit divisibility criterion fails at alpha = " + std::to_string(a);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_raw_subset_final() {
  const welim::Params params(7, 2, 1);
  for (Int a = 0; a <= 5; ++a) {
    for (Int b = 0; b <= 5; ++b) {
      const welim::InertialType xi =
          welim::type_from_values(params, std::vector<Int>{a, b});
      for (int ni = 1; ni <= 2; ++ni) {
        const auto raw = welim::reduction_exponents_raw(xi, ni);
        const auto final_set = welim::reduction_exponents(xi, ni);
        for (const Int v : raw.values) {
          if (!final_set.values.count(v)) {
            return "raw exponent " + std::to_string(v) +
                   " missing from the closed form at rows (" + std::to_string(a) +
                   ", " + std::to_string(b) + "), ni = " + std::to_string(ni);
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_predicate_matches_set() {
  const welim::Params params(7, 2, 1);
  for (Int a = 0; a <= 5; ++a) {
    for (Int b = 0; b <= 5; ++b) {
      const welim::InertialType xi =
          welim::type_from_values(params, std::vector<Int>{a, b});
      for (int ni = 1; ni <= 2; ++ni) {
        const auto final_set = welim::reduction_exponents(xi, ni);
        for (Int m = 0; m < params.e(ni); ++m) {
          if (welim::is_compatible(m, xi, ni) !=
              static_cast<bool>(final_set.values.count(m))) {
            return "membership disagreement at m = " + std::to_string(m) +
                   ", rows (" + std::to_string(a) + ", " + std::to_string(b) +
                   "), ni = " + std::to_string(ni);
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_transfer_bound() {
  const welim::Params params(7, 2, 2);
  const welim::WeightEnumeration en(params);
  for (Int i = 0; i < en.size(); ++i) {
    const welim::RestrictedWeight w = en.at(i);
    const welim::InertialType xi = welim::covering_type(w);
    Int type_margin = params.margin_cap();
    for (int j = 0; j < params.f; ++j) {
      std::vector<Int> column;
      for (int s = 0; s < params.n; ++s) column.push_back(xi.digit(s, j));
      type_margin = std::min(type_margin, welim::multiset_margin(column, params.p));
    }
    if (welim::weight_margin(w) < type_margin - (params.n - 1)) {
      return "margin transfer bound fails at weight index " + std::to_string(i);
    }
  }
  return std::nullopt;
}

int run_selftest(const std::string& sabotage) {
  if (!sabotage.empty() && sabotage != "digit-convention") {
    throw std::invalid_argument("unknown sabotage fixture: " + sabotage);
  }
  std::vector<Int> digit_fixture{3, 5};  // digits_of(38, 2, 7), least significant first
  if (sabotage == "digit-convention") {
    std::reverse(digit_fixture.begin(), digit_fixture.end());
  }

  struct Property {
    const char* name;
    std::optional<std::string> failure;
  };
  const Property properties[] = {
      {"digit-convention", check_digit_convention(digit_fixture)},
      {"carry-solver", check_carry_solver()},
      {"raw-subset-final", check_raw_subset_final()},
      {"predicate-matches-set", check_predicate_matches_set()},
      {"transfer-bound", check_transfer_bound()},
  };
  for (const Property& prop : properties) {
    if (prop.failure) {
      std::cerr << "selftest failure: " << prop.name << ": " << *prop.failure << "\n";
      return 1;
    }
    std::cout << "[ok] " << prop.name << "\n";
  }
  std::cout << "selftest: all properties hold\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weight elimination for tame mod-p inertial data"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  bool stream = false;

  Int p = 0, delta = 1, delta_max = 0, sample = 0;
  int n = 1, f = 1, workers = 0;
  std::uint64_t seed = 0;
  std::string mode = "general";
  std::string sabotage;

  CLI::App* gen = app.add_subcommand(
      "genericity", "margin of a weight record {p,n,f,lambda} or rep record "
                    "{p,n,f,summands} read from --in or stdin");
  gen->add_option("--in", in_path, "input file (default: stdin)");
  gen->add_option("--out", out_path, "also write the result here");

  CLI::App* elim = app.add_subcommand(
      "eliminate", "surviving weight classes for a rep record {p,n,f,summands}");
  elim->add_option("--in", in_path, "input file (default: stdin)");
  elim->add_option("--out", out_path, "also write the report here");
  elim->add_flag("--stream", stream, "line-delimited JSON output");

  CLI::App* verify = app.add_subcommand(
      "verify", "check the survivor-margin lower bound over delta-generic reps");
  verify->add_option("--p", p, "prime")->required();
  verify->add_option("--n", n, "dimension")->required();
  verify->add_option("--f", f, "unramified degree")->required();
  verify->add_option("--delta", delta, "genericity level")->required();
  verify->add_option("--mode", mode, "general | f_equals_1");
  verify->add_option("--sample", sample, "sampled reps (0 = exhaustive)");
  CLI::Option* verify_seed = verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--workers", workers, "worker threads (0 = all cores)");
  verify->add_option("--out", out_path, "also write the report here");

  CLI::App* survey = app.add_subcommand(
      "survey", "survivor-margin histograms across a range of genericity levels");
  survey->add_option("--p", p, "prime")->required();
  survey->add_option("--n", n, "dimension")->required();
  survey->add_option("--f", f, "unramified degree")->required();
  survey->add_option("--delta", delta, "lowest genericity level")->required();
  survey->add_option("--delta-max", delta_max, "highest level (default: --delta)");
  survey->add_option("--sample", sample, "sampled reps per level (0 = exhaustive)");
  CLI::Option* survey_seed = survey->add_option("--seed", seed, "sampling seed");
  survey->add_option("--workers", workers, "worker threads (0 = all cores)");
  survey->add_option("--out", out_path, "also write the report here");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the embedded oracle property suite");
  selftest->add_option("--sabotage", sabotage,
                       "mutate a named fixture to prove the suite can fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& parse_error) {
    app.exit(parse_error);
    return 2;
  }

  try {
    if (gen->parsed()) return run_genericity(in_path, out_path);
    if (elim->parsed()) return run_eliminate(in_path, out_path, stream);
    if (verify->parsed()) {
      if (sample > 0 && verify_seed->count() == 0) {
        throw std::invalid_argument("--sample requires --seed for reproducibility");
      }
      const welim::VerifyConfig config{welim::Params(p, n, f), delta,
                                       welim::parse_mode(mode),
                                       welim::SamplingPolicy{sample, seed}, workers};
      return run_verify(config, out_path);
    }
    if (survey->parsed()) {
      if (sample > 0 && survey_seed->count() == 0) {
        throw std::invalid_argument("--sample requires --seed for reproducibility");
      }
      const welim::SurveyConfig config{welim::Params(p, n, f), delta,
                                       delta_max == 0 ? delta : delta_max,
                                       welim::SamplingPolicy{sample, seed}, workers};
      return run_survey(config, out_path);
    }
    if (selftest->parsed()) return run_selftest(sabotage);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
