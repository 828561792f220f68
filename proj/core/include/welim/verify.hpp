#pragma once
// Exhaustive and sampled verification of the genericity propagation bound for
// weight elimination, plus margin surveys across genericity levels.

#include "welim/elimination.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace welim {

enum class VerifyMode { general, f_equals_one };

// sample == 0 means exhaustive; otherwise `sample` draws, uniform over
// isomorphism classes of the delta-generic stratum, seeded and reproducible
// independently of the worker count.
struct SamplingPolicy {
  Int sample = 0;
  std::uint64_t seed = 0;
};

struct VerifyConfig {
  Params params;
  Int delta = 1;
  VerifyMode mode = VerifyMode::general;
  SamplingPolicy sampling;
  int workers = 0;  // 0 = hardware concurrency
};

enum class Verdict { pass, counterexample, invalid_input };

struct Counterexample {
  SemisimpleInertialData rho;
  RestrictedWeight weight;  // canonical survivor below the bound
  Int rep_margin_value = 0;
  Int weight_margin_value = 0;
};

struct VerifyStats {
  Int reps_scanned = 0;   // classes enumerated, or samples drawn
  Int reps_checked = 0;   // delta-generic classes eliminated
  Int weights_total = 0;
  Int survivors_total = 0;
  std::optional<Int> min_survivor_margin;
  double wall_seconds = 0;
};

struct VerdictReport {
  VerifyConfig config;
  Verdict verdict = Verdict::invalid_input;
  std::string invalid_reason;  // set iff verdict == invalid_input
  Int bound = 0;               // delta - 2n (general) or delta - (n+1) (f = 1)
  std::optional<Counterexample> counterexample;
  VerifyStats stats;
};

// Checks that every survivor of every delta-generic class has weight margin
// at least the bound.  Mode preconditions: general needs delta >= 2n+1;
// f_equals_one needs f == 1 and delta >= n+2; both need delta <= (p-1)/2.
// Violations yield invalid_input, never a counterexample.  The reported
// counterexample, if any, is the first in canonical order (enumeration order
// of rho, then weight index), independent of the worker count.
VerdictReport verify_theorem(const VerifyConfig& config);

struct SurveyRow {
  Int delta = 0;
  Int reps = 0;  // delta-generic classes examined
  Int survivor_pairs = 0;
  std::optional<Int> min_margin;
  std::optional<Int> asserted_bound;  // strongest applicable bound, if any
  bool bound_satisfied = true;
  std::vector<std::pair<Int, Int>> histogram;  // (margin, count), ascending
  bool empty_stratum = false;
};

struct SurveyConfig {
  Params params;
  Int delta_min = 1;
  Int delta_max = 1;
  SamplingPolicy sampling;  // sample draws per level when nonzero
  int workers = 0;
};

struct SurveyReport {
  SurveyConfig config;
  std::vector<SurveyRow> rows;
  double wall_seconds = 0;
};

SurveyReport survey(const SurveyConfig& config);

}  // namespace welim
