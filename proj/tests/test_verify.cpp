// The verification driver: exhaustive and sampled runs, input validation,
// determinism across worker counts, and agreement with a direct fold over
// the eliminator.
#include "doctest.h"
#include "welim/verify.hpp"

#include <algorithm>
#include <stdexcept>

using namespace welim;

namespace {

VerifyConfig base_config() {
  VerifyConfig config{Params(13, 2, 1), 5, VerifyMode::f_equals_one, {}, 1};
  return config;
}

bool stats_equal(const VerifyStats& a, const VerifyStats& b) {
  return a.reps_scanned == b.reps_scanned && a.reps_checked == b.reps_checked &&
         a.weights_total == b.weights_total && a.survivors_total == b.survivors_total &&
         a.min_survivor_margin == b.min_survivor_margin;
}

}  // namespace

TEST_CASE("invalid inputs are reported, never thrown") {
  VerifyConfig config = base_config();

  config.workers = -1;
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);

  config = base_config();
  config.sampling.sample = -5;
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);

  config = VerifyConfig{Params(3, 3, 1), 1, VerifyMode::general, {}, 1};
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);  // p < n+1

  config = base_config();
  config.delta = 0;
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);
  config.delta = 7;  // cap is 6
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);

  config = base_config();
  config.mode = VerifyMode::general;
  config.delta = 4;  // general needs delta >= 2n+1 = 5
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);

  config = VerifyConfig{Params(5, 2, 2), 2, VerifyMode::f_equals_one, {}, 1};
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);  // f != 1

  config = base_config();
  config.delta = 3;  // f_equals_one needs delta >= n+2 = 4
  CHECK(verify_theorem(config).verdict == Verdict::invalid_input);

  for (const VerifyConfig& bad :
       {VerifyConfig{Params(13, 2, 1), 5, VerifyMode::f_equals_one, {}, -1}}) {
    const VerdictReport report = verify_theorem(bad);
    CHECK_FALSE(report.invalid_reason.empty());
    CHECK_FALSE(report.counterexample.has_value());
  }
}

TEST_CASE("exhaustive f = 1 run reproduces the pinned statistics") {
  const VerdictReport report = verify_theorem(base_config());
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.bound == 2);
  CHECK(report.invalid_reason.empty());
  CHECK_FALSE(report.counterexample.has_value());
  CHECK(report.stats.reps_scanned == 156);
  CHECK(report.stats.reps_checked == 39);
  CHECK(report.stats.weights_total == 156);
  CHECK(report.stats.survivors_total == 288);
  REQUIRE(report.stats.min_survivor_margin.has_value());
  CHECK(*report.stats.min_survivor_margin == 4);

  // Same scan in general mode only changes the asserted bound.
  VerifyConfig general = base_config();
  general.mode = VerifyMode::general;
  const VerdictReport g = verify_theorem(general);
  CHECK(g.verdict == Verdict::pass);
  CHECK(g.bound == 1);
  CHECK(stats_equal(g.stats, report.stats));
}

TEST_CASE("exhaustive run agrees with a direct fold over the eliminator") {
  const Params params(13, 2, 1);
  Int checked = 0;
  Int survivors = 0;
  std::optional<Int> min_margin;
  for (const SemisimpleInertialData& rho : enumerate_semisimple(params)) {
    if (rep_margin(rho) < 5) continue;
    ++checked;
    const EliminationReport report = eliminate(rho);
    survivors += static_cast<Int>(report.survivors.size());
    for (const SurvivingWeight& sw : report.survivors)
      min_margin = min_margin ? std::min(*min_margin, sw.margin) : sw.margin;
  }
  CHECK(checked == 39);
  CHECK(survivors == 288);
  REQUIRE(min_margin.has_value());
  CHECK(*min_margin == 4);
}

TEST_CASE("worker count never changes the report") {
  for (int workers : {2, 5}) {
    VerifyConfig config = base_config();
    config.workers = workers;
    const VerdictReport report = verify_theorem(config);
    CHECK(report.verdict == Verdict::pass);
    CHECK(stats_equal(report.stats, verify_theorem(base_config()).stats));
  }
}

TEST_CASE("general mode over f = 2 passes with margin to spare") {
  const VerifyConfig config{Params(11, 2, 2), 5, VerifyMode::general, {}, 0};
  const VerdictReport report = verify_theorem(config);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.bound == 1);
  CHECK(report.stats.reps_scanned == 14520);
  CHECK(report.stats.reps_checked == 143);
  CHECK(report.stats.survivors_total == 9088);
  REQUIRE(report.stats.min_survivor_margin.has_value());
  CHECK(*report.stats.min_survivor_margin == 2);
}

TEST_CASE("sampled runs are reproducible and worker-independent") {
  VerifyConfig config{Params(29, 3, 1), 9, VerifyMode::f_equals_one, {300, 7}, 1};
  const VerdictReport first = verify_theorem(config);
  CHECK(first.verdict == Verdict::pass);
  CHECK(first.bound == 5);
  CHECK(first.stats.reps_scanned == 300);
  CHECK(first.stats.reps_checked == 300);
  CHECK(first.stats.survivors_total == 44874);
  REQUIRE(first.stats.min_survivor_margin.has_value());
  CHECK(*first.stats.min_survivor_margin == 6);

  config.workers = 5;
  CHECK(stats_equal(verify_theorem(config).stats, first.stats));

  config.workers = 1;
  config.sampling.seed = 8;
  const VerdictReport other = verify_theorem(config);
  CHECK(other.verdict == Verdict::pass);  // different draws, same theorem
}

TEST_CASE("sampling an empty stratum passes vacuously") {
  // 3 * 10 > 29 - 1, so no 10-generic class exists at p = 29, n = 3.
  const VerifyConfig config{Params(29, 3, 1), 10, VerifyMode::f_equals_one,
                            {1000, 42}, 1};
  const VerdictReport report = verify_theorem(config);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.bound == 6);
  CHECK(report.stats.reps_scanned == 0);
  CHECK(report.stats.reps_checked == 0);
  CHECK(report.stats.survivors_total == 0);
  CHECK_FALSE(report.stats.min_survivor_margin.has_value());
}

TEST_CASE("exhausting an empty stratum passes vacuously") {
  // 3 * 5 > 13 - 1, so nothing at p = 13, n = 3 is 5-generic.
  const VerifyConfig config{Params(13, 3, 1), 5, VerifyMode::f_equals_one, {}, 1};
  const VerdictReport report = verify_theorem(config);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.stats.reps_scanned == 2028);
  CHECK(report.stats.reps_checked == 0);
  CHECK(report.stats.survivors_total == 0);
  CHECK_FALSE(report.stats.min_survivor_margin.has_value());
}

TEST_CASE("survey walks the genericity levels and tracks the margins") {
  SurveyConfig config{Params(13, 2, 1), 4, 6, {}, 1};
  const SurveyReport report = survey(config);
  REQUIRE(report.rows.size() == 3);

  const SurveyRow& r4 = report.rows[0];
  CHECK(r4.delta == 4);
  CHECK(r4.asserted_bound.has_value());
  CHECK(*r4.asserted_bound == 1);  // f = 1 clause only: 4 - 3
  CHECK(r4.bound_satisfied);

  const SurveyRow& r5 = report.rows[1];
  CHECK(r5.delta == 5);
  CHECK(r5.reps == 39);
  CHECK(r5.survivor_pairs == 288);
  REQUIRE(r5.min_margin.has_value());
  CHECK(*r5.min_margin == 4);
  REQUIRE(r5.asserted_bound.has_value());
  CHECK(*r5.asserted_bound == 2);  // max(5 - 3, 5 - 4)
  CHECK(r5.bound_satisfied);
  CHECK_FALSE(r5.empty_stratum);
  Int mass = 0;
  for (auto [margin, count] : r5.histogram) {
    CHECK(margin >= *r5.min_margin);
    mass += count;
  }
  CHECK(mass == r5.survivor_pairs);
  CHECK(std::is_sorted(r5.histogram.begin(), r5.histogram.end()));

  // Monotonicity: raising delta can only shrink the stratum.
  CHECK(report.rows[0].reps >= report.rows[1].reps);
  CHECK(report.rows[1].reps >= report.rows[2].reps);
}

TEST_CASE("survey marks empty strata instead of inventing margins") {
  SurveyConfig config{Params(13, 3, 1), 5, 6, {}, 1};
  const SurveyReport report = survey(config);
  REQUIRE(report.rows.size() == 2);
  for (const SurveyRow& row : report.rows) {
    CHECK(row.empty_stratum);
    CHECK(row.reps == 0);
    CHECK(row.survivor_pairs == 0);
    CHECK_FALSE(row.min_margin.has_value());
    CHECK(row.bound_satisfied);
    CHECK(row.histogram.empty());
  }
}

TEST_CASE("survey rejects malformed ranges by throwing") {
  CHECK_THROWS_AS(survey(SurveyConfig{Params(13, 2, 1), 0, 5, {}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(survey(SurveyConfig{Params(13, 2, 1), 5, 4, {}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(survey(SurveyConfig{Params(13, 2, 1), 5, 7, {}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(survey(SurveyConfig{Params(3, 3, 1), 1, 1, {}, 1}),
                  std::invalid_argument);
}

TEST_CASE("counterexamples re-verify against the margin predicates") {
  // The driver refuses sub-threshold deltas, so exercise the reporting path
  // by checking that pass verdicts really mean no survivor sits below the
  // bound; re-derive the minimum from the eliminator at a second level.
  const VerifyConfig config{Params(13, 2, 1), 6, VerifyMode::f_equals_one, {}, 1};
  const VerdictReport report = verify_theorem(config);
  CHECK(report.verdict == Verdict::pass);
  CHECK(report.bound == 3);
  if (report.stats.min_survivor_margin)
    CHECK(*report.stats.min_survivor_margin >= report.bound);

  for (const SemisimpleInertialData& rho : enumerate_semisimple(config.params)) {
    if (rep_margin(rho) < 6) continue;
    for (const SurvivingWeight& sw : eliminate(rho).survivors)
      CHECK(sw.margin >= report.bound);
  }
}
