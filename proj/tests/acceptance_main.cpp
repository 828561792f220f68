// Acceptance gate: one check per shipped guarantee, each printed as a single
// pass/fail line.  Exits nonzero if any check fails.
#include "welim/json_io.hpp"
#include "welim/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace welim;
using nlohmann::json;

namespace {

int failures = 0;

void run(int index, const std::string& label, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& ex) {
    note = std::string(" (") + ex.what() + ")";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char line[256];
  std::snprintf(line, sizeof(line), "[%s] %2d/11 %s%s (%.2fs)",
                ok ? "PASS" : "FAIL", index, label.c_str(), note.c_str(), secs);
  std::cout << line << std::endl;
  if (!ok) ++failures;
}

#define REQUIRE_TRUE(expr) \
  do {                     \
    if (!(expr)) return false; \
  } while (0)

// ---- 1: carry solver vs inverted oracle --------------------------------

bool carry_solver_oracle() {
  for (Int p : {5, 7}) {
    for (int d = 1; d <= 3; ++d) {
      const Int e = e_value(d, p);
      const Int t_bound = 3 * p;
      // Enumerate every carry vector once and invert the map t -> alpha.
      std::map<std::vector<Int>, std::vector<Int>> by_alpha;
      std::vector<Int> t(static_cast<size_t>(d), -t_bound);
      while (true) {
        std::vector<Int> alpha(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j)
          alpha[static_cast<size_t>(j)] =
              t[static_cast<size_t>(j)] * p - t[static_cast<size_t>((j + d - 1) % d)];
        if (!by_alpha.emplace(alpha, t).second) return false;  // t -> alpha injective
        int j = 0;
        while (j < d && t[static_cast<size_t>(j)] == t_bound) {
          t[static_cast<size_t>(j)] = -t_bound;
          ++j;
        }
        if (j == d) break;
        ++t[static_cast<size_t>(j)];
      }

      const Int a_bound = 2 * p;
      std::vector<Int> alpha(static_cast<size_t>(d), -a_bound);
      while (true) {
        __int128 weighted = 0;
        __int128 p_pow = 1;
        for (int j = 0; j < d; ++j) {
          weighted += static_cast<__int128>(alpha[static_cast<size_t>(j)]) * p_pow;
          p_pow *= p;
        }
        const auto solved = padic_solve(alpha, p);
        const auto hit = by_alpha.find(alpha);
        if (weighted % e == 0) {
          REQUIRE_TRUE(solved.has_value());
          REQUIRE_TRUE(hit != by_alpha.end());
          REQUIRE_TRUE(solved->carries == hit->second);
          REQUIRE_TRUE(static_cast<__int128>(solved->quotient) * e == weighted);
        } else {
          REQUIRE_TRUE(!solved.has_value());
          REQUIRE_TRUE(hit == by_alpha.end());
        }
        int j = 0;
        while (j < d && alpha[static_cast<size_t>(j)] == a_bound) {
          alpha[static_cast<size_t>(j)] = -a_bound;
          ++j;
        }
        if (j == d) break;
        ++alpha[static_cast<size_t>(j)];
      }
    }
  }
  return true;
}

// ---- 2: digit expansion round trip -------------------------------------

bool digit_roundtrip() {
  for (Int p : {5, 7, 13}) {
    for (int d = 1; d <= 4; ++d) {
      const Int e = e_value(d, p);
      for (Int m = -2 * e; m <= 2 * e; ++m) {
        const DigitVector dv = digits_of(m, d, p);
        REQUIRE_TRUE(dv.length() == d);
        bool all_top = true;
        for (Int digit : dv.digits) {
          REQUIRE_TRUE(digit >= 0 && digit <= p - 1);
          all_top = all_top && digit == p - 1;
        }
        REQUIRE_TRUE(!all_top);
        REQUIRE_TRUE(dv.value() == floor_mod(m, e));
        REQUIRE_TRUE(digits_of(dv.value(), d, p) == dv);
      }
    }
  }
  return true;
}

// ---- 3 and 4: exponent sets --------------------------------------------

bool for_each_type_71(const std::function<bool(const InertialType&, int)>& fn) {
  const Params params(7, 2, 1);
  for (Int a = 0; a < 6; ++a)
    for (Int b = 0; b < 6; ++b) {
      const InertialType xi = type_from_values(params, std::vector<Int>{a, b});
      for (int ni = 1; ni <= 2; ++ni)
        if (!fn(xi, ni)) return false;
    }
  return true;
}

bool for_each_type_52(const std::function<bool(const InertialType&, int)>& fn) {
  const Params params(5, 2, 2);
  for (Int a = 0; a < 24; ++a)
    for (Int b = 0; b < 24; ++b) {
      const InertialType xi = type_from_values(params, std::vector<Int>{a, b});
      if (!fn(xi, 1)) return false;
    }
  return true;
}

bool raw_inside_final() {
  const auto contained = [](const InertialType& xi, int ni) {
    const ExponentSet raw = reduction_exponents_raw(xi, ni);
    const ExponentSet fin = reduction_exponents(xi, ni);
    return std::includes(fin.values.begin(), fin.values.end(), raw.values.begin(),
                         raw.values.end());
  };
  return for_each_type_71(contained) && for_each_type_52(contained);
}

bool predicate_matches_set() {
  const auto agrees = [](const InertialType& xi, int ni) {
    const ExponentSet fin = reduction_exponents(xi, ni);
    const Int e = xi.params.e(ni * xi.params.f);
    for (Int m = 0; m < e; ++m)
      if (is_compatible(m, xi, ni) != fin.values.contains(m)) return false;
    return true;
  };
  return for_each_type_71(agrees) && for_each_type_52(agrees);
}

// ---- 5 through 7: the margin propagation bound -------------------------

bool exhaustive_small_prime() {
  const VerifyConfig narrow{Params(13, 2, 1), 5, VerifyMode::f_equals_one, {}, 0};
  const VerdictReport a = verify_theorem(narrow);
  REQUIRE_TRUE(a.verdict == Verdict::pass);
  REQUIRE_TRUE(a.bound == 2);
  REQUIRE_TRUE(a.stats.reps_checked == 39);
  REQUIRE_TRUE(a.stats.survivors_total == 288);
  REQUIRE_TRUE(a.stats.min_survivor_margin && *a.stats.min_survivor_margin == 4);

  VerifyConfig wide = narrow;
  wide.mode = VerifyMode::general;
  const VerdictReport b = verify_theorem(wide);
  REQUIRE_TRUE(b.verdict == Verdict::pass);
  REQUIRE_TRUE(b.bound == 1);
  REQUIRE_TRUE(b.stats.survivors_total == 288);
  return true;
}

bool exhaustive_higher_degree() {
  const VerifyConfig config{Params(11, 2, 2), 5, VerifyMode::general, {}, 0};
  const VerdictReport report = verify_theorem(config);
  REQUIRE_TRUE(report.verdict == Verdict::pass);
  REQUIRE_TRUE(report.bound == 1);
  REQUIRE_TRUE(report.stats.reps_scanned == 14520);
  REQUIRE_TRUE(report.stats.reps_checked == 143);
  REQUIRE_TRUE(report.stats.survivors_total == 9088);
  REQUIRE_TRUE(report.stats.min_survivor_margin && *report.stats.min_survivor_margin == 2);
  return true;
}

bool sampled_large_prime() {
  const Params params(29, 3, 1);

  // 3 * 10 and 3 * 12 both exceed p - 1 = 28: those strata are empty, so the
  // bound holds vacuously and the driver must say so via zero counters.
  for (auto [delta, bound] : {std::pair<Int, Int>{10, 6}, {12, 8}}) {
    REQUIRE_TRUE(params.n * delta > params.p - 1);
    const VerifyConfig config{params, delta, VerifyMode::f_equals_one, {1000, 42}, 0};
    const VerdictReport report = verify_theorem(config);
    REQUIRE_TRUE(report.verdict == Verdict::pass);
    REQUIRE_TRUE(report.bound == bound);
    REQUIRE_TRUE(report.stats.reps_checked == 0);
    REQUIRE_TRUE(report.stats.survivors_total == 0);
  }

  // The last nonempty level exercises the sampler for real.
  const VerifyConfig config{params, 9, VerifyMode::f_equals_one, {1000, 42}, 0};
  const VerdictReport report = verify_theorem(config);
  REQUIRE_TRUE(report.verdict == Verdict::pass);
  REQUIRE_TRUE(report.bound == 5);
  REQUIRE_TRUE(report.stats.reps_checked == 1000);
  REQUIRE_TRUE(report.stats.survivors_total == 152280);
  REQUIRE_TRUE(report.stats.min_survivor_margin && *report.stats.min_survivor_margin == 6);
  return true;
}

// ---- 8: covering-type transfer bound -----------------------------------

bool transfer_bound() {
  {
    const Params params(7, 2, 2);
    const WeightEnumeration en(params);
    for (Int i = 0; i < en.size(); ++i) {
      const RestrictedWeight w = en.at(i);
      const InertialType xi = covering_type(w);
      Int type_margin = params.margin_cap();
      for (int j = 0; j < params.f; ++j) {
        std::vector<Int> column;
        for (int s = 0; s < params.n; ++s) column.push_back(xi.digit(s, j));
        type_margin = std::min(type_margin, multiset_margin(column, params.p));
      }
      REQUIRE_TRUE(weight_margin(w) >= type_margin - (params.n - 1));
    }
  }
  for (int n : {2, 3}) {
    const Params params(13, n, 1);
    const WeightEnumeration en(params);
    for (Int i = 0; i < en.size(); ++i) {
      const RestrictedWeight w = en.at(i);
      const InertialType xi = covering_type(w);
      std::vector<Int> column;
      for (int s = 0; s < n; ++s) column.push_back(xi.digit(s, 0));
      REQUIRE_TRUE(weight_margin(w) == multiset_margin(column, params.p));
    }
  }
  return true;
}

// ---- 9: carries stay in {0,1} at high genericity ------------------------

bool carries_binary_when_generic() {
  const Params params(13, 2, 1);
  const Int threshold = params.n + 2;  // 4
  bool exercised = false;
  for (const SemisimpleInertialData& rho : enumerate_semisimple(params)) {
    if (rep_margin(rho) < threshold) continue;
    for (Int a = 0; a < 12; ++a)
      for (Int b = 0; b < 12; ++b) {
        const InertialType xi =
            type_from_values(params, std::vector<Int>{a, b});
        if (!rep_compatible(rho, xi)) continue;
        for (const IrreducibleSummand& summand : rho.summands) {
          const int d = summand.ni * params.f;
          const Int e = params.e(d);
          std::vector<Int> p_pow(static_cast<size_t>(d));
          for (int j = 0; j < d; ++j) p_pow[static_cast<size_t>(j)] = pow_mod(params.p, j, e);
          std::vector<int> s(static_cast<size_t>(d), 0);
          while (true) {
            Int shift = 0;
            for (int j = 0; j < d; ++j)
              shift = floor_mod(shift + mul_mod(xi.digit(s[static_cast<size_t>(j)], j),
                                                p_pow[static_cast<size_t>(j)], e),
                                e);
            const DigitVector a_digits = digits_of(summand.m - shift, d, params.p);
            bool witness = true;
            for (Int digit : a_digits.digits) witness = witness && digit <= params.n - 1;
            if (witness) {
              exercised = true;
              std::vector<Int> alpha(static_cast<size_t>(d));
              for (int j = 0; j < d; ++j)
                alpha[static_cast<size_t>(j)] = xi.digit(s[static_cast<size_t>(j)], j) +
                                                a_digits.digits[static_cast<size_t>(j)] -
                                                summand.x.digits[static_cast<size_t>(j)];
              const auto solved = padic_solve(alpha, params.p);
              REQUIRE_TRUE(solved.has_value());
              for (Int carry : solved->carries) REQUIRE_TRUE(carry == 0 || carry == 1);
            }
            int j = 0;
            while (j < d && s[static_cast<size_t>(j)] == params.n - 1) {
              s[static_cast<size_t>(j)] = 0;
              ++j;
            }
            if (j == d) break;
            ++s[static_cast<size_t>(j)];
          }
        }
      }
  }
  return exercised;
}

// ---- 10: canonical representatives -------------------------------------

bool canonical_representatives() {
  for (Int p : {5, 7}) {
    for (int f : {1, 2}) {
      const Params params(p, 2, f);
      const WeightEnumeration en(params);
      for (Int i = 0; i < en.size(); ++i) {
        const RestrictedWeight w = en.at(i);
        REQUIRE_TRUE(canonicalize(w).lambda == w.lambda);

        // Translate by twist-lattice vectors and land on the same rep.
        for (Int u = -2; u <= 2; ++u)
          for (Int v = -2; v <= 2; ++v) {
            std::vector<Int> c(static_cast<size_t>(f));
            if (f == 1) {
              c[0] = u * params.e(1);
            } else {
              c[0] = u * p - v;
              c[1] = v * p - u;
            }
            std::vector<std::vector<Int>> lambda = w.lambda;
            for (int j = 0; j < f; ++j)
              for (Int& entry : lambda[static_cast<size_t>(j)])
                entry += c[static_cast<size_t>(j)];
            const RestrictedWeight moved(params, lambda);
            REQUIRE_TRUE(weight_equivalent(moved, w));
            REQUIRE_TRUE(canonicalize(moved).lambda == w.lambda);
            if (f == 1) continue;
            if (u != 0 || v != 0) REQUIRE_TRUE(moved.lambda != w.lambda);
          }
      }
    }
  }
  return true;
}

// ---- 11: CLI survey probe ----------------------------------------------

bool cli_survey_probe() {
  const std::string out_path =
      "/tmp/welim_acceptance_" + std::to_string(getpid()) + ".json";
  const std::string command = std::string(WELIM_CLI_PATH) +
                              " survey --p 13 --n 2 --f 1 --delta 5 --out " +
                              out_path + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;

  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  const json doc = json::parse(buf.str(), nullptr, false);
  REQUIRE_TRUE(!doc.is_discarded());
  REQUIRE_TRUE(doc["rows"].size() == 1);
  const json& row = doc["rows"][0];
  REQUIRE_TRUE(row["asserted_bound"] == 2);
  REQUIRE_TRUE(row["bound_satisfied"] == true);
  const Int min_margin = row["min_margin"].get<Int>();
  REQUIRE_TRUE(min_margin >= 2 && min_margin <= 5);
  REQUIRE_TRUE(min_margin == 4);
  return true;
}

}  // namespace

int main() {
  run(1, "carry solver agrees with the inverted carry-vector oracle", carry_solver_oracle);
  run(2, "digit expansions round-trip over signed inputs", digit_roundtrip);
  run(3, "descent enumeration lands inside the closed-form exponent set", raw_inside_final);
  run(4, "digit predicate decides closed-form membership", predicate_matches_set);
  run(5, "margin bound holds exhaustively at p=13, f=1, both modes", exhaustive_small_prime);
  run(6, "margin bound holds exhaustively at p=11, f=2", exhaustive_higher_degree);
  run(7, "sampled verification at p=29 passes, empty strata reported vacuous",
      sampled_large_prime);
  run(8, "weight margins obey the covering-type transfer bound", transfer_bound);
  run(9, "carries are binary for compatible pairs at high genericity",
      carries_binary_when_generic);
  run(10, "canonical representatives are stable across twist translates",
      canonical_representatives);
  run(11, "CLI survey reports the expected margin floor", cli_survey_probe);

  if (failures == 0) {
    std::cout << "acceptance: all 11 criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria failed" << std::endl;
  return 1;
}
