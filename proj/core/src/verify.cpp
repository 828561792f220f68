// Parallel exhaustive/sampled bound verification and margin surveys, with a
// per-class weight-elimination fast path built from precomputed digit tables.

#include "welim/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace welim {

namespace {

using U128 = unsigned __int128;

constexpr Int kMaxTableWeights = 5'000'000;   // weight classes we will tabulate
constexpr Int kMaxTypeCombos = 200'000;       // sum over dims of n^(ni*f) per weight
constexpr Int kMaxClasses = 5'000'000;        // classes we will materialize
constexpr double kMaxPairWork = 2e9;          // classes * weights in exhaustive mode
constexpr int kGenericDrawCap = 200'000;      // rejection attempts per sample

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(index, thread) over [0, total) on `workers` threads, handing out
// fixed-size chunks from an atomic cursor.  The first exception thrown by any
// body stops the pool and is rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(Int total, int workers, Int chunk, Fn&& fn) {
  const int threads =
      static_cast<int>(std::min<Int>(std::max(1, workers), std::max<Int>(total, 1)));
  if (threads == 1) {
    for (Int i = 0; i < total; ++i) fn(i, 0);
    return;
  }
  std::atomic<Int> cursor{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (;;) {
        if (stop.load(std::memory_order_relaxed)) return;
        const Int begin = cursor.fetch_add(chunk, std::memory_order_relaxed);
        if (begin >= total) return;
        const Int end = std::min(total, begin + chunk);
        for (Int i = begin; i < end; ++i) {
          try {
            fn(i, t);
          } catch (...) {
            stop.store(true, std::memory_order_relaxed);
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            return;
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Per-weight data for the digit compatibility test: the genericity margin and,
// for each summand dimension ni, the sorted distinct values
// sum_j xi.digit(s(j), j) p^j mod e_{ni f} over all row maps s.
struct WeightTable {
  WeightEnumeration en;
  std::vector<Int> margins;
  std::vector<std::vector<std::vector<Int>>> exps;  // [weight][ni-1]
  std::vector<Int> e_by_dim;                        // [ni-1] = e_{ni f}
};

WeightTable build_weight_table(const Params& params, int workers) {
  WeightTable table{WeightEnumeration(params), {}, {}, {}};
  const Int total = table.en.size();
  if (total > kMaxTableWeights) {
    throw std::runtime_error("weight space too large to tabulate (" +
                             std::to_string(total) +
                             " classes); reduce p, n, or f");
  }
  table.e_by_dim.resize(params.n);
  std::vector<std::vector<Int>> p_pow(params.n);  // [ni-1][j] = p^j mod e_{ni f}
  Int combos = 0;
  for (int ni = 1; ni <= params.n; ++ni) {
    const int d = ni * params.f;
    const Int e = params.e(d);
    table.e_by_dim[ni - 1] = e;
    auto& row = p_pow[ni - 1];
    row.resize(d);
    Int x = 1 % e;
    for (int j = 0; j < d; ++j) {
      row[j] = x;
      x = mul_mod(x, params.p, e);
    }
    combos = checked_add(combos, checked_pow(params.n, d));
  }
  if (combos > kMaxTypeCombos) {
    throw std::runtime_error(
        "per-weight digit table too large (n^(ni*f) combinations total " +
        std::to_string(combos) + "); reduce n or f");
  }
  table.margins.assign(total, 0);
  table.exps.assign(total, {});
  parallel_chunks(total, workers, 64, [&](Int i, int) {
    const RestrictedWeight w = table.en.at(i);
    table.margins[i] = weight_margin(w);
    const InertialType xi = covering_type(w);
    auto& slots = table.exps[i];
    slots.resize(params.n);
    for (int ni = 1; ni <= params.n; ++ni) {
      const int d = ni * params.f;
      const Int e = table.e_by_dim[ni - 1];
      const auto& pj = p_pow[ni - 1];
      auto& out = slots[ni - 1];
      std::vector<int> s(d, 0);
      for (;;) {
        Int acc = 0;
        for (int j = 0; j < d; ++j) acc = (acc + mul_mod(xi.digit(s[j], j), pj[j], e)) % e;
        out.push_back(acc);
        int pos = d - 1;
        while (pos >= 0 && s[pos] == params.n - 1) s[pos--] = 0;
        if (pos < 0) break;
        ++s[pos];
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  });
  return table;
}

bool digits_at_most(Int r, Int p, Int limit) {
  while (r > 0) {
    if (r % p > limit) return false;
    r /= p;
  }
  return true;
}

// Same predicate as rep_compatible, evaluated from the table.
bool table_compatible(const WeightTable& table, const Params& params, Int wi,
                      const SemisimpleInertialData& rho) {
  const Int limit = params.n - 1;
  for (const auto& sm : rho.summands) {
    const auto& vals = table.exps[wi][sm.ni - 1];
    const Int e = table.e_by_dim[sm.ni - 1];
    bool found = false;
    for (const Int v : vals) {
      Int r = sm.m - v;
      if (r < 0) r += e;
      if (digits_at_most(r, params.p, limit)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

struct CexCandidate {
  Int rep_key = 0;  // enumeration index or draw index
  Int weight_index = 0;
  SemisimpleInertialData rho;
  Int rep_margin_value = 0;
};

struct ScanAcc {
  Int checked = 0;
  Int survivors = 0;
  std::optional<Int> min_margin;
  std::optional<CexCandidate> cex;
};

// Eliminates one delta-generic class against every weight, accumulating
// survivor statistics and the canonically first below-bound survivor.
void scan_class(const WeightTable& table, const Params& params,
                const SemisimpleInertialData& rho, Int rho_margin, Int bound,
                Int rep_key, ScanAcc& acc) {
  ++acc.checked;
  const Int total = table.en.size();
  for (Int wi = 0; wi < total; ++wi) {
    if (!table_compatible(table, params, wi, rho)) continue;
    ++acc.survivors;
    const Int margin = table.margins[wi];
    if (!acc.min_margin || margin < *acc.min_margin) acc.min_margin = margin;
    if (margin < bound) {
      if (!acc.cex || std::pair(rep_key, wi) <
                          std::pair(acc.cex->rep_key, acc.cex->weight_index)) {
        acc.cex = CexCandidate{rep_key, wi, rho, rho_margin};
      }
    }
  }
}

// --- exact class counting and seeded class-uniform sampling ---

U128 multichoose(Int items, int take) {
  U128 r = 1;
  for (int i = 1; i <= take; ++i) r = r * static_cast<U128>(items - 1 + i) / i;
  return r;
}

std::vector<std::pair<int, int>> partition_groups(const std::vector<int>& part) {
  std::vector<std::pair<int, int>> groups;  // (ni, multiplicity)
  for (size_t i = 0; i < part.size();) {
    size_t j = i;
    while (j < part.size() && part[j] == part[i]) ++j;
    groups.emplace_back(part[i], static_cast<int>(j - i));
    i = j;
  }
  return groups;
}

U128 partition_class_count(const Params& params, const std::vector<int>& part) {
  U128 count = 1;
  for (const auto& [ni, mult] : partition_groups(part)) {
    count *= multichoose(primitive_orbit_count(params, ni), mult);
  }
  return count;
}

U128 total_class_count(const Params& params) {
  U128 total = 0;
  for (const auto& part : partitions_of(params.n)) {
    total += partition_class_count(params, part);
  }
  return total;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One generator per draw index, so results do not depend on the worker count.
std::mt19937_64 rng_for(std::uint64_t seed, Int index) {
  return std::mt19937_64(
      mix64(seed ^ mix64(static_cast<std::uint64_t>(index) + 0x632BE59BD9B4E019ULL)));
}

// Masked rejection keeps draws uniform and platform-independent.
std::uint64_t uniform_below_u64(std::uint64_t bound, std::mt19937_64& rng) {
  if (bound <= 1) return 0;
  const int bits = 64 - std::countl_zero(bound - 1);
  const std::uint64_t mask = bits >= 64 ? ~0ULL : (1ULL << bits) - 1;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

U128 uniform_below_u128(U128 bound, std::mt19937_64& rng) {
  constexpr U128 kWord = U128(1) << 64;
  if (bound < kWord) return uniform_below_u64(static_cast<std::uint64_t>(bound), rng);
  if (bound == kWord) return rng();
  const std::uint64_t high = static_cast<std::uint64_t>((bound - 1) >> 64);
  const int high_bits = 64 - std::countl_zero(high);
  const std::uint64_t high_mask = high_bits >= 64 ? ~0ULL : (1ULL << high_bits) - 1;
  for (;;) {
    const U128 v = (U128(rng() & high_mask) << 64) | rng();
    if (v < bound) return v;
  }
}

Int uniform_below(Int bound, std::mt19937_64& rng) {
  return static_cast<Int>(uniform_below_u64(static_cast<std::uint64_t>(bound), rng));
}

constexpr Int kFactorial[13] = {1,    1,     2,      6,       24,       120, 720,
                                5040, 40320, 362880, 3628800, 39916800, 479001600};

// Draws isomorphism classes uniformly: a partition weighted by its exact class
// count, then per dimension group a uniform multiset of primitive orbits
// (with-replacement draws accepted with probability prod(mult!)/k!).
class ClassSampler {
 public:
  explicit ClassSampler(const Params& params)
      : params_(params), partitions_(partitions_of(params.n)) {
    U128 running = 0;
    for (const auto& part : partitions_) {
      running += partition_class_count(params_, part);
      cumulative_.push_back(running);
    }
  }

  U128 total_classes() const { return cumulative_.back(); }

  SemisimpleInertialData draw(std::mt19937_64& rng) const {
    const U128 u = uniform_below_u128(cumulative_.back(), rng);
    size_t pi = 0;
    while (u >= cumulative_[pi]) ++pi;
    std::vector<std::pair<int, Int>> parts;
    for (const auto& [ni, mult] : partition_groups(partitions_[pi])) {
      std::vector<Int> picks(mult);
      for (;;) {
        for (int t = 0; t < mult; ++t) picks[t] = draw_orbit(ni, rng);
        std::sort(picks.begin(), picks.end());
        Int perms = 1;
        for (int t = 0; t < mult;) {
          int run = 1;
          while (t + run < mult && picks[t + run] == picks[t]) ++run;
          perms *= kFactorial[run];
          t += run;
        }
        if (uniform_below(kFactorial[mult], rng) < perms) break;
      }
      for (const Int m : picks) parts.emplace_back(ni, m);
    }
    return make_semisimple(params_, parts);
  }

 private:
  Int draw_orbit(int ni, std::mt19937_64& rng) const {
    const Int e = params_.e(ni * params_.f);
    for (int attempt = 0; attempt < 100'000'000; ++attempt) {
      const Int m = uniform_below(e, rng);
      if (is_primitive(m, ni, params_)) return orbit_min(m, ni, params_);
    }
    throw std::logic_error("primitive orbit draw failed to terminate");
  }

  Params params_;
  std::vector<std::vector<int>> partitions_;
  std::vector<U128> cumulative_;
};

SemisimpleInertialData draw_generic(const ClassSampler& sampler, Int delta,
                                    std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kGenericDrawCap; ++attempt) {
    SemisimpleInertialData rho = sampler.draw(rng);
    if (rep_margin(rho) >= delta) return rho;
  }
  throw std::runtime_error(
      "rejection sampling found no class of genericity margin >= " +
      std::to_string(delta) + " after " + std::to_string(kGenericDrawCap) +
      " attempts; the stratum is empty or tiny -- use exhaustive mode");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Exact emptiness test for the delta-generic stratum.  An n-element digit
// multiset with pairwise circular distances >= delta on Z/(p-1) forces the n
// sorted gaps, each >= delta, to sum to p-1, so n*delta <= p-1; conversely
// when n*delta <= p-1 the split class with n niveau-f summands whose digits
// are constantly 0, delta, ..., (n-1)*delta has margin >= delta.
bool stratum_empty(const Params& params, Int delta) {
  return static_cast<Int>(params.n) * delta > params.p - 1;
}

// Strongest bound whose hypotheses hold at this delta, if any.
std::optional<Int> strongest_bound(const Params& params, Int delta) {
  std::optional<Int> bound;
  if (delta >= 2 * params.n + 1) bound = delta - 2 * params.n;
  if (params.f == 1 && delta >= params.n + 2) {
    const Int fb = delta - (params.n + 1);
    if (!bound || fb > *bound) bound = fb;
  }
  return bound;
}

void guard_exhaustive(const Params& params, Int weights_total) {
  const U128 classes = total_class_count(params);
  if (classes > static_cast<U128>(kMaxClasses) ||
      static_cast<double>(classes) * static_cast<double>(weights_total) > kMaxPairWork) {
    throw std::runtime_error(
        "exhaustive scan over all inertial classes is infeasible at these "
        "parameters; use sampling");
  }
}

}  // namespace

VerdictReport verify_theorem(const VerifyConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerdictReport report{config, Verdict::invalid_input, {}, 0, {}, {}};
  const Params& params = config.params;
  const auto invalid = [&](std::string why) {
    report.verdict = Verdict::invalid_input;
    report.invalid_reason = std::move(why);
    report.stats.wall_seconds = seconds_since(start);
    return report;
  };

  if (config.workers < 0) return invalid("workers must be >= 0");
  if (config.sampling.sample < 0) return invalid("sample must be >= 0");
  if (params.p < params.n + 1) {
    return invalid("the digit compatibility test requires p >= n + 1 (p = " +
                   std::to_string(params.p) + ", n = " + std::to_string(params.n) + ")");
  }
  const Int cap = params.margin_cap();
  if (config.delta < 1 || config.delta > cap) {
    return invalid("delta must lie in [1, (p-1)/2] = [1, " + std::to_string(cap) +
                   "], got " + std::to_string(config.delta));
  }
  if (config.mode == VerifyMode::general) {
    const Int least = 2 * params.n + 1;
    if (config.delta < least) {
      return invalid("general mode requires delta >= 2n+1 = " + std::to_string(least) +
                     ", got " + std::to_string(config.delta));
    }
    report.bound = config.delta - 2 * params.n;
  } else {
    if (params.f != 1) {
      return invalid("f_equals_one mode requires f = 1, got f = " +
                     std::to_string(params.f));
    }
    const Int least = params.n + 2;
    if (config.delta < least) {
      return invalid("f_equals_one mode requires delta >= n+2 = " + std::to_string(least) +
                     ", got " + std::to_string(config.delta));
    }
    report.bound = config.delta - (params.n + 1);
  }

  const int workers = resolve_workers(config.workers);
  const WeightTable table = build_weight_table(params, workers);
  report.stats.weights_total = table.en.size();

  std::vector<ScanAcc> accs(workers);
  if (config.sampling.sample == 0) {
    guard_exhaustive(params, table.en.size());
    const std::vector<SemisimpleInertialData> reps = enumerate_semisimple(params);
    report.stats.reps_scanned = static_cast<Int>(reps.size());
    parallel_chunks(static_cast<Int>(reps.size()), workers, 1, [&](Int i, int t) {
      const Int margin = rep_margin(reps[i]);
      if (margin < config.delta) return;
      scan_class(table, params, reps[i], margin, report.bound, i, accs[t]);
    });
  } else if (stratum_empty(params, config.delta)) {
    // Nothing to draw: the bound holds vacuously and the stats say so.
  } else {
    const ClassSampler sampler(params);
    report.stats.reps_scanned = config.sampling.sample;
    parallel_chunks(config.sampling.sample, workers, 1, [&](Int i, int t) {
      std::mt19937_64 rng = rng_for(config.sampling.seed, i);
      const SemisimpleInertialData rho = draw_generic(sampler, config.delta, rng);
      scan_class(table, params, rho, rep_margin(rho), report.bound, i, accs[t]);
    });
  }

  std::optional<CexCandidate> best;
  for (auto& acc : accs) {
    report.stats.reps_checked += acc.checked;
    report.stats.survivors_total += acc.survivors;
    if (acc.min_margin && (!report.stats.min_survivor_margin ||
                           *acc.min_margin < *report.stats.min_survivor_margin)) {
      report.stats.min_survivor_margin = acc.min_margin;
    }
    if (acc.cex && (!best || std::pair(acc.cex->rep_key, acc.cex->weight_index) <
                                 std::pair(best->rep_key, best->weight_index))) {
      best = std::move(acc.cex);
    }
  }
  if (best) {
    report.verdict = Verdict::counterexample;
    report.counterexample =
        Counterexample{std::move(best->rho), table.en.at(best->weight_index),
                       best->rep_margin_value, table.margins[best->weight_index]};
  } else {
    report.verdict = Verdict::pass;
  }
  report.stats.wall_seconds = seconds_since(start);
  return report;
}

SurveyReport survey(const SurveyConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SurveyReport report{config, {}, 0};
  const Params& params = config.params;
  if (params.p < params.n + 1) {
    throw std::invalid_argument("survey requires p >= n + 1");
  }
  const Int cap = params.margin_cap();
  if (config.delta_min < 1 || config.delta_max < config.delta_min ||
      config.delta_max > cap) {
    throw std::invalid_argument(
        "survey range must satisfy 1 <= delta_min <= delta_max <= (p-1)/2 = " +
        std::to_string(cap));
  }
  if (config.sampling.sample < 0) throw std::invalid_argument("sample must be >= 0");
  if (config.workers < 0) throw std::invalid_argument("workers must be >= 0");

  const int workers = resolve_workers(config.workers);
  const WeightTable table = build_weight_table(params, workers);

  struct RepStat {
    Int margin = 0;
    Int pairs = 0;
    std::map<Int, Int> hist;
  };
  const auto scan_into = [&](const SemisimpleInertialData& rho, RepStat& stat) {
    stat.margin = rep_margin(rho);
    const Int total = table.en.size();
    for (Int wi = 0; wi < total; ++wi) {
      if (!table_compatible(table, params, wi, rho)) continue;
      ++stat.pairs;
      ++stat.hist[table.margins[wi]];
    }
  };

  std::vector<RepStat> stats;
  if (config.sampling.sample == 0) {
    guard_exhaustive(params, table.en.size());
    std::vector<SemisimpleInertialData> kept;
    for (auto& rho : enumerate_semisimple(params)) {
      if (rep_margin(rho) >= config.delta_min) kept.push_back(std::move(rho));
    }
    stats.resize(kept.size());
    parallel_chunks(static_cast<Int>(kept.size()), workers, 1,
                    [&](Int i, int) { scan_into(kept[i], stats[i]); });
  } else if (!stratum_empty(params, config.delta_min)) {
    // Draws target the delta_min stratum; higher levels reuse the draws whose
    // margin qualifies, so one pass serves the whole range.  An empty lowest
    // stratum leaves every row empty instead of sampling at all.
    const ClassSampler sampler(params);
    stats.resize(config.sampling.sample);
    parallel_chunks(config.sampling.sample, workers, 1, [&](Int i, int) {
      std::mt19937_64 rng = rng_for(config.sampling.seed, i);
      scan_into(draw_generic(sampler, config.delta_min, rng), stats[i]);
    });
  }

  for (Int delta = config.delta_min; delta <= config.delta_max; ++delta) {
    SurveyRow row;
    row.delta = delta;
    std::map<Int, Int> hist;
    for (const auto& stat : stats) {
      if (stat.margin < delta) continue;
      ++row.reps;
      row.survivor_pairs += stat.pairs;
      for (const auto& [margin, count] : stat.hist) hist[margin] += count;
    }
    row.empty_stratum = row.reps == 0;
    if (!hist.empty()) row.min_margin = hist.begin()->first;
    row.asserted_bound = strongest_bound(params, delta);
    row.bound_satisfied =
        !(row.asserted_bound && row.min_margin && *row.min_margin < *row.asserted_bound);
    row.histogram.assign(hist.begin(), hist.end());
    report.rows.push_back(std::move(row));
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

}  // namespace welim
