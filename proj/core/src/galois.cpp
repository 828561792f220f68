#include "welim/galois.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace welim {

namespace {

std::vector<int> proper_divisors(int n) {
  std::vector<int> out;
  for (int a = 1; a < n; ++a)
    if (n % a == 0) out.push_back(a);
  return out;
}

int moebius(int n) {
  int result = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

void validate_ni(int ni, const Params& params, const char* where) {
  if (ni < 1 || ni > params.n)
    throw std::invalid_argument(std::string(where) + ": ni must lie in [1, n]");
}

}  // namespace

bool is_primitive(Int m, int ni, const Params& params) {
  validate_ni(ni, params, "is_primitive");
  const Int e = params.e(ni * params.f);
  const Int r = floor_mod(m, e);
  for (int a : proper_divisors(ni)) {
    const Int divisor = e / params.e(a * params.f);  // exact: a*f divides ni*f
    if (r % divisor == 0) return false;
  }
  return true;
}

Int orbit_min(Int m, int ni, const Params& params) {
  validate_ni(ni, params, "orbit_min");
  const Int e = params.e(ni * params.f);
  const Int q = pow_mod(params.p, params.f, e);
  Int cur = floor_mod(m, e);
  Int best = cur;
  for (int t = 1; t < ni; ++t) {
    cur = mul_mod(cur, q, e);
    best = std::min(best, cur);
  }
  return best;
}

SemisimpleInertialData make_semisimple(const Params& params,
                                       const std::vector<std::pair<int, Int>>& parts) {
  SemisimpleInertialData rho{params, {}};
  long long total = 0;
  for (const auto& [ni, m] : parts) {
    validate_ni(ni, params, "make_semisimple");
    total += ni;
    const Int canonical = orbit_min(m, ni, params);
    if (!is_primitive(canonical, ni, params))
      throw std::invalid_argument("make_semisimple: exponent " + std::to_string(m) +
                                  " is imprimitive for dimension " + std::to_string(ni));
    IrreducibleSummand summand;
    summand.ni = ni;
    summand.m = canonical;
    summand.x = digits_of(canonical, ni * params.f, params.p);
    rho.summands.push_back(std::move(summand));
  }
  if (total != params.n)
    throw std::invalid_argument("make_semisimple: dimensions sum to " +
                                std::to_string(total) + ", expected n = " +
                                std::to_string(params.n));
  std::sort(rho.summands.begin(), rho.summands.end(),
            [](const IrreducibleSummand& a, const IrreducibleSummand& b) {
              return std::pair(a.ni, a.m) < std::pair(b.ni, b.m);
            });
  return rho;
}

std::vector<Int> digit_multiset(const SemisimpleInertialData& rho, int j) {
  if (j < 0 || j >= rho.params.f)
    throw std::out_of_range("digit_multiset: embedding index out of range");
  std::vector<Int> out;
  out.reserve(static_cast<size_t>(rho.params.n));
  for (const IrreducibleSummand& s : rho.summands)
    for (int t = 0; t < s.ni; ++t) out.push_back(s.x.at_cyclic(j + t * rho.params.f));
  return out;
}

Int rep_margin(const SemisimpleInertialData& rho) {
  Int best = rho.params.margin_cap();
  for (int j = 0; j < rho.params.f; ++j) {
    const std::vector<Int> s = digit_multiset(rho, j);
    best = std::min(best, multiset_margin(s, rho.params.p));
  }
  return best;
}

Int primitive_exponent_count(const Params& params, int ni) {
  validate_ni(ni, params, "primitive_exponent_count");
  Int count = 0;
  for (int a = 1; a <= ni; ++a) {
    if (ni % a != 0) continue;
    count = checked_add(count, checked_mul(moebius(ni / a), params.e(a * params.f)));
  }
  return count;
}

Int primitive_orbit_count(const Params& params, int ni) {
  return primitive_exponent_count(params, ni) / ni;
}

std::vector<Int> primitive_orbit_minima(const Params& params, int ni) {
  validate_ni(ni, params, "primitive_orbit_minima");
  const Int e = params.e(ni * params.f);
  const Int q = pow_mod(params.p, params.f, e);
  std::vector<Int> out;
  for (Int m = 0; m < e; ++m) {
    bool minimal = true;
    bool full_orbit = true;
    Int cur = m;
    for (int t = 1; t < ni; ++t) {
      cur = mul_mod(cur, q, e);
      if (cur < m) {
        minimal = false;
        break;
      }
      if (cur == m) {
        full_orbit = false;  // orbit size divides t < ni
        break;
      }
    }
    if (minimal && full_orbit) out.push_back(m);
  }
  return out;
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // ascending parts, lexicographic order
  auto rec = [&](auto&& self, int remaining, int min_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = min_part; part <= remaining; ++part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, 1);
  return out;
}

SemisimpleEnumerator::SemisimpleEnumerator(const Params& params)
    : params_(params), partitions_(partitions_of(params.n)) {}

bool SemisimpleEnumerator::start_partition() {
  while (partition_index_ < partitions_.size()) {
    const std::vector<int>& partition = partitions_[partition_index_];
    groups_.clear();
    bool feasible = true;
    for (size_t i = 0; i < partition.size();) {
      size_t j = i;
      while (j < partition.size() && partition[j] == partition[i]) ++j;
      Group g;
      g.ni = partition[i];
      g.count = static_cast<int>(j - i);
      auto it = minima_cache_.find(g.ni);
      if (it == minima_cache_.end())
        it = minima_cache_.emplace(g.ni, primitive_orbit_minima(params_, g.ni)).first;
      g.minima = it->second;
      if (g.minima.empty()) {
        feasible = false;
        break;
      }
      g.indices.assign(static_cast<size_t>(g.count), 0);
      groups_.push_back(std::move(g));
      i = j;
    }
    if (feasible) return true;
    ++partition_index_;
  }
  return false;
}

bool SemisimpleEnumerator::advance() {
  // rightmost group fastest; within a group, non-decreasing tuple odometer
  for (size_t gi = groups_.size(); gi-- > 0;) {
    Group& g = groups_[gi];
    for (size_t t = g.indices.size(); t-- > 0;) {
      if (g.indices[t] + 1 < g.minima.size()) {
        const size_t next = g.indices[t] + 1;
        for (size_t u = t; u < g.indices.size(); ++u) g.indices[u] = next;
        for (size_t gj = gi + 1; gj < groups_.size(); ++gj)
          std::fill(groups_[gj].indices.begin(), groups_[gj].indices.end(), 0);
        return true;
      }
    }
  }
  return false;
}

std::optional<SemisimpleInertialData> SemisimpleEnumerator::next() {
  if (!active_) {
    if (!start_partition()) return std::nullopt;
    active_ = true;
  } else if (!advance()) {
    ++partition_index_;
    if (!start_partition()) return std::nullopt;
  }
  SemisimpleInertialData rho{params_, {}};
  for (const Group& g : groups_)
    for (size_t idx : g.indices) {
      IrreducibleSummand s;
      s.ni = g.ni;
      s.m = g.minima[idx];
      s.x = digits_of(s.m, g.ni * params_.f, params_.p);
      rho.summands.push_back(std::move(s));
    }
  return rho;
}

std::vector<SemisimpleInertialData> enumerate_semisimple(const Params& params) {
  SemisimpleEnumerator en(params);
  std::vector<SemisimpleInertialData> out;
  while (auto rho = en.next()) out.push_back(std::move(*rho));
  return out;
}

GenericEnumerator::GenericEnumerator(const Params& params, Int delta)
    : inner_(params), delta_(delta) {
  if (delta < 1 || delta > params.margin_cap())
    throw std::invalid_argument("GenericEnumerator: delta must lie in [1, (p-1)/2]");
}

std::optional<SemisimpleInertialData> GenericEnumerator::next() {
  while (auto rho = inner_.next())
    if (rep_margin(*rho) >= delta_) return rho;
  return std::nullopt;
}

}  // namespace welim
