#include "welim/elimination.hpp"

#include <stdexcept>
#include <string>

namespace welim {

namespace {

void validate_dimension(const InertialType& xi, int ni, const char* where) {
  if (ni < 1 || ni > xi.params.n)
    throw std::invalid_argument(std::string(where) + ": ni must lie in [1, n]");
  if (xi.params.p < xi.params.n + 1)
    throw std::domain_error(std::string(where) + ": requires p >= n+1");
}

// Advances a base-`radix` odometer; returns false on wraparound.
bool advance_odometer(std::vector<int>& digits, int radix) {
  for (size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

Int rank1_exponent(Int exp0, std::span<const Int> frob_powers, Int p) {
  const int d = static_cast<int>(frob_powers.size());
  if (d < 1) throw std::invalid_argument("rank1_exponent: empty Frobenius powers");
  const Int e = e_value(d, p);
  __int128 total = 0;
  for (int j = 0; j < d; ++j) {
    __int128 coeff = 1;
    for (int t = 0; t < d - j; ++t) coeff *= p;  // p^{d-j}
    total += static_cast<__int128>(frob_powers[static_cast<size_t>(j)]) * coeff;
  }
  if (total % e != 0)
    throw std::domain_error("rank1_exponent: weighted Frobenius power sum not divisible by e_d");
  __int128 acc = static_cast<__int128>(floor_mod(exp0, e)) + total / e;
  acc %= e;
  if (acc < 0) acc += e;
  return static_cast<Int>(acc);
}

ExponentSet reduction_exponents_raw(const InertialType& xi, int ni) {
  validate_dimension(xi, ni, "reduction_exponents_raw");
  const Params& P = xi.params;
  const int d = ni * P.f;
  const Int e = P.e(d);
  const Int q = pow_mod(P.p, P.f, e);

  // geometric factor 1 + q + ... + q^{ni-1} mod e
  Int geom = 0;
  Int qt = floor_mod(1, e);
  for (int t = 0; t < ni; ++t) {
    geom = floor_mod(geom + qt, e);
    qt = mul_mod(qt, q, e);
  }

  std::vector<Int> p_pow(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) p_pow[static_cast<size_t>(j)] = pow_mod(P.p, j, e);
  const Int p_dm1 = p_pow[static_cast<size_t>(d - 1)];

  ExponentSet out;
  out.d = d;

  std::vector<int> s(static_cast<size_t>(d), 0);
  std::vector<Int> char_exps(static_cast<size_t>(d));
  std::vector<Int> residues(static_cast<size_t>(d));
  std::vector<int> radix(static_cast<size_t>(d));
  std::vector<int> pick(static_cast<size_t>(d));
  std::vector<Int> frob(static_cast<size_t>(d));
  do {
    for (int j = 0; j < d; ++j)
      char_exps[static_cast<size_t>(j)] =
          mul_mod(p_pow[static_cast<size_t>(j)],
                  mul_mod(geom, xi.row_value(s[static_cast<size_t>(j)]), e), e);
    for (int j = 0; j < d; ++j)
      residues[static_cast<size_t>(j)] =
          floor_mod(mul_mod(p_dm1, char_exps[static_cast<size_t>((j + 1) % d)], e) -
                        char_exps[static_cast<size_t>(j)],
                    e);
    // Frobenius powers run over the residue class representatives within
    // [0, (n-1) e]: n of them when the residue is 0, n-1 otherwise.
    for (int j = 0; j < d; ++j)
      radix[static_cast<size_t>(j)] = residues[static_cast<size_t>(j)] == 0 ? P.n : P.n - 1;
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      for (int j = 0; j < d; ++j)
        frob[static_cast<size_t>(j)] =
            residues[static_cast<size_t>(j)] + static_cast<Int>(pick[static_cast<size_t>(j)]) * e;
      out.values.insert(rank1_exponent(char_exps[0], frob, P.p));
      // mixed-radix odometer over the representative choices
      size_t t = 0;
      for (; t < pick.size(); ++t) {
        if (++pick[t] < radix[t]) break;
        pick[t] = 0;
      }
      if (t == pick.size()) break;
    }
  } while (advance_odometer(s, P.n));
  return out;
}

ExponentSet reduction_exponents(const InertialType& xi, int ni) {
  validate_dimension(xi, ni, "reduction_exponents");
  const Params& P = xi.params;
  const int d = ni * P.f;
  const Int e = P.e(d);
  std::vector<Int> p_pow(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) p_pow[static_cast<size_t>(j)] = pow_mod(P.p, j, e);

  ExponentSet out;
  out.d = d;
  std::vector<int> s(static_cast<size_t>(d), 0);
  do {
    Int base = 0;
    for (int j = 0; j < d; ++j)
      base = floor_mod(base + mul_mod(xi.digit(s[static_cast<size_t>(j)], j),
                                      p_pow[static_cast<size_t>(j)], e),
                       e);
    std::vector<int> a(static_cast<size_t>(d), 0);
    do {
      Int v = base;
      for (int j = 0; j < d; ++j)
        v = floor_mod(v + mul_mod(a[static_cast<size_t>(j)], p_pow[static_cast<size_t>(j)], e), e);
      out.values.insert(v);
    } while (advance_odometer(a, P.n));
  } while (advance_odometer(s, P.n));
  return out;
}

bool is_compatible(Int m, const InertialType& xi, int ni) {
  validate_dimension(xi, ni, "is_compatible");
  const Params& P = xi.params;
  const int d = ni * P.f;
  const Int e = P.e(d);
  if (m < 0 || m >= e)
    throw std::invalid_argument("is_compatible: m must lie in [0, e_d - 1]");
  std::vector<Int> p_pow(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) p_pow[static_cast<size_t>(j)] = pow_mod(P.p, j, e);
  const Int limit = P.n - 1;

  std::vector<int> s(static_cast<size_t>(d), 0);
  do {
    Int v = 0;
    for (int j = 0; j < d; ++j)
      v = floor_mod(v + mul_mod(xi.digit(s[static_cast<size_t>(j)], j),
                                p_pow[static_cast<size_t>(j)], e),
                    e);
    Int rem = floor_mod(m - v, e);
    bool ok = true;
    while (rem > 0) {
      if (rem % P.p > limit) {
        ok = false;
        break;
      }
      rem /= P.p;
    }
    if (ok) return true;
  } while (advance_odometer(s, P.n));
  return false;
}

bool rep_compatible(const SemisimpleInertialData& rho, const InertialType& xi) {
  if (!(rho.params == xi.params))
    throw std::invalid_argument("rep_compatible: mismatched parameters");
  for (const IrreducibleSummand& summand : rho.summands)
    if (!is_compatible(summand.m, xi, summand.ni)) return false;
  return true;
}

EliminationReport eliminate(const SemisimpleInertialData& rho) {
  const Params& P = rho.params;
  WeightEnumeration en(P);
  EliminationReport report{rho, {}};
  for (Int i = 0; i < en.size(); ++i) {
    RestrictedWeight w = en.at(i);
    if (rep_compatible(rho, covering_type(w))) {
      const Int margin = weight_margin(w);
      report.survivors.push_back({std::move(w), margin});
    }
  }
  return report;
}

}  // namespace welim
