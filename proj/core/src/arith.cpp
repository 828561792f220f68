#include "welim/arith.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace welim {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer addition overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer multiplication overflow");
  return r;
}

Int checked_pow(Int base, int exp) {
  if (exp < 0) throw std::invalid_argument("checked_pow: negative exponent");
  Int r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int q = 2; q <= p / q; ++q)
    if (p % q == 0) return false;
  return true;
}

Int floor_mod(Int a, Int m) {
  if (m <= 0) throw std::invalid_argument("floor_mod: modulus must be positive");
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mul_mod(Int a, Int b, Int m) {
  if (m <= 0) throw std::invalid_argument("mul_mod: modulus must be positive");
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

Int pow_mod(Int base, int exp, Int m) {
  if (exp < 0) throw std::invalid_argument("pow_mod: negative exponent");
  Int r = floor_mod(1, m);
  Int b = floor_mod(base, m);
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return r;
}

Int e_value(int d, Int p) {
  if (d < 1) throw std::invalid_argument("e_value: d must be >= 1");
  if (p < 2) throw std::invalid_argument("e_value: p must be >= 2");
  return checked_add(checked_pow(p, d), -1);
}

Params::Params(Int p_, int n_, int f_) : p(p_), n(n_), f(f_) {
  if (!is_prime(p)) throw std::invalid_argument("Params: p must be prime");
  if (n < 1) throw std::invalid_argument("Params: n must be >= 1");
  if (f < 1) throw std::invalid_argument("Params: f must be >= 1");
  try {
    checked_mul(static_cast<Int>(n), e_value(n * f, p));
  } catch (const std::overflow_error&) {
    throw std::overflow_error(
        "Params: n * (p^(n*f) - 1) exceeds the supported integer width");
  }
}

Int DigitVector::at_cyclic(int j) const {
  const int d = length();
  if (d == 0) throw std::invalid_argument("DigitVector: empty");
  return digits[static_cast<size_t>(((j % d) + d) % d)];
}

Int DigitVector::value() const {
  Int v = 0;
  Int pj = 1;
  for (int j = 0; j < length(); ++j) {
    v = checked_add(v, checked_mul(digits[static_cast<size_t>(j)], pj));
    if (j + 1 < length()) pj = checked_mul(pj, p);
  }
  return v;
}

DigitVector digits_of(Int m, int d, Int p) {
  const Int e = e_value(d, p);
  Int r = floor_mod(m, e);
  DigitVector dv;
  dv.p = p;
  dv.digits.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    dv.digits[static_cast<size_t>(j)] = r % p;
    r /= p;
  }
  return dv;
}

std::optional<CarrySolution> padic_solve(std::span<const Int> alpha, Int p) {
  const int d = static_cast<int>(alpha.size());
  if (d < 1) throw std::invalid_argument("padic_solve: alpha must be nonempty");
  if (p < 2) throw std::invalid_argument("padic_solve: p must be >= 2");
  const Int e = e_value(d, p);

  __int128 total = 0;
  __int128 pj = 1;
  for (int j = 0; j < d; ++j) {
    total += static_cast<__int128>(alpha[static_cast<size_t>(j)]) * pj;
    pj *= p;
  }
  if (total % e != 0) return std::nullopt;

  // t_{d-1} is forced to the quotient; alpha_j = t_j p - t_{j-1} determines
  // the rest downward, and the remaining cyclic equation holds identically.
  std::vector<__int128> t(static_cast<size_t>(d));
  t[static_cast<size_t>(d - 1)] = total / e;
  for (int j = d - 1; j >= 1; --j)
    t[static_cast<size_t>(j - 1)] =
        static_cast<__int128>(p) * t[static_cast<size_t>(j)] - alpha[static_cast<size_t>(j)];
  if (static_cast<__int128>(p) * t[0] - t[static_cast<size_t>(d - 1)] != alpha[0])
    throw std::logic_error("padic_solve: cyclic consistency failed");

  CarrySolution sol;
  sol.carries.resize(static_cast<size_t>(d));
  constexpr __int128 lo = std::numeric_limits<Int>::min();
  constexpr __int128 hi = std::numeric_limits<Int>::max();
  for (int j = 0; j < d; ++j) {
    if (t[static_cast<size_t>(j)] < lo || t[static_cast<size_t>(j)] > hi)
      throw std::overflow_error("padic_solve: carry exceeds integer width");
    sol.carries[static_cast<size_t>(j)] = static_cast<Int>(t[static_cast<size_t>(j)]);
  }
  sol.quotient = sol.carries[static_cast<size_t>(d - 1)];
  return sol;
}

Int multiset_margin(std::span<const Int> s, Int p) {
  if (p < 2) throw std::invalid_argument("multiset_margin: p must be >= 2");
  const Int mod = p - 1;
  Int best = (p - 1) / 2;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b) {
      const Int r = floor_mod(s[a] - s[b], mod);
      best = std::min(best, std::min(r, mod - r));
    }
  return best;
}

}  // namespace welim
