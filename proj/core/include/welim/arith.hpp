#pragma once
// Exact base-p digit arithmetic modulo e_d = p^d - 1: digit vectors with
// cyclic indexing, carry solutions of sum(alpha_j p^j) = 0 (mod e_d), and
// genericity margins of residue multisets modulo p - 1.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace welim {

using Int = std::int64_t;

// Checked helpers: throw std::overflow_error instead of wrapping.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, int exp);

bool is_prime(Int p);

// Remainder in [0, m); m > 0, a of any sign.
Int floor_mod(Int a, Int m);
// a * b mod m without intermediate overflow; m > 0.
Int mul_mod(Int a, Int b, Int m);
// base^exp mod m; exp >= 0.
Int pow_mod(Int base, int exp, Int m);

// e_d = p^d - 1, exactly; d >= 1, p >= 2.
Int e_value(int d, Int p);

// Parameter block: prime p, dimension n, unramified degree f.  Construction
// checks that n * e_{n f} fits the working integer width, so downstream
// arithmetic cannot wrap silently.
struct Params {
  Int p;
  int n;
  int f;

  Params(Int p, int n, int f);

  Int q() const { return checked_pow(p, f); }  // residue field size
  Int e(int d) const { return e_value(d, p); }
  // Largest admissible genericity level, floor((p-1)/2).
  Int margin_cap() const { return (p - 1) / 2; }

  friend bool operator==(const Params&, const Params&) = default;
};

// Base-p digits (least significant first) of a residue in [0, e_d - 1].
// Digits lie in [0, p-1] and are never all equal to p-1; positions are
// cyclic modulo the length.
struct DigitVector {
  Int p = 2;
  std::vector<Int> digits;

  int length() const { return static_cast<int>(digits.size()); }
  Int at_cyclic(int j) const;
  Int value() const;  // sum(digits[j] p^j), in [0, e_d - 1]

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

// Digits of m modulo e_d, representative taken in [0, e_d - 1].  Accepts any
// integer, including negative ones.
DigitVector digits_of(Int m, int d, Int p);

// Integers t_j with alpha_j = t_j * p - t_{j-1} (index cyclic mod d).  Such
// t exist iff sum(alpha_j p^j) = 0 (mod e_d); the solution is then unique
// and sum(alpha_j p^j) = quotient * e_d with quotient = t_{d-1}.
struct CarrySolution {
  std::vector<Int> carries;
  Int quotient = 0;
};

std::optional<CarrySolution> padic_solve(std::span<const Int> alpha, Int p);

// Largest delta in [0, (p-1)/2] such that every difference of two positions
// of s, reduced mod p-1, lies in [delta, p-1-delta].  Multisets with fewer
// than two elements get the cap; a repeated element forces 0.
Int multiset_margin(std::span<const Int> s, Int p);

}  // namespace welim
