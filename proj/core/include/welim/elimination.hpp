#pragma once
// Inertial exponents of rank-1 constituents of tame lifts: the descent-data
// enumeration, the closed-form exponent set, the digit compatibility test,
// and the weight eliminator.

#include "welim/galois.hpp"
#include "welim/inertial_type.hpp"
#include "welim/weights.hpp"

#include <set>

namespace welim {

// Descent data of one rank-ni constituent in niveau d = ni*f: character
// exponents (residues mod e_d) and Frobenius powers in [0, (n-1) e_d] with
// frob_powers[j] = p^{d-1} char_exponents[j+1] - char_exponents[j] (mod e_d),
// index cyclic.  The weighted sum of the Frobenius powers is then divisible
// by e_d automatically.
struct Rank1Descent {
  int d = 1;
  std::vector<Int> char_exponents;
  std::vector<Int> frob_powers;
};

// Inertial exponent realized by descent data: exp0 + (sum_j frob_powers[j] *
// p^{d-j}) / e_d, reduced mod e_d.  The weighted sum must be divisible by
// e_d; anything else is a hard error.
Int rank1_exponent(Int exp0, std::span<const Int> frob_powers, Int p);

struct ExponentSet {
  int d = 1;
  std::set<Int> values;
};

// Exponents realized by admissible descent data for a rank-ni constituent of
// type xi: enumerates row maps s and, for each position, the at most n
// Frobenius powers in the forced residue class.
ExponentSet reduction_exponents_raw(const InertialType& xi, int ni);

// Closed form: { sum_j (xi.digit(s(j), j) + a(j)) p^j mod e_d } over all maps
// s, a : [0, d-1] -> [0, n-1].  Contains reduction_exponents_raw; both sets
// are stable under multiplication by q = p^f.
ExponentSet reduction_exponents(const InertialType& xi, int ni);

// Membership of m in reduction_exponents(xi, ni), decided without
// materializing the set: some row map s makes every base-p digit of
// (m - sum_j xi.digit(s(j), j) p^j mod e_d) at most n-1.  Requires p >= n+1
// (digit representatives below e_d are unique there) and m in [0, e_d - 1].
bool is_compatible(Int m, const InertialType& xi, int ni);

// Every summand exponent compatible with the type; parameters must match.
bool rep_compatible(const SemisimpleInertialData& rho, const InertialType& xi);

struct SurvivingWeight {
  RestrictedWeight weight;  // canonical
  Int margin = 0;
};

// Weights whose covering type is compatible with rho, in enumeration order.
struct EliminationReport {
  SemisimpleInertialData rho;
  std::vector<SurvivingWeight> survivors;
};

EliminationReport eliminate(const SemisimpleInertialData& rho);

}  // namespace welim
