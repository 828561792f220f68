#pragma once
// p-restricted weights for GL_n over the residue field, taken modulo the twist
// lattice: class keys, canonical representatives, genericity margins, and the
// covering principal-series type.

#include "welim/arith.hpp"
#include "welim/inertial_type.hpp"

#include <compare>

namespace welim {

// lambda has f rows of n entries; within each row consecutive differences
// lambda[j][i] - lambda[j][i+1] lie in [0, p-1].  Entries may be negative.
struct RestrictedWeight {
  Params params;
  std::vector<std::vector<Int>> lambda;

  RestrictedWeight(Params params, std::vector<std::vector<Int>> lambda);
};

// Complete invariant of a twist class: the f*(n-1) consecutive differences
// (row-major) and the bottom-row residue sum_j lambda[j][n-1] * p^{f-1-j}
// mod e_f.
struct WeightClassKey {
  std::vector<Int> diffs;
  Int det_residue = 0;

  friend bool operator==(const WeightClassKey&, const WeightClassKey&) = default;
  friend std::strong_ordering operator<=>(const WeightClassKey&,
                                          const WeightClassKey&) = default;
};

WeightClassKey class_key(const RestrictedWeight& w);

// Same class iff the entrywise difference has constant rows c_j with
// sum_j c_j * p^{f-1-j} = 0 (mod e_f).  Mismatched parameters are an error.
bool weight_equivalent(const RestrictedWeight& a, const RestrictedWeight& b);

// The unique class representative whose bottom row spells out the digits of
// the class det residue; idempotent and constant on classes.
RestrictedWeight canonicalize(const RestrictedWeight& w);

// Largest delta such that lambda[j][i] - lambda[j][i+k] mod p-1 lies in
// [delta, p-1-delta] for every row j and every 0 <= i < i+k <= n-1.
Int weight_margin(const RestrictedWeight& w);

// All consecutive differences at most p-2.
bool is_regular(const RestrictedWeight& w);

// Row s of the covering type is digits_of(sum_j lambda[(f-j) mod f][s] p^j,
// f, p); constant on twist classes.
InertialType covering_type(const RestrictedWeight& w);

// Random access over canonical classes: index = det_residue * p^{f(n-1)} +
// diff_index, diffs decoded from diff_index as base-p digits row-major.
class WeightEnumeration {
 public:
  explicit WeightEnumeration(const Params& params);

  Int size() const { return size_; }
  RestrictedWeight at(Int index) const;
  WeightClassKey key_at(Int index) const;

 private:
  Params params_;
  Int diff_count_;
  Int size_;
};

std::vector<RestrictedWeight> enumerate_weights(const Params& params);

}  // namespace welim
