#pragma once
// Semisimple tame inertial data: direct sums of irreducible summands, each a
// full Frobenius orbit of niveau-(ni*f) exponents, with digit multisets per
// embedding, genericity margins, and streaming enumeration of all classes.

#include "welim/arith.hpp"

#include <map>
#include <optional>
#include <utility>

namespace welim {

struct IrreducibleSummand {
  int ni = 1;      // dimension
  Int m = 0;       // orbit-minimal exponent in [0, e_{ni f} - 1]
  DigitVector x;   // digits_of(m, ni*f, p)

  friend bool operator==(const IrreducibleSummand&, const IrreducibleSummand&) = default;
};

struct SemisimpleInertialData {
  Params params;
  std::vector<IrreducibleSummand> summands;  // sorted by (ni, m)
};

// No proper divisor a of ni has e_{ni f} / e_{a f} dividing m; equivalently
// the Frobenius orbit of m has full size ni.  Always true for ni = 1.
bool is_primitive(Int m, int ni, const Params& params);

// Smallest element of {m * q^t mod e_{ni f} : 0 <= t < ni}.
Int orbit_min(Int m, int ni, const Params& params);

// Canonicalizes (reduces m mod e_{ni f}, orbit-minimizes, sorts by (ni, m))
// and validates: dimensions sum to n, every summand primitive.
SemisimpleInertialData make_semisimple(const Params& params,
                                       const std::vector<std::pair<int, Int>>& parts);

// Digit multiset at embedding j in [0, f): for each summand the digits
// x[j], x[j+f], ..., x[j+(ni-1)f], positions cyclic mod ni*f.  Size n.
std::vector<Int> digit_multiset(const SemisimpleInertialData& rho, int j);

// Minimum of multiset_margin(digit_multiset(rho, j)) over embeddings j.
Int rep_margin(const SemisimpleInertialData& rho);

// Moebius counts of primitive exponents / orbits for one part dimension.
Int primitive_exponent_count(const Params& params, int ni);
Int primitive_orbit_count(const Params& params, int ni);

// Ascending orbit minima of primitive exponents for one part dimension.
std::vector<Int> primitive_orbit_minima(const Params& params, int ni);

// Partitions of n as ascending part lists, in lexicographic order.
std::vector<std::vector<int>> partitions_of(int n);

// Streams every isomorphism class exactly once: partitions in lexicographic
// order, then non-decreasing tuples of orbit minima within each part
// dimension, so the emitted summand lists are sorted.
class SemisimpleEnumerator {
 public:
  explicit SemisimpleEnumerator(const Params& params);
  std::optional<SemisimpleInertialData> next();

 private:
  struct Group {
    int ni = 1;
    int count = 0;
    std::vector<Int> minima;
    std::vector<size_t> indices;  // non-decreasing tuple into minima
  };

  bool start_partition();
  bool advance();

  Params params_;
  std::vector<std::vector<int>> partitions_;
  size_t partition_index_ = 0;
  std::vector<Group> groups_;
  std::map<int, std::vector<Int>> minima_cache_;
  bool active_ = false;
};

std::vector<SemisimpleInertialData> enumerate_semisimple(const Params& params);

// Underlying stream restricted to rep_margin >= delta; delta must lie in
// [1, (p-1)/2].
class GenericEnumerator {
 public:
  GenericEnumerator(const Params& params, Int delta);
  std::optional<SemisimpleInertialData> next();

 private:
  SemisimpleEnumerator inner_;
  Int delta_;
};

}  // namespace welim
