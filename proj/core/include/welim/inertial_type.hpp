#pragma once
// Tame inertial types for the degree-f unramified extension: n characters of
// niveau f, each recorded by its f base-p digits.

#include "welim/arith.hpp"

namespace welim {

struct InertialType {
  Params params;
  std::vector<DigitVector> rows;  // n rows of f digits each

  InertialType(Params params, std::vector<DigitVector> rows);

  Int row_value(int s) const;             // in [0, e_f - 1]
  Int digit(int s, int j) const;          // row s, position j cyclic mod f

  friend bool operator==(const InertialType&, const InertialType&) = default;
};

// Rows given by their residues mod e_f.
InertialType type_from_values(const Params& params, std::span<const Int> row_values);

}  // namespace welim
