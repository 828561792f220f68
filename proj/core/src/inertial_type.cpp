#include "welim/inertial_type.hpp"

#include <stdexcept>
#include <string>

namespace welim {

InertialType::InertialType(Params params_, std::vector<DigitVector> rows_)
    : params(params_), rows(std::move(rows_)) {
  if (static_cast<int>(rows.size()) != params.n)
    throw std::invalid_argument("InertialType: expected " + std::to_string(params.n) +
                                " rows, got " + std::to_string(rows.size()));
  for (size_t s = 0; s < rows.size(); ++s) {
    const DigitVector& row = rows[s];
    if (row.p != params.p)
      throw std::invalid_argument("InertialType: row " + std::to_string(s) +
                                  " has mismatched p");
    if (row.length() != params.f)
      throw std::invalid_argument("InertialType: row " + std::to_string(s) +
                                  " must have f = " + std::to_string(params.f) + " digits");
    bool all_top = true;
    for (Int digit : row.digits) {
      if (digit < 0 || digit > params.p - 1)
        throw std::invalid_argument("InertialType: row " + std::to_string(s) +
                                    " has a digit outside [0, p-1]");
      if (digit != params.p - 1) all_top = false;
    }
    if (all_top)
      throw std::invalid_argument("InertialType: row " + std::to_string(s) +
                                  " has all digits equal to p-1");
  }
}

Int InertialType::row_value(int s) const {
  return rows[static_cast<size_t>(s)].value();
}

Int InertialType::digit(int s, int j) const {
  return rows[static_cast<size_t>(s)].at_cyclic(j);
}

InertialType type_from_values(const Params& params, std::span<const Int> row_values) {
  std::vector<DigitVector> rows;
  rows.reserve(row_values.size());
  for (Int v : row_values) rows.push_back(digits_of(v, params.f, params.p));
  return InertialType(params, std::move(rows));
}

}  // namespace welim
