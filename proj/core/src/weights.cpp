#include "welim/weights.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace welim {

namespace {

void require_same_params(const Params& a, const Params& b, const char* where) {
  if (!(a == b))
    throw std::invalid_argument(std::string(where) + ": mismatched parameters");
}

}  // namespace

RestrictedWeight::RestrictedWeight(Params params_, std::vector<std::vector<Int>> lambda_)
    : params(params_), lambda(std::move(lambda_)) {
  if (static_cast<int>(lambda.size()) != params.f)
    throw std::invalid_argument("RestrictedWeight: expected f = " +
                                std::to_string(params.f) + " rows, got " +
                                std::to_string(lambda.size()));
  for (size_t j = 0; j < lambda.size(); ++j) {
    if (static_cast<int>(lambda[j].size()) != params.n)
      throw std::invalid_argument("RestrictedWeight: row " + std::to_string(j) +
                                  " must have n = " + std::to_string(params.n) +
                                  " entries");
    for (int i = 0; i + 1 < params.n; ++i) {
      const Int diff = checked_add(lambda[j][static_cast<size_t>(i)],
                                   -lambda[j][static_cast<size_t>(i + 1)]);
      if (diff < 0 || diff > params.p - 1)
        throw std::invalid_argument(
            "RestrictedWeight: p-restriction violated at row " + std::to_string(j) +
            ", entries " + std::to_string(i) + "," + std::to_string(i + 1) +
            ": difference " + std::to_string(diff) + " outside [0, p-1]");
    }
  }
}

WeightClassKey class_key(const RestrictedWeight& w) {
  const Params& P = w.params;
  WeightClassKey key;
  key.diffs.reserve(static_cast<size_t>(P.f) * static_cast<size_t>(P.n - 1));
  for (int j = 0; j < P.f; ++j)
    for (int i = 0; i + 1 < P.n; ++i)
      key.diffs.push_back(w.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] -
                          w.lambda[static_cast<size_t>(j)][static_cast<size_t>(i + 1)]);
  const Int e = P.e(P.f);
  Int det = 0;
  for (int j = 0; j < P.f; ++j) {
    const Int coeff = pow_mod(P.p, P.f - 1 - j, e);
    det = floor_mod(det + mul_mod(w.lambda[static_cast<size_t>(j)][static_cast<size_t>(P.n - 1)],
                                  coeff, e),
                    e);
  }
  key.det_residue = det;
  return key;
}

bool weight_equivalent(const RestrictedWeight& a, const RestrictedWeight& b) {
  require_same_params(a.params, b.params, "weight_equivalent");
  const Params& P = a.params;
  std::vector<Int> c(static_cast<size_t>(P.f));
  for (int j = 0; j < P.f; ++j) {
    c[static_cast<size_t>(j)] =
        a.lambda[static_cast<size_t>(j)][0] - b.lambda[static_cast<size_t>(j)][0];
    for (int i = 1; i < P.n; ++i)
      if (a.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] -
              b.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] !=
          c[static_cast<size_t>(j)])
        return false;
  }
  const Int e = P.e(P.f);
  Int acc = 0;
  for (int j = 0; j < P.f; ++j)
    acc = floor_mod(acc + mul_mod(c[static_cast<size_t>(j)], pow_mod(P.p, P.f - 1 - j, e), e), e);
  return acc == 0;
}

RestrictedWeight canonicalize(const RestrictedWeight& w) {
  const Params& P = w.params;
  const WeightClassKey key = class_key(w);
  const DigitVector det_digits = digits_of(key.det_residue, P.f, P.p);
  std::vector<std::vector<Int>> lambda(static_cast<size_t>(P.f),
                                       std::vector<Int>(static_cast<size_t>(P.n)));
  for (int j = 0; j < P.f; ++j) {
    lambda[static_cast<size_t>(j)][static_cast<size_t>(P.n - 1)] =
        det_digits.digits[static_cast<size_t>(P.f - 1 - j)];
    for (int i = P.n - 2; i >= 0; --i)
      lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          lambda[static_cast<size_t>(j)][static_cast<size_t>(i + 1)] +
          key.diffs[static_cast<size_t>(j) * static_cast<size_t>(P.n - 1) +
                    static_cast<size_t>(i)];
  }
  return RestrictedWeight(P, std::move(lambda));
}

Int weight_margin(const RestrictedWeight& w) {
  const Params& P = w.params;
  const Int mod = P.p - 1;
  Int best = P.margin_cap();
  for (int j = 0; j < P.f; ++j)
    for (int i = 0; i < P.n; ++i)
      for (int k = i + 1; k < P.n; ++k) {
        const Int r = floor_mod(w.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] -
                                    w.lambda[static_cast<size_t>(j)][static_cast<size_t>(k)],
                                mod);
        best = std::min(best, std::min(r, mod - r));
      }
  return best;
}

bool is_regular(const RestrictedWeight& w) {
  const Params& P = w.params;
  for (int j = 0; j < P.f; ++j)
    for (int i = 0; i + 1 < P.n; ++i)
      if (w.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] -
              w.lambda[static_cast<size_t>(j)][static_cast<size_t>(i + 1)] >
          P.p - 2)
        return false;
  return true;
}

InertialType covering_type(const RestrictedWeight& w) {
  const Params& P = w.params;
  const Int e = P.e(P.f);
  std::vector<DigitVector> rows;
  rows.reserve(static_cast<size_t>(P.n));
  for (int s = 0; s < P.n; ++s) {
    Int acc = 0;
    for (int j = 0; j < P.f; ++j) {
      const int row = ((P.f - j) % P.f + P.f) % P.f;
      acc = floor_mod(acc + mul_mod(w.lambda[static_cast<size_t>(row)][static_cast<size_t>(s)],
                                    pow_mod(P.p, j, e), e),
                      e);
    }
    rows.push_back(digits_of(acc, P.f, P.p));
  }
  return InertialType(P, std::move(rows));
}

WeightEnumeration::WeightEnumeration(const Params& params) : params_(params) {
  diff_count_ = checked_pow(params.p, params.f * (params.n - 1));
  size_ = checked_mul(e_value(params.f, params.p), diff_count_);
}

RestrictedWeight WeightEnumeration::at(Int index) const {
  if (index < 0 || index >= size_)
    throw std::out_of_range("WeightEnumeration: index out of range");
  const Params& P = params_;
  const Int det = index / diff_count_;
  Int rem = index % diff_count_;
  const DigitVector det_digits = digits_of(det, P.f, P.p);
  std::vector<std::vector<Int>> lambda(static_cast<size_t>(P.f),
                                       std::vector<Int>(static_cast<size_t>(P.n)));
  for (int j = 0; j < P.f; ++j)
    lambda[static_cast<size_t>(j)][static_cast<size_t>(P.n - 1)] =
        det_digits.digits[static_cast<size_t>(P.f - 1 - j)];
  // diffs decoded row-major, least significant digit first, matching key_at
  std::vector<Int> diffs(static_cast<size_t>(P.f) * static_cast<size_t>(P.n - 1));
  for (size_t t = 0; t < diffs.size(); ++t) {
    diffs[t] = rem % P.p;
    rem /= P.p;
  }
  for (int j = 0; j < P.f; ++j)
    for (int i = P.n - 2; i >= 0; --i)
      lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          lambda[static_cast<size_t>(j)][static_cast<size_t>(i + 1)] +
          diffs[static_cast<size_t>(j) * static_cast<size_t>(P.n - 1) + static_cast<size_t>(i)];
  return RestrictedWeight(P, std::move(lambda));
}

WeightClassKey WeightEnumeration::key_at(Int index) const {
  if (index < 0 || index >= size_)
    throw std::out_of_range("WeightEnumeration: index out of range");
  const Params& P = params_;
  WeightClassKey key;
  key.det_residue = index / diff_count_;
  Int rem = index % diff_count_;
  key.diffs.resize(static_cast<size_t>(P.f) * static_cast<size_t>(P.n - 1));
  for (size_t t = 0; t < key.diffs.size(); ++t) {
    key.diffs[t] = rem % P.p;
    rem /= P.p;
  }
  return key;
}

std::vector<RestrictedWeight> enumerate_weights(const Params& params) {
  WeightEnumeration en(params);
  std::vector<RestrictedWeight> out;
  out.reserve(static_cast<size_t>(en.size()));
  for (Int i = 0; i < en.size(); ++i) out.push_back(en.at(i));
  return out;
}

}  // namespace welim
