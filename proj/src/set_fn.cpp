#include "dca/set_fn.hpp"

#include <algorithm>
#include <limits>

#include "dca/errors.hpp"
#include "dca/price_vector.hpp"

namespace dca {

void SetFn::check_ground(int n) {
  if (n < 0) throw PreconditionViolation("negative ground-set size");
  if (n > kMaxGround) {
    throw CapExceeded("ground-set size " + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(kMaxGround));
  }
}

SetFn::SetFn(int n, Mode mode, std::vector<ExtValue> values) : n_(n), mode_(mode), values_(std::move(values)) {
  check_ground(n);
  if (values_.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("set function table has " + std::to_string(values_.size()) + " entries, expected " +
                            std::to_string(std::size_t{1} << n));
  }
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (values_[s].is_finite() && !values_[s].has_mode(mode_)) {
      throw ModeMismatch("entry " + std::to_string(s) + " is not a " + to_string(mode_) + " value");
    }
  }
}

SetFn SetFn::constant(int n, ExtValue value, Mode mode) {
  check_ground(n);
  return SetFn(n, mode, std::vector<ExtValue>(std::size_t{1} << n, value));
}

SetFn SetFn::all_neg_inf(int n, Mode mode) { return constant(n, ExtValue::neg_inf(), mode); }

const ExtValue& SetFn::at(Subset s) const {
  if (s >= values_.size()) throw PreconditionViolation("subset " + format_subset(s) + " outside ground set");
  return values_[s];
}

bool SetFn::dom_empty() const noexcept {
  return std::none_of(values_.begin(), values_.end(), [](const ExtValue& v) { return v.is_finite(); });
}

SetFn SetFn::with_value(Subset s, ExtValue v) const {
  std::vector<ExtValue> values = values_;
  if (s >= values.size()) throw PreconditionViolation("subset " + format_subset(s) + " outside ground set");
  values[s] = v;
  return SetFn(n_, mode_, std::move(values));
}

std::vector<Subset> effective_domain(const SetFn& f) {
  std::vector<Subset> dom;
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f.in_dom(static_cast<Subset>(s))) dom.push_back(static_cast<Subset>(s));
  }
  return dom;
}

SetFn tilt(const SetFn& f, const PriceVector& p) {
  if (p.n() != f.n()) throw DimensionMismatch("price vector length differs from ground-set size");
  if (p.mode() != f.mode()) throw ModeMismatch("price vector mode differs from set function mode");
  return SetFn::tabulate(f.n(), f.mode(), [&](Subset z) { return ext_sub(f(z), p.eval(z)); });
}

SetFn restrict_by_size(const SetFn& f, int k) {
  if (k < 0) throw PreconditionViolation("size bound must be nonnegative");
  return SetFn::tabulate(f.n(), f.mode(),
                         [&](Subset z) { return cardinality(z) <= k ? f(z) : ExtValue::neg_inf(); });
}

SetFn to_real(const SetFn& f) {
  return SetFn::tabulate(f.n(), Mode::Real, [&](Subset z) {
    const ExtValue& v = f(z);
    return v.is_finite() ? ExtValue::real(v.to_double()) : v;
  });
}

CardinalityRange dom_cardinality_range(const SetFn& f) {
  CardinalityRange range{std::numeric_limits<int>::max(), -1};
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (!f.in_dom(static_cast<Subset>(s))) continue;
    const int c = cardinality(static_cast<Subset>(s));
    range.min = std::min(range.min, c);
    range.max = std::max(range.max, c);
  }
  if (range.max < 0) throw EmptyDomain("effective domain is empty");
  return range;
}

ExtValue spread(const SetFn& f) {
  ExtValue lo = ExtValue::neg_inf();
  ExtValue hi = ExtValue::neg_inf();
  for (const auto& v : f.values()) {
    if (v.is_neg_inf()) continue;
    if (lo.is_neg_inf() || v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (hi.is_neg_inf()) throw EmptyDomain("effective domain is empty");
  return ext_sub(hi, lo);
}

}  // namespace dca
