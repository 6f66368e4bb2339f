#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dca/ext_value.hpp"
#include "dca/subset.hpp"

namespace dca {

class PriceVector;

// A total table f: 2^N -> Z ∪ {-inf} (or R ∪ {-inf}) over N = {1..n},
// indexed by subset bitmask. Immutable after construction.
class SetFn {
 public:
  static constexpr int kMaxGround = 24;

  // Validates n against the cap, the table length against 2^n, and that every
  // finite entry carries `mode`.
  SetFn(int n, Mode mode, std::vector<ExtValue> values);

  static SetFn constant(int n, ExtValue value, Mode mode);
  static SetFn all_neg_inf(int n, Mode mode);
  template <class Fn>
  static SetFn tabulate(int n, Mode mode, Fn&& fn) {
    check_ground(n);
    std::vector<ExtValue> values(std::size_t{1} << n);
    for (std::size_t s = 0; s < values.size(); ++s) values[s] = fn(static_cast<Subset>(s));
    return SetFn(n, mode, std::move(values));
  }

  int n() const noexcept { return n_; }
  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return values_.size(); }
  Subset ground() const noexcept { return full_set(n_); }

  const ExtValue& operator()(Subset s) const noexcept { return values_[s]; }
  // Bounds-checked lookup.
  const ExtValue& at(Subset s) const;
  std::span<const ExtValue> values() const noexcept { return values_; }

  bool in_dom(Subset s) const noexcept { return values_[s].is_finite(); }
  bool dom_empty() const noexcept;

  SetFn with_value(Subset s, ExtValue v) const;

  friend bool operator==(const SetFn&, const SetFn&) = default;

  static void check_ground(int n);

 private:
  int n_;
  Mode mode_;
  std::vector<ExtValue> values_;
};

// dom f in ascending bitmask order.
std::vector<Subset> effective_domain(const SetFn& f);

// Z -> f(Z) - p(Z).
SetFn tilt(const SetFn& f, const PriceVector& p);

// Z -> f(Z) + beta(Z; k): entries of cardinality > k become NEG_INF.
SetFn restrict_by_size(const SetFn& f, int k);

// Same table with every finite entry widened to a real.
SetFn to_real(const SetFn& f);

// Smallest and largest |X| over dom f. Throws EmptyDomain.
struct CardinalityRange {
  int min;
  int max;
};
CardinalityRange dom_cardinality_range(const SetFn& f);

// max - min over the finite entries; zero when dom f has one element.
ExtValue spread(const SetFn& f);

}  // namespace dca
