#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dca/ext_value.hpp"
#include "dca/subset.hpp"

namespace dca {

// A finite vector indexed by the ground set; entry j-1 prices element j.
class PriceVector {
 public:
  PriceVector(Mode mode, std::vector<ExtValue> entries);

  static PriceVector zeros(int n, Mode mode);
  // The k-th unit vector, k in 1..n.
  static PriceVector unit(int n, int k, Mode mode);
  static PriceVector from_ints(std::span<const std::int64_t> entries);
  static PriceVector from_reals(std::span<const double> entries);
  static PriceVector from_ints(std::initializer_list<std::int64_t> entries) {
    return from_ints(std::span<const std::int64_t>(entries.begin(), entries.size()));
  }

  int n() const noexcept { return static_cast<int>(entries_.size()); }
  Mode mode() const noexcept { return mode_; }
  // Entry for element j (1-based).
  const ExtValue& operator[](int element) const { return entries_.at(element - 1); }
  std::span<const ExtValue> entries() const noexcept { return entries_; }

  // p(Z) = sum of p_j over j in Z.
  ExtValue eval(Subset z) const;

  PriceVector operator-() const;
  friend PriceVector operator+(const PriceVector& a, const PriceVector& b);
  // Componentwise max / min.
  friend PriceVector join(const PriceVector& a, const PriceVector& b);
  friend PriceVector meet(const PriceVector& a, const PriceVector& b);
  // Componentwise a >= b.
  friend bool dominates(const PriceVector& a, const PriceVector& b);
  friend bool operator==(const PriceVector&, const PriceVector&) = default;

  std::string str() const;

 private:
  Mode mode_;
  std::vector<ExtValue> entries_;
};

}  // namespace dca
