#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dca {

// Subset of the ground set {1..n} as a characteristic bitmask: bit j-1 set
// iff element j is a member. Element lists at API boundaries are sorted and
// 1-based.
using Subset = std::uint32_t;

constexpr Subset bit_of(int element) noexcept { return Subset{1} << (element - 1); }
constexpr bool contains(Subset s, int element) noexcept { return (s & bit_of(element)) != 0; }
constexpr int cardinality(Subset s) noexcept { return std::popcount(s); }
constexpr bool is_subset_of(Subset a, Subset b) noexcept { return (a & ~b) == 0; }
constexpr Subset full_set(int n) noexcept { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
// Smallest element, 1-based. Precondition: s != 0.
constexpr int min_element(Subset s) noexcept { return std::countr_zero(s) + 1; }

// Strict order used for tie-breaking among subsets: smaller cardinality
// first, then lexicographic order of the sorted element lists.
constexpr bool size_lex_less(Subset a, Subset b) noexcept {
  const int ca = cardinality(a);
  const int cb = cardinality(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  const Subset diff = a ^ b;
  return (a & diff & (~diff + 1)) != 0;
}

std::vector<int> to_elements(Subset s);
// Throws PreconditionViolation for out-of-range or duplicate elements.
Subset from_elements(std::span<const int> elements, int n);
std::string format_subset(Subset s);

// Calls fn(sub) for every sub ⊆ mask, starting at 0 and ending at mask.
template <class Fn>
void for_each_submask(Subset mask, Fn&& fn) {
  Subset sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

// Scatters the low bits of `local` onto the positions of `support`:
// bit t of local maps to the t-th smallest element of support.
constexpr Subset scatter_bits(Subset local, Subset support) noexcept {
  Subset out = 0;
  while (local != 0 && support != 0) {
    const Subset low = support & (~support + 1);
    if (local & 1u) out |= low;
    local >>= 1;
    support &= support - 1;
  }
  return out;
}

}  // namespace dca
