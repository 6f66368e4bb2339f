#include "dca/subset.hpp"

#include "dca/errors.hpp"

namespace dca {

std::vector<int> to_elements(Subset s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(s)));
  while (s != 0) {
    out.push_back(min_element(s));
    s &= s - 1;
  }
  return out;
}

Subset from_elements(std::span<const int> elements, int n) {
  Subset s = 0;
  for (int e : elements) {
    if (e < 1 || e > n) {
      throw PreconditionViolation("element " + std::to_string(e) + " outside ground set {1.." + std::to_string(n) + "}");
    }
    if (contains(s, e)) throw PreconditionViolation("duplicate element " + std::to_string(e));
    s |= bit_of(e);
  }
  return s;
}

std::string format_subset(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : to_elements(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

}  // namespace dca
