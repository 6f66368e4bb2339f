#include "dca/price_vector.hpp"

#include <algorithm>

#include "dca/errors.hpp"

namespace dca {

namespace {

void check_compatible(const PriceVector& a, const PriceVector& b) {
  if (a.n() != b.n()) throw DimensionMismatch("price vectors of different length");
  if (a.mode() != b.mode()) throw ModeMismatch("price vectors of different mode");
}

}  // namespace

PriceVector::PriceVector(Mode mode, std::vector<ExtValue> entries)
    : mode_(mode), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!e.has_mode(mode_)) {
      throw ModeMismatch("price entry " + e.str() + " is not a finite " + to_string(mode_) + " value");
    }
  }
}

PriceVector PriceVector::zeros(int n, Mode mode) {
  return PriceVector(mode, std::vector<ExtValue>(static_cast<std::size_t>(n), ExtValue::zero(mode)));
}

PriceVector PriceVector::unit(int n, int k, Mode mode) {
  if (k < 1 || k > n) throw PreconditionViolation("unit vector index out of range");
  std::vector<ExtValue> entries(static_cast<std::size_t>(n), ExtValue::zero(mode));
  entries[static_cast<std::size_t>(k - 1)] =
      mode == Mode::Int ? ExtValue::integer(1) : ExtValue::real(1.0);
  return PriceVector(mode, std::move(entries));
}

PriceVector PriceVector::from_ints(std::span<const std::int64_t> entries) {
  std::vector<ExtValue> out;
  out.reserve(entries.size());
  for (auto v : entries) out.push_back(ExtValue::integer(v));
  return PriceVector(Mode::Int, std::move(out));
}

PriceVector PriceVector::from_reals(std::span<const double> entries) {
  std::vector<ExtValue> out;
  out.reserve(entries.size());
  for (auto v : entries) out.push_back(ExtValue::real(v));
  return PriceVector(Mode::Real, std::move(out));
}

ExtValue PriceVector::eval(Subset z) const {
  if (z >> entries_.size() != 0) throw DimensionMismatch("subset outside the price vector's ground set");
  ExtValue sum = ExtValue::zero(mode_);
  while (z != 0) {
    sum = ext_add(sum, entries_[static_cast<std::size_t>(std::countr_zero(z))]);
    z &= z - 1;
  }
  return sum;
}

PriceVector PriceVector::operator-() const {
  std::vector<ExtValue> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(ext_negate(e));
  return PriceVector(mode_, std::move(out));
}

PriceVector operator+(const PriceVector& a, const PriceVector& b) {
  check_compatible(a, b);
  std::vector<ExtValue> out;
  out.reserve(a.entries_.size());
  for (std::size_t j = 0; j < a.entries_.size(); ++j) out.push_back(ext_add(a.entries_[j], b.entries_[j]));
  return PriceVector(a.mode_, std::move(out));
}

PriceVector join(const PriceVector& a, const PriceVector& b) {
  check_compatible(a, b);
  std::vector<ExtValue> out;
  out.reserve(a.entries_.size());
  for (std::size_t j = 0; j < a.entries_.size(); ++j) out.push_back(std::max(a.entries_[j], b.entries_[j]));
  return PriceVector(a.mode_, std::move(out));
}

PriceVector meet(const PriceVector& a, const PriceVector& b) {
  check_compatible(a, b);
  std::vector<ExtValue> out;
  out.reserve(a.entries_.size());
  for (std::size_t j = 0; j < a.entries_.size(); ++j) out.push_back(std::min(a.entries_[j], b.entries_[j]));
  return PriceVector(a.mode_, std::move(out));
}

bool dominates(const PriceVector& a, const PriceVector& b) {
  check_compatible(a, b);
  for (std::size_t j = 0; j < a.entries_.size(); ++j) {
    if (a.entries_[j] < b.entries_[j]) return false;
  }
  return true;
}

std::string PriceVector::str() const {
  std::string out = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j != 0) out += ",";
    out += entries_[j].str();
  }
  return out + ")";
}

}  // namespace dca
