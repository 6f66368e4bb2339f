#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace dca {

enum class Mode : std::uint8_t { Int, Real };

const char* to_string(Mode mode) noexcept;
Mode mode_from_string(const std::string& text);

// Default relative tolerance for real-mode comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

// An element of Z ∪ {-inf} or R ∪ {-inf}. NEG_INF is its own tag, never a
// reserved number, and carries no mode.
class ExtValue {
 public:
  enum class Kind : std::uint8_t { NegInf, Int, Real };

  constexpr ExtValue() noexcept : kind_(Kind::NegInf), int_(0) {}

  static constexpr ExtValue neg_inf() noexcept { return ExtValue(); }
  static constexpr ExtValue integer(std::int64_t v) noexcept {
    ExtValue e;
    e.kind_ = Kind::Int;
    e.int_ = v;
    return e;
  }
  // Rejects NaN and infinities.
  static ExtValue real(double v);
  // Zero of the given mode.
  static ExtValue zero(Mode mode) noexcept;

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  constexpr bool is_finite() const noexcept { return kind_ != Kind::NegInf; }
  // Precondition: finite.
  Mode mode() const;
  bool has_mode(Mode mode) const noexcept;

  // Checked accessors; throw PreconditionViolation on the wrong kind.
  std::int64_t as_int() const;
  double as_real() const;
  // Finite payload widened to double (integers included).
  double to_double() const;

  // Exact total order: NEG_INF below everything, finite values compared
  // numerically. Mixed int/real finite values throw ModeMismatch.
  friend std::strong_ordering compare(const ExtValue& a, const ExtValue& b);
  friend bool operator==(const ExtValue& a, const ExtValue& b) noexcept;
  friend bool operator<(const ExtValue& a, const ExtValue& b) { return compare(a, b) < 0; }
  friend bool operator>(const ExtValue& a, const ExtValue& b) { return compare(a, b) > 0; }
  friend bool operator<=(const ExtValue& a, const ExtValue& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const ExtValue& a, const ExtValue& b) { return compare(a, b) >= 0; }

  std::string str() const;

 private:
  Kind kind_;
  union {
    std::int64_t int_;
    double real_;
  };
};

// a + b with NEG_INF absorbing. Integer overflow throws ArithmeticOverflow.
ExtValue ext_add(const ExtValue& a, const ExtValue& b);
// a - b for finite b.
ExtValue ext_sub(const ExtValue& a, const ExtValue& b);
// -a for finite a.
ExtValue ext_negate(const ExtValue& a);

// Maximum under the ExtValue order; the empty maximum is NEG_INF.
ExtValue max_over(std::span<const ExtValue> values);

// a <= b. Exact for integers; for reals, a <= b + tol * max(1, |a|, |b|).
bool ext_leq(const ExtValue& a, const ExtValue& b, double tol = kDefaultTolerance);
// a == b under the same tolerance rule.
bool ext_equal(const ExtValue& a, const ExtValue& b, double tol = kDefaultTolerance);

}  // namespace dca
