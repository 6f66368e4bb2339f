#include "dca/ext_value.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dca/errors.hpp"

namespace dca {

const char* to_string(Mode mode) noexcept { return mode == Mode::Int ? "int" : "real"; }

Mode mode_from_string(const std::string& text) {
  if (text == "int") return Mode::Int;
  if (text == "real") return Mode::Real;
  throw ParseError("unknown mode '" + text + "' (expected int|real)");
}

ExtValue ExtValue::real(double v) {
  if (!std::isfinite(v)) throw PreconditionViolation("real ExtValue must be finite");
  ExtValue e;
  e.kind_ = Kind::Real;
  e.real_ = v;
  return e;
}

ExtValue ExtValue::zero(Mode mode) noexcept {
  if (mode == Mode::Int) return integer(0);
  ExtValue e;
  e.kind_ = Kind::Real;
  e.real_ = 0.0;
  return e;
}

Mode ExtValue::mode() const {
  switch (kind_) {
    case Kind::Int:
      return Mode::Int;
    case Kind::Real:
      return Mode::Real;
    case Kind::NegInf:
      break;
  }
  throw PreconditionViolation("NEG_INF has no mode");
}

bool ExtValue::has_mode(Mode mode) const noexcept {
  return (kind_ == Kind::Int && mode == Mode::Int) || (kind_ == Kind::Real && mode == Mode::Real);
}

std::int64_t ExtValue::as_int() const {
  if (kind_ != Kind::Int) throw PreconditionViolation("ExtValue is not a finite integer");
  return int_;
}

double ExtValue::as_real() const {
  if (kind_ != Kind::Real) throw PreconditionViolation("ExtValue is not a finite real");
  return real_;
}

double ExtValue::to_double() const {
  switch (kind_) {
    case Kind::Int:
      return static_cast<double>(int_);
    case Kind::Real:
      return real_;
    case Kind::NegInf:
      break;
  }
  throw PreconditionViolation("NEG_INF has no finite payload");
}

std::strong_ordering compare(const ExtValue& a, const ExtValue& b) {
  using K = ExtValue::Kind;
  if (a.kind_ == K::NegInf || b.kind_ == K::NegInf) {
    if (a.kind_ == b.kind_) return std::strong_ordering::equal;
    return a.kind_ == K::NegInf ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.kind_ != b.kind_) throw ModeMismatch("comparing int and real values");
  if (a.kind_ == K::Int) return a.int_ <=> b.int_;
  // Finite doubles, so the partial order is total here.
  if (a.real_ < b.real_) return std::strong_ordering::less;
  if (a.real_ > b.real_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const ExtValue& a, const ExtValue& b) noexcept {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case ExtValue::Kind::NegInf:
      return true;
    case ExtValue::Kind::Int:
      return a.int_ == b.int_;
    case ExtValue::Kind::Real:
      return a.real_ == b.real_;
  }
  return false;
}

std::string ExtValue::str() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-inf";
    case Kind::Int:
      return std::to_string(int_);
    case Kind::Real: {
      std::ostringstream os;
      os.precision(17);
      os << real_;
      return os.str();
    }
  }
  return {};
}

ExtValue ext_add(const ExtValue& a, const ExtValue& b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtValue::neg_inf();
  if (a.kind() != b.kind()) throw ModeMismatch("adding int and real values");
  if (a.kind() == ExtValue::Kind::Int) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a.as_int(), b.as_int(), &out)) {
      throw ArithmeticOverflow("integer overflow in " + a.str() + " + " + b.str());
    }
    return ExtValue::integer(out);
  }
  return ExtValue::real(a.as_real() + b.as_real());
}

ExtValue ext_negate(const ExtValue& a) {
  if (a.is_neg_inf()) throw PreconditionViolation("cannot negate NEG_INF");
  if (a.kind() == ExtValue::Kind::Int) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(std::int64_t{0}, a.as_int(), &out)) {
      throw ArithmeticOverflow("integer overflow negating " + a.str());
    }
    return ExtValue::integer(out);
  }
  return ExtValue::real(-a.as_real());
}

ExtValue ext_sub(const ExtValue& a, const ExtValue& b) {
  if (b.is_neg_inf()) throw PreconditionViolation("cannot subtract NEG_INF");
  if (a.is_neg_inf()) return a;
  if (a.kind() != b.kind()) throw ModeMismatch("subtracting int and real values");
  if (a.kind() == ExtValue::Kind::Int) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a.as_int(), b.as_int(), &out)) {
      throw ArithmeticOverflow("integer overflow in " + a.str() + " - " + b.str());
    }
    return ExtValue::integer(out);
  }
  return ExtValue::real(a.as_real() - b.as_real());
}

ExtValue max_over(std::span<const ExtValue> values) {
  ExtValue best = ExtValue::neg_inf();
  for (const auto& v : values) {
    if (v > best) best = v;
  }
  return best;
}

namespace {

double slack_scale(double a, double b) { return std::max({1.0, std::fabs(a), std::fabs(b)}); }

}  // namespace

bool ext_leq(const ExtValue& a, const ExtValue& b, double tol) {
  if (a.is_neg_inf()) return true;
  if (b.is_neg_inf()) return false;
  if (a.kind() != b.kind()) throw ModeMismatch("comparing int and real values");
  if (a.kind() == ExtValue::Kind::Int) return a.as_int() <= b.as_int();
  const double x = a.as_real();
  const double y = b.as_real();
  return x <= y + tol * slack_scale(x, y);
}

bool ext_equal(const ExtValue& a, const ExtValue& b, double tol) {
  return ext_leq(a, b, tol) && ext_leq(b, a, tol);
}

}  // namespace dca
