#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace dca {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

// Integer and real values were combined, or two objects of different modes met.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Ground set larger than SetFn::kMaxGround.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyDomain : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// Family parameters that do not describe a valid instance (bad matroid,
// non-laminar family, non-concave table, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A search that a theorem guarantees to succeed came back empty. Carries the
// offending configuration so callers can turn it into a report.
class Falsification : public Error {
 public:
  Falsification(const std::string& what, nlohmann::json payload)
      : Error(what), payload_(std::move(payload)) {}

  const nlohmann::json& payload() const noexcept { return payload_; }

 private:
  nlohmann::json payload_;
};

}  // namespace dca
