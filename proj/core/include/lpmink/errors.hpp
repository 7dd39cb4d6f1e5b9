#pragma once

#include <stdexcept>
#include <string>

namespace lpmink {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A quantity that must stay positive (support function, weight f) is not.
struct NonPositiveInput : Error {
  explicit NonPositiveInput(const std::string& msg) : Error(msg) {}
};

struct QuadratureFailure : Error {
  explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

// Evaluation requested inside the exclusion window around a pole of xi.
struct PoleEvaluation : Error {
  explicit PoleEvaluation(const std::string& msg) : Error(msg) {}
};

// H(m) does not match pi/kappa closely enough to close up a periodic orbit.
struct CompatibilityError : Error {
  explicit CompatibilityError(const std::string& msg) : Error(msg) {}
};

struct GluingFailure : Error {
  explicit GluingFailure(const std::string& msg) : Error(msg) {}
};

// Violation of a parameter-free maximum-principle bound.
struct BoundViolation : Error {
  explicit BoundViolation(const std::string& msg) : Error(msg) {}
};

// Obstruction kernel changes sign, so the sign argument is inapplicable.
struct InconclusiveSign : Error {
  explicit InconclusiveSign(const std::string& msg) : Error(msg) {}
};

struct JsonError : Error {
  explicit JsonError(const std::string& msg) : Error(msg) {}
};

}  // namespace lpmink
