#pragma once

#include <stdexcept>
#include <string>

namespace qh {

// Base of every exception thrown by the library. The CLI maps the concrete
// type onto its exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad field order, mismatched dimensions, out-of-range index.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the hypotheses of a construction (alpha/beta conditions,
// q = 2, r < 3, ...). `clause` names the failed condition.
class ParameterError : public Error {
 public:
  ParameterError(std::string clause, const std::string& what)
      : Error(what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

// An enumeration would exceed the configured work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An operation that is well defined only in odd characteristic was called on
// a characteristic-2 field.
class CharacteristicError : public Error {
 public:
  using Error::Error;
};

// A result contradicted a precondition of a later step, e.g. an access
// structure requested for a non-minimal primal code.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qh
