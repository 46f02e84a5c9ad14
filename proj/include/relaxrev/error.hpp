#ifndef RELAXREV_ERROR_HPP_
#define RELAXREV_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaxrev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text did not match the KB grammar. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

// A constructor is used that the declared dialect does not allow.
class DialectViolation : public Error {
 public:
  using Error::Error;
};

// Input concept does not have the shape an operation needs
// (e.g. Bot inside a description tree, quantifier below a conjunction).
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

// Tableau node budget or enumeration cap exhausted.
class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

class NotEnoughExceptions : public Error {
 public:
  using Error::Error;
};

// Revision found no consistent candidate within max_total_degree.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The new belief fails the conflict predicate on its own.
class ConflictingInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace relaxrev

#endif  // RELAXREV_ERROR_HPP_
