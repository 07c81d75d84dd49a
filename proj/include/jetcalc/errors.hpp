#ifndef JETCALC_ERRORS_HPP
#define JETCALC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetcalc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ZeroInversion : public Error {
 public:
  ZeroInversion() : Error("division by zero field element") {}
};

/// Raised when an extension residue shares a factor with an uncertified
/// minimal polynomial; signals that the modulus was in fact reducible.
class NonInvertible : public Error {
 public:
  explicit NonInvertible(const std::string& what) : Error(what) {}
};

class DescriptorMismatch : public Error {
 public:
  explicit DescriptorMismatch(const std::string& what) : Error(what) {}
};

class WrongCharacteristic : public Error {
 public:
  explicit WrongCharacteristic(const std::string& what) : Error(what) {}
};

class ContextMismatch : public Error {
 public:
  explicit ContextMismatch(const std::string& what) : Error(what) {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable: " + name) {}
};

class MissingAssignment : public Error {
 public:
  explicit MissingAssignment(const std::string& name)
      : Error("no assignment for variable: " + name) {}
};

class StepLimitExceeded : public Error {
 public:
  explicit StepLimitExceeded(std::size_t limit)
      : Error("pair reduction step limit exceeded (" + std::to_string(limit) +
              ")") {}
};

class UnitIdeal : public Error {
 public:
  UnitIdeal() : Error("ideal is the unit ideal") {}
};

class CharacteristicDividesFactorial : public Error {
 public:
  explicit CharacteristicDividesFactorial(const std::string& what)
      : Error(what) {}
};

class PointNotOnVariety : public Error {
 public:
  explicit PointNotOnVariety(const std::string& what) : Error(what) {}
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

class LevelOutOfRange : public Error {
 public:
  explicit LevelOutOfRange(const std::string& what) : Error(what) {}
};

class SingularCenter : public Error {
 public:
  explicit SingularCenter(const std::string& what) : Error(what) {}
};

class ResidualNonzero : public Error {
 public:
  explicit ResidualNonzero(const std::string& what) : Error(what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

class BadCodim : public Error {
 public:
  explicit BadCodim(const std::string& what) : Error(what) {}
};

class UnknownScenario : public Error {
 public:
  explicit UnknownScenario(const std::string& name)
      : Error("unknown scenario: " + name) {}
};

/// Parse failure with 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace jetcalc

#endif  // JETCALC_ERRORS_HPP
