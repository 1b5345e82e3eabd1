#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jetode {

enum class ErrorKind {
  SyntaxError,
  UnsupportedVariable,
  NonIntegerExponent,
  NonRational,
  DivisionByZero,
  DegenerateI3,
  SingularPoint,
  DomainError,
  ZeroL,
  NotClosed,
  NotAffineInQ,
  IntegrationUnsupported,
  RhsNotBase,
  ManualCompletionNeeded,
  DegenerateJacobian,
  NoGaugeWorks,
  BlowUp,
  NonMonotoneImage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

/// Parser failure carrying the 0-based byte offset into the source text.
class ParseError : public Error {
public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// The general first-order PDE for psi that the closed-form cases cannot
/// integrate; the equation is printed in the input grammar.
class ManualCompletionNeeded : public Error {
public:
  explicit ManualCompletionNeeded(std::string pde)
      : Error(ErrorKind::ManualCompletionNeeded, "solve for psi: " + pde), pde_(std::move(pde)) {}

  const std::string& pde() const { return pde_; }

private:
  std::string pde_;
};

class NoGaugeWorks : public Error {
public:
  explicit NoGaugeWorks(std::vector<std::string> residuals)
      : Error(ErrorKind::NoGaugeWorks, "no candidate in the gauge orbit has zero residual"),
        residuals_(std::move(residuals)) {}

  const std::vector<std::string>& residuals() const { return residuals_; }

private:
  std::vector<std::string> residuals_;
};

}  // namespace jetode
