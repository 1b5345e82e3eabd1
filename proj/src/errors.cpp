#include "jetode/errors.hpp"

namespace jetode {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnsupportedVariable: return "UnsupportedVariable";
    case ErrorKind::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorKind::NonRational: return "NonRational";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DegenerateI3: return "DegenerateI3";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ZeroL: return "ZeroL";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAffineInQ: return "NotAffineInQ";
    case ErrorKind::IntegrationUnsupported: return "IntegrationUnsupported";
    case ErrorKind::RhsNotBase: return "RhsNotBase";
    case ErrorKind::ManualCompletionNeeded: return "ManualCompletionNeeded";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::NoGaugeWorks: return "NoGaugeWorks";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NonMonotoneImage: return "NonMonotoneImage";
  }
  return "Error";
}

}  // namespace jetode
