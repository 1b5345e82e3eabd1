#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jetode/expression.hpp"

namespace jetode {

/// Right-hand side f of u''' = f(x, u, u', u'') as read from text.
struct OdeInput {
  std::string source;
  Expression f;
  /// Identifier spellings as written, e.g. "u'" or "p", in order of first use.
  std::vector<std::string> aliases;
};

/// Grammar (whitespace-insensitive):
///
///   expr    = term { ("+" | "-") term }
///   term    = unary { ("*" | "/") unary }
///   unary   = ("-" | "+") unary | power
///   power   = primary [ "^" unary ]        (integer-valued exponent)
///   primary = number | ident | ("cbrt" | "ln") "(" expr ")" | "(" expr ")"
///   ident   = "x" | "u" | "u'" | "u''" | "p" | "q"
///   number  = digits [ "." digits ]
///
/// Throws ParseError with kind SyntaxError, UnsupportedVariable or
/// NonIntegerExponent.
OdeInput parse(std::string_view text);

/// parse(text).f
Expression parse_expression(std::string_view text);

}  // namespace jetode
