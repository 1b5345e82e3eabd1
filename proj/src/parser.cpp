#include "jetode/parser.hpp"

#include <algorithm>
#include <cctype>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.pos = pos_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        std::size_t frac = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == frac || (frac == start + 1)) {
          throw ParseError(ErrorKind::SyntaxError, "malformed number", start);
        }
      }
      t.kind = Tok::Number;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      // Primes are part of the identifier: u' and u'' are single tokens.
      while (pos_ < src_.size() && src_[pos_] == '\'') ++pos_;
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    ++pos_;
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default:
        throw ParseError(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'",
                         t.pos);
    }
    t.text = std::string(1, c);
    return t;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

Rational parse_number(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
  Rational r(mpz_class(digits), den);
  r.canonicalize();
  return r;
}

class Parser {
public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  OdeInput run(std::string_view src) {
    OdeInput input;
    input.source = std::string(src);
    input.f = expr();
    if (tok_.kind != Tok::End) {
      throw ParseError(ErrorKind::SyntaxError, "unexpected '" + tok_.text + "'", tok_.pos);
    }
    input.aliases = aliases_;
    return input;
  }

private:
  void advance() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) {
      std::string seen = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
      throw ParseError(ErrorKind::SyntaxError, std::string("expected ") + what + ", found " + seen,
                       tok_.pos);
    }
    advance();
  }

  Expression expr() {
    Expression lhs = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      bool minus = tok_.kind == Tok::Minus;
      advance();
      Expression rhs = term();
      lhs = minus ? lhs - rhs : lhs + rhs;
    }
    return lhs;
  }

  Expression term() {
    Expression lhs = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      bool divide = tok_.kind == Tok::Slash;
      std::size_t pos = tok_.pos;
      advance();
      Expression rhs = unary();
      if (divide) {
        if (rhs.is_constant(0)) throw ParseError(ErrorKind::SyntaxError, "division by zero", pos);
        lhs = lhs / rhs;
      } else {
        lhs = lhs * rhs;
      }
    }
    return lhs;
  }

  Expression unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (tok_.kind != Tok::Caret) return base;
    advance();
    std::size_t pos = tok_.pos;
    Expression exponent = unary();
    if (!exponent.is_constant() || exponent.value().get_den() != 1) {
      throw ParseError(ErrorKind::NonIntegerExponent,
                       "exponent " + to_string(exponent) + " is not an integer", pos);
    }
    const mpz_class& n = exponent.value().get_num();
    if (!n.fits_sint_p() || abs(n) > 100000) {
      throw ParseError(ErrorKind::NonIntegerExponent, "exponent out of range", pos);
    }
    if (base.is_constant(0) && sgn(n) < 0) {
      throw ParseError(ErrorKind::SyntaxError, "negative power of zero", pos);
    }
    return pow(base, static_cast<int>(n.get_si()));
  }

  Expression primary() {
    Token t = tok_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        return Expression(parse_number(t.text));
      case Tok::LParen: {
        advance();
        Expression inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        advance();
        if (t.text == "cbrt" || t.text == "ln") {
          expect(Tok::LParen, "'(' after function name");
          Expression arg = expr();
          expect(Tok::RParen, "')'");
          return t.text == "cbrt" ? Expression::cbrt(arg) : Expression::ln(arg);
        }
        return Expression::variable(identifier(t));
      }
      case Tok::End:
        throw ParseError(ErrorKind::SyntaxError, "unexpected end of input", t.pos);
      default:
        throw ParseError(ErrorKind::SyntaxError, "unexpected '" + t.text + "'", t.pos);
    }
  }

  Var identifier(const Token& t) {
    Var v;
    if (t.text == "x") {
      v = Var::X;
    } else if (t.text == "u") {
      v = Var::U;
    } else if (t.text == "u'" || t.text == "p") {
      v = Var::P;
    } else if (t.text == "u''" || t.text == "q") {
      v = Var::Q;
    } else if (t.text.rfind("u'''", 0) == 0) {
      throw ParseError(ErrorKind::UnsupportedVariable,
                       "'" + t.text + "' is outside the second-order jet (x, u, u', u'')", t.pos);
    } else {
      throw ParseError(ErrorKind::UnsupportedVariable, "unknown identifier '" + t.text + "'",
                       t.pos);
    }
    if (std::find(aliases_.begin(), aliases_.end(), t.text) == aliases_.end()) {
      aliases_.push_back(t.text);
    }
    return v;
  }

  Lexer lexer_;
  Token tok_;
  std::vector<std::string> aliases_;
};

}  // namespace

OdeInput parse(std::string_view text) {
  Parser parser(text);
  return parser.run(text);
}

Expression parse_expression(std::string_view text) { return parse(text).f; }

}  // namespace jetode
