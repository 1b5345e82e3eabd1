#include "jetode/expression.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "jetode/errors.hpp"

namespace jetode {

const char* var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::U: return "u";
    case Var::P: return "u'";
    case Var::Q: return "u''";
  }
  return "?";
}

struct Expression::Node {
  Kind kind = Kind::Constant;
  Rational value;
  Var var = Var::X;
  int exponent = 0;
  std::vector<Expression> args;
  bool formal = false;
  unsigned mask = 0;
  std::size_t count = 1;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> finish(std::shared_ptr<NodeT> n) {
  for (const auto& a : n->args) {
    n->formal = n->formal || a.has_formal();
    for (Var v : kJetCoordinates) {
      if (a.depends_on(v)) n->mask |= 1u << slot(v);
    }
    n->count += a.node_count();
  }
  if (n->kind == Expression::Kind::Cbrt || n->kind == Expression::Kind::Ln) n->formal = true;
  return n;
}

}  // namespace

Expression::Expression() : Expression(Rational(0)) {}

Expression::Expression(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  n->value.canonicalize();
  node_ = std::move(n);
}

Expression Expression::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  n->mask = 1u << slot(v);
  return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::sum(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  Rational constant(0);
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& s : t.args()) {
        if (s.is_constant()) {
          constant += s.value();
        } else {
          flat.push_back(s);
        }
      }
    } else if (t.is_constant()) {
      constant += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (sgn(constant) != 0) flat.emplace_back(constant);
  if (flat.empty()) return Expression();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->args = std::move(flat);
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression Expression::product(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  Rational constant(1);
  auto take = [&](const Expression& f) {
    if (f.is_constant()) {
      constant *= f.value();
    } else {
      flat.push_back(f);
    }
  };
  for (const auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& g : f.args()) take(g);
    } else {
      take(f);
    }
  }
  if (sgn(constant) == 0) return Expression();
  if (flat.empty()) return Expression(constant);
  if (constant != 1) flat.insert(flat.begin(), Expression(constant));
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->args = std::move(flat);
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression Expression::quotient(const Expression& num, const Expression& den) {
  if (den.is_constant()) {
    if (sgn(den.value()) == 0) throw Error(ErrorKind::DivisionByZero, "division by constant zero");
    if (num.is_constant()) return Expression(Rational(num.value() / den.value()));
    if (den.value() == 1) return num;
    return product({Expression(Rational(1 / den.value())), num});
  }
  if (num.is_constant(0)) return Expression();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quotient;
  n->args = {num, den};
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression Expression::power(const Expression& base, int exponent) {
  if (exponent == 0) return Expression(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const Rational& b = base.value();
    if (sgn(b) == 0) {
      if (exponent < 0) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
      return Expression();
    }
    mpz_class num;
    mpz_class den;
    auto e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return Expression(exponent < 0 ? Rational(1 / r) : r);
  }
  if (base.kind() == Kind::Power) return power(base.args().front(), base.exponent() * exponent);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->args = {base};
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression Expression::cbrt(const Expression& arg) {
  if (arg.is_constant()) {
    if (auto r = rational_cbrt(arg.value())) return Expression(*r);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cbrt;
  n->args = {arg};
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression Expression::ln(const Expression& arg) {
  if (arg.is_constant(1)) return Expression();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ln;
  n->args = {arg};
  return Expression(std::shared_ptr<const Node>(finish(std::move(n))));
}

Expression::Kind Expression::kind() const { return node_->kind; }
const Rational& Expression::value() const { return node_->value; }
Var Expression::var() const { return node_->var; }
int Expression::exponent() const { return node_->exponent; }
const std::vector<Expression>& Expression::args() const { return node_->args; }
bool Expression::is_constant(long c) const { return is_constant() && node_->value == c; }
bool Expression::has_formal() const { return node_->formal; }
bool Expression::depends_on(Var v) const { return (node_->mask >> slot(v)) & 1u; }
std::size_t Expression::node_count() const { return node_->count; }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.mask != y.mask || x.count != y.count) return false;
  switch (x.kind) {
    case Expression::Kind::Constant: return x.value == y.value;
    case Expression::Kind::Variable: return x.var == y.var;
    case Expression::Kind::Power:
      if (x.exponent != y.exponent) return false;
      break;
    default: break;
  }
  return x.args == y.args;
}

Expression operator+(const Expression& a, const Expression& b) { return Expression::sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) { return Expression::sum({a, -b}); }
Expression operator-(const Expression& a) { return Expression::product({Expression(-1), a}); }
Expression operator*(const Expression& a, const Expression& b) {
  return Expression::product({a, b});
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression::quotient(a, b);
}
Expression pow(const Expression& base, int exponent) { return Expression::power(base, exponent); }

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

using Memo = std::unordered_map<const void*, RationalForm>;

const void* identity(const Expression& e) { return e.node_id(); }

RationalForm normalize_impl(const Expression& e, Memo& memo) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::Constant: return RationalForm(e.value());
    case K::Variable: return RationalForm::variable(slot(e.var()));
    case K::Cbrt:
    case K::Ln:
      throw Error(ErrorKind::NonRational, "expression contains " + to_string(e));
    default: break;
  }
  if (auto it = memo.find(identity(e)); it != memo.end()) return it->second;
  RationalForm r;
  switch (e.kind()) {
    case K::Sum:
      for (const auto& t : e.args()) r += normalize_impl(t, memo);
      break;
    case K::Product:
      r = RationalForm(1);
      for (const auto& t : e.args()) r *= normalize_impl(t, memo);
      break;
    case K::Quotient: {
      RationalForm den = normalize_impl(e.args()[1], memo);
      if (den.is_zero()) {
        throw Error(ErrorKind::DivisionByZero, "denominator " + to_string(e.args()[1]) +
                                                   " is identically zero");
      }
      r = normalize_impl(e.args()[0], memo) / den;
      break;
    }
    case K::Power: {
      RationalForm base = normalize_impl(e.args()[0], memo);
      if (base.is_zero() && e.exponent() < 0) {
        throw Error(ErrorKind::DivisionByZero, "negative power of an identically zero base");
      }
      r = base.pow(e.exponent());
      break;
    }
    default: break;
  }
  memo.emplace(identity(e), r);
  return r;
}

Expression embed_with(const RationalForm& r, const std::vector<Expression>& atoms) {
  auto poly_to_expr = [&](const Polynomial& p) {
    std::vector<Expression> terms;
    for (const auto& t : p.terms()) {
      std::vector<Expression> factors;
      factors.emplace_back(t.coeff);
      // Highest slot first so q, p, u, x read in that order.
      for (std::size_t i = kMaxVars; i-- > 0;) {
        unsigned e = t.monomial.exponent(i);
        if (e == 0) continue;
        Expression base = i < kJetVars ? Expression::variable(static_cast<Var>(i))
                                       : atoms.at(i - kJetVars);
        factors.push_back(Expression::power(base, static_cast<int>(e)));
      }
      terms.push_back(Expression::product(std::move(factors)));
    }
    return Expression::sum(std::move(terms));
  };
  Expression num = poly_to_expr(r.num());
  if (r.den().is_constant()) return num;
  return Expression::quotient(num, poly_to_expr(r.den()));
}

struct AtomOverflow {};

class AtomTable {
public:
  std::size_t slot_for(const Expression& atom) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i] == atom) return kJetVars + i;
    }
    if (kJetVars + atoms_.size() >= kMaxVars) throw AtomOverflow{};
    atoms_.push_back(atom);
    std::optional<Rational> c;
    if (atom.kind() == Expression::Kind::Cbrt && atom.args().front().is_constant()) {
      c = atom.args().front().value();
    }
    cbrt_constants_.push_back(c);
    return kJetVars + atoms_.size() - 1;
  }

  const std::vector<Expression>& atoms() const { return atoms_; }
  const std::vector<std::optional<Rational>>& cbrt_constants() const { return cbrt_constants_; }

private:
  std::vector<Expression> atoms_;
  std::vector<std::optional<Rational>> cbrt_constants_;
};

RationalForm atom_form(AtomTable& table, const Expression& atom) {
  return RationalForm::variable(table.slot_for(atom));
}

RationalForm generalized_impl(const Expression& e, AtomTable& table, Memo& memo) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::Constant: return RationalForm(e.value());
    case K::Variable: return RationalForm::variable(slot(e.var()));
    default: break;
  }
  if (!e.has_formal()) return normalize_impl(e, memo);
  if (auto it = memo.find(identity(e)); it != memo.end()) return it->second;
  RationalForm r;
  switch (e.kind()) {
    case K::Sum:
      for (const auto& t : e.args()) r += generalized_impl(t, table, memo);
      break;
    case K::Product:
      r = RationalForm(1);
      for (const auto& t : e.args()) r *= generalized_impl(t, table, memo);
      break;
    case K::Quotient: {
      RationalForm den = generalized_impl(e.args()[1], table, memo);
      if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator is identically zero");
      r = generalized_impl(e.args()[0], table, memo) / den;
      break;
    }
    case K::Power: {
      RationalForm base = generalized_impl(e.args()[0], table, memo);
      if (base.is_zero() && e.exponent() < 0) {
        throw Error(ErrorKind::DivisionByZero, "negative power of an identically zero base");
      }
      r = base.pow(e.exponent());
      break;
    }
    case K::Cbrt: {
      RationalForm inner = generalized_impl(e.args()[0], table, memo);
      bool jet_only = (inner.used_vars() >> kJetVars) == 0;
      std::optional<CubeRootSplit> split;
      if (jet_only) split = cube_root_split(inner);
      if (split) {
        if (auto rc = rational_cbrt(split->constant)) {
          r = RationalForm(*rc) * split->root;
        } else {
          r = atom_form(table, Expression::cbrt(Expression(split->constant))) * split->root;
        }
      } else {
        r = atom_form(table, Expression::cbrt(embed_with(inner, table.atoms())));
      }
      break;
    }
    case K::Ln: {
      RationalForm inner = generalized_impl(e.args()[0], table, memo);
      if (inner.is_constant() && inner.constant_value() == 1) {
        r = RationalForm{};
      } else {
        r = atom_form(table, Expression::ln(embed_with(inner, table.atoms())));
      }
      break;
    }
    default: break;
  }
  memo.emplace(identity(e), r);
  return r;
}

// Uses kappa^3 = c for atoms kappa = cbrt(c) with c constant.
RationalForm reduce_constant_roots(const RationalForm& r, const AtomTable& table) {
  const auto& constants = table.cbrt_constants();
  bool any = false;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (constants[i] && r.contains(kJetVars + i)) any = true;
  }
  if (!any) return r;

  Polynomial num = r.num();
  Polynomial den = r.den();
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (!constants[i]) continue;
    std::size_t s = kJetVars + i;
    // Clear a pure power of the root from the denominator.
    unsigned low = den.is_zero() ? 0 : den.degree(s);
    for (const auto& t : den.terms()) low = std::min(low, t.monomial.exponent(s));
    if (low % 3 != 0) {
      Polynomial lift = Polynomial::term(Monomial::variable(s, 3 - low % 3), Rational(1));
      num = num * lift;
      den = den * lift;
    }
    auto reduce = [&](const Polynomial& p) {
      Polynomial out;
      for (const auto& t : p.terms()) {
        unsigned e = t.monomial.exponent(s);
        Monomial m = t.monomial;
        m.set_exponent(s, e % 3);
        Rational c = t.coeff;
        for (unsigned k = 0; k < e / 3; ++k) c *= *constants[i];
        out += Polynomial::term(m, c);
      }
      return out;
    };
    num = reduce(num);
    den = reduce(den);
  }
  return RationalForm(num, den);
}

}  // namespace

RationalForm normalize(const Expression& e) {
  Memo memo;
  return normalize_impl(e, memo);
}

Expression embed(const RationalForm& r) { return embed_with(r, {}); }

Expression simplify(const Expression& e) {
  if (!e.has_formal()) return embed(normalize(e));
  try {
    AtomTable table;
    Memo memo;
    RationalForm r = reduce_constant_roots(generalized_impl(e, table, memo), table);
    return embed_with(r, table.atoms());
  } catch (const AtomOverflow&) {
    return e;
  }
}

std::optional<bool> exact_zero(const Expression& e) {
  if (!e.has_formal()) return normalize(e).is_zero();
  try {
    AtomTable table;
    Memo memo;
    RationalForm r = reduce_constant_roots(generalized_impl(e, table, memo), table);
    if (r.is_zero()) return true;
    if ((r.used_vars() >> kJetVars) == 0) return false;
    return std::nullopt;
  } catch (const AtomOverflow&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Differentiation and substitution
// ---------------------------------------------------------------------------

namespace {

using ExprMemo = std::unordered_map<const void*, Expression>;

Expression diff_impl(const Expression& e, Var v, ExprMemo& memo) {
  using K = Expression::Kind;
  if (!e.depends_on(v)) return Expression();
  if (e.kind() == K::Variable) return Expression(1);
  if (auto it = memo.find(identity(e)); it != memo.end()) return it->second;
  Expression r;
  const auto& a = e.args();
  switch (e.kind()) {
    case K::Sum: {
      std::vector<Expression> terms;
      for (const auto& t : a) terms.push_back(diff_impl(t, v, memo));
      r = Expression::sum(std::move(terms));
      break;
    }
    case K::Product: {
      std::vector<Expression> terms;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].depends_on(v)) continue;
        std::vector<Expression> factors = a;
        factors[i] = diff_impl(a[i], v, memo);
        terms.push_back(Expression::product(std::move(factors)));
      }
      r = Expression::sum(std::move(terms));
      break;
    }
    case K::Quotient: {
      const Expression& n = a[0];
      const Expression& d = a[1];
      if (!d.depends_on(v)) {
        r = diff_impl(n, v, memo) / d;
      } else {
        r = (diff_impl(n, v, memo) * d - n * diff_impl(d, v, memo)) / pow(d, 2);
      }
      break;
    }
    case K::Power: {
      int k = e.exponent();
      r = Expression::product({Expression(k), pow(a[0], k - 1), diff_impl(a[0], v, memo)});
      break;
    }
    case K::Cbrt:
      r = diff_impl(a[0], v, memo) / (Expression(3) * pow(e, 2));
      break;
    case K::Ln:
      r = diff_impl(a[0], v, memo) / a[0];
      break;
    default: break;
  }
  memo.emplace(identity(e), r);
  return r;
}

Expression substitute_impl(const Expression& e, const std::map<Var, Expression>& bindings,
                           ExprMemo& memo) {
  using K = Expression::Kind;
  if (e.kind() == K::Constant) return e;
  if (e.kind() == K::Variable) {
    auto it = bindings.find(e.var());
    return it == bindings.end() ? e : it->second;
  }
  if (auto it = memo.find(identity(e)); it != memo.end()) return it->second;
  std::vector<Expression> args;
  for (const auto& a : e.args()) args.push_back(substitute_impl(a, bindings, memo));
  Expression r;
  switch (e.kind()) {
    case K::Sum: r = Expression::sum(std::move(args)); break;
    case K::Product: r = Expression::product(std::move(args)); break;
    case K::Quotient: r = Expression::quotient(args[0], args[1]); break;
    case K::Power: r = Expression::power(args[0], e.exponent()); break;
    case K::Cbrt: r = Expression::cbrt(args[0]); break;
    case K::Ln: r = Expression::ln(args[0]); break;
    default: break;
  }
  memo.emplace(identity(e), r);
  return r;
}

}  // namespace

Expression diff(const Expression& e, Var v) {
  ExprMemo memo;
  return simplify(diff_impl(e, v, memo));
}

Expression substitute(const Expression& e, const std::map<Var, Expression>& bindings) {
  if (bindings.empty()) return e;
  ExprMemo memo;
  return simplify(substitute_impl(e, bindings, memo));
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Binding strength of the printed form; higher binds tighter.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string rational_text(const Rational& r) { return r.get_str(); }

int precedence(const Expression& e) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::Constant: {
      const Rational& v = e.value();
      if (sgn(v) >= 0 && v.get_den() == 1) return kAtom;
      return kProduct;
    }
    case K::Variable:
    case K::Cbrt:
    case K::Ln: return kAtom;
    case K::Sum: return kSum;
    case K::Product:
    case K::Quotient: return kProduct;
    case K::Power: return kPower;
  }
  return kAtom;
}

void print(std::ostream& os, const Expression& e, int required);

void print_product(std::ostream& os, const std::vector<Expression>& factors) {
  std::size_t start = 0;
  if (factors.front().is_constant(-1) && factors.size() > 1) {
    os << '-';
    print(os, factors[1], kUnary);
    start = 2;
  } else {
    print(os, factors.front(), kProduct);
    start = 1;
  }
  for (std::size_t i = start; i < factors.size(); ++i) {
    os << '*';
    print(os, factors[i], kUnary);
  }
}

// For sums: if term reads as "-t", return t.
std::optional<Expression> negated(const Expression& term) {
  using K = Expression::Kind;
  if (term.kind() == K::Constant && sgn(term.value()) < 0) return Expression(Rational(-term.value()));
  if (term.kind() == K::Product && term.args().front().is_constant() &&
      sgn(term.args().front().value()) < 0) {
    return -term;
  }
  if (term.kind() == K::Quotient) {
    if (auto n = negated(term.args()[0])) return Expression::quotient(*n, term.args()[1]);
  }
  return std::nullopt;
}

void print(std::ostream& os, const Expression& e, int required) {
  using K = Expression::Kind;
  bool parens = precedence(e) < required;
  if (parens) os << '(';
  switch (e.kind()) {
    case K::Constant: os << rational_text(e.value()); break;
    case K::Variable: os << var_name(e.var()); break;
    case K::Sum: {
      const auto& terms = e.args();
      print(os, terms.front(), kSum);
      for (std::size_t i = 1; i < terms.size(); ++i) {
        if (auto n = negated(terms[i])) {
          os << " - ";
          print(os, *n, kProduct);
        } else {
          os << " + ";
          print(os, terms[i], kProduct);
        }
      }
      break;
    }
    case K::Product: print_product(os, e.args()); break;
    case K::Quotient:
      print(os, e.args()[0], kProduct);
      os << '/';
      print(os, e.args()[1], kPower);
      break;
    case K::Power:
      print(os, e.args()[0], kAtom);
      os << '^';
      if (e.exponent() < 0) {
        os << '(' << e.exponent() << ')';
      } else {
        os << e.exponent();
      }
      break;
    case K::Cbrt:
      os << "cbrt(";
      print(os, e.args()[0], kSum);
      os << ')';
      break;
    case K::Ln:
      os << "ln(";
      print(os, e.args()[0], kSum);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

}  // namespace

std::string to_string(const Expression& e) {
  std::ostringstream os;
  print(os, e, kSum);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << to_string(e); }

}  // namespace jetode
