#include "jetode/jet.hpp"

#include <stdexcept>

#include "jetode/errors.hpp"

namespace jetode {

JetContext::JetContext(Expression f) : f_(std::move(f)) {
  if (!f_.has_formal()) rational_f_ = normalize(f_);
}

const RationalForm& JetContext::rational_f() const {
  if (!rational_f_) throw Error(ErrorKind::NonRational, "f = " + to_string(f_) + " is not rational");
  return *rational_f_;
}

Expression total_derivative(const JetContext& ctx, const Expression& e) {
  if (!e.has_formal() && ctx.is_rational()) {
    return embed(total_derivative(ctx, normalize(e)));
  }
  Expression p = Expression::variable(Var::P);
  Expression q = Expression::variable(Var::Q);
  return simplify(Expression::sum({diff(e, Var::X), p * diff(e, Var::U), q * diff(e, Var::P),
                                   ctx.f() * diff(e, Var::Q)}));
}

Expression total_derivative_n(const JetContext& ctx, const Expression& e, int n) {
  if (n < 0) throw std::invalid_argument("total_derivative_n: negative order");
  Expression r = e;
  for (int i = 0; i < n; ++i) r = total_derivative(ctx, r);
  return r;
}

RationalForm total_derivative(const JetContext& ctx, const RationalForm& e) {
  RationalForm r = e.derivative(slot(Var::X));
  if (e.contains(slot(Var::U))) r += RationalForm::variable(slot(Var::P)) * e.derivative(slot(Var::U));
  if (e.contains(slot(Var::P))) r += RationalForm::variable(slot(Var::Q)) * e.derivative(slot(Var::P));
  if (e.contains(slot(Var::Q))) r += ctx.rational_f() * e.derivative(slot(Var::Q));
  return r;
}

RationalForm total_derivative_n(const JetContext& ctx, const RationalForm& e, int n) {
  if (n < 0) throw std::invalid_argument("total_derivative_n: negative order");
  RationalForm r = e;
  for (int i = 0; i < n; ++i) r = total_derivative(ctx, r);
  return r;
}

}  // namespace jetode
