#ifndef ZEQ_EXPR_HPP
#define ZEQ_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "zeq/rat.hpp"

namespace zeq {

/// Parsed arithmetic expression: +, -, *, /, ^uint, parentheses, rational
/// literals, "(re,im)" Gaussian literals, and names.  What a name means and
/// what may be divided by is decided by the evaluation context.
struct ExprNode {
  enum class Kind { add, sub, mul, div, neg, pow, number, gauss, name };
  Kind kind = Kind::number;
  std::shared_ptr<const ExprNode> a, b;
  Rat number;
  GaussRat gauss;
  std::string name;
  unsigned exponent = 0;
};
using ExprPtr = std::shared_ptr<const ExprNode>;

ExprPtr parse_expression(const std::string& text);

/// Ctx must provide: from_rat(Rat), from_gauss(GaussRat), variable(string),
/// divide(V, V); V must support +, -, *, unary -.
template <class V, class Ctx>
V eval_expr(const ExprPtr& e, Ctx& ctx) {
  switch (e->kind) {
    case ExprNode::Kind::add: return eval_expr<V>(e->a, ctx) + eval_expr<V>(e->b, ctx);
    case ExprNode::Kind::sub: return eval_expr<V>(e->a, ctx) - eval_expr<V>(e->b, ctx);
    case ExprNode::Kind::mul: return eval_expr<V>(e->a, ctx) * eval_expr<V>(e->b, ctx);
    case ExprNode::Kind::div:
      return ctx.divide(eval_expr<V>(e->a, ctx), eval_expr<V>(e->b, ctx));
    case ExprNode::Kind::neg: return -eval_expr<V>(e->a, ctx);
    case ExprNode::Kind::pow: {
      V base = eval_expr<V>(e->a, ctx);
      if (e->exponent == 0) return ctx.from_rat(Rat(1));
      V acc = base;
      for (unsigned k = 1; k < e->exponent; ++k) acc = acc * base;
      return acc;
    }
    case ExprNode::Kind::number: return ctx.from_rat(e->number);
    case ExprNode::Kind::gauss: return ctx.from_gauss(e->gauss);
    case ExprNode::Kind::name: return ctx.variable(e->name);
  }
  fail(errc::internal_contradiction, "unhandled expression node");
}

}  // namespace zeq

#endif
