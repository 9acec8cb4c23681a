#include "zeq/expr.hpp"

#include <cctype>

namespace zeq {

namespace {

struct Token {
  enum class Kind { number, name, op, end };
  Kind kind = Kind::end;
  std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::number, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Kind::name, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::string("+-*/^(),").find(c) != std::string::npos) {
      out.push_back({Token::Kind::op, std::string(1, c)});
      ++i;
      continue;
    }
    fail(errc::parse_error, std::string("unexpected character '") + c + "' in expression");
  }
  out.push_back({Token::Kind::end, ""});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  bool eat_op(const std::string& o) {
    if (toks[pos].kind == Token::Kind::op && toks[pos].text == o) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect_op(const std::string& o) {
    if (!eat_op(o)) fail(errc::parse_error, "expected '" + o + "' in expression");
  }

  ExprPtr make(ExprNode n) { return std::make_shared<ExprNode>(std::move(n)); }

  ExprPtr expr() {
    ExprPtr a = term();
    for (;;) {
      if (eat_op("+")) {
        ExprNode n;
        n.kind = ExprNode::Kind::add;
        n.a = a;
        n.b = term();
        a = make(std::move(n));
      } else if (eat_op("-")) {
        ExprNode n;
        n.kind = ExprNode::Kind::sub;
        n.a = a;
        n.b = term();
        a = make(std::move(n));
      } else {
        return a;
      }
    }
  }

  ExprPtr term() {
    ExprPtr a = factor();
    for (;;) {
      if (eat_op("*")) {
        ExprNode n;
        n.kind = ExprNode::Kind::mul;
        n.a = a;
        n.b = factor();
        a = make(std::move(n));
      } else if (eat_op("/")) {
        ExprNode n;
        n.kind = ExprNode::Kind::div;
        n.a = a;
        n.b = factor();
        a = make(std::move(n));
      } else {
        return a;
      }
    }
  }

  ExprPtr factor() {
    if (eat_op("-")) {
      ExprNode n;
      n.kind = ExprNode::Kind::neg;
      n.a = factor();
      return make(std::move(n));
    }
    if (eat_op("+")) return factor();
    return power();
  }

  ExprPtr power() {
    ExprPtr a = primary();
    if (eat_op("^")) {
      if (peek().kind != Token::Kind::number) fail(errc::parse_error, "exponent must be an integer");
      unsigned long e = std::stoul(toks[pos].text);
      ++pos;
      ExprNode n;
      n.kind = ExprNode::Kind::pow;
      n.a = a;
      n.exponent = static_cast<unsigned>(e);
      return make(std::move(n));
    }
    return a;
  }

  /// Constant-fold a subtree to an exact rational (for Gaussian literals).
  Rat fold_rational(const ExprPtr& e) {
    switch (e->kind) {
      case ExprNode::Kind::number: return e->number;
      case ExprNode::Kind::neg: return -fold_rational(e->a);
      case ExprNode::Kind::add: return fold_rational(e->a) + fold_rational(e->b);
      case ExprNode::Kind::sub: return fold_rational(e->a) - fold_rational(e->b);
      case ExprNode::Kind::mul: return fold_rational(e->a) * fold_rational(e->b);
      case ExprNode::Kind::div: return fold_rational(e->a) / fold_rational(e->b);
      case ExprNode::Kind::pow: return fold_rational(e->a).pow(e->exponent);
      default: fail(errc::parse_error, "Gaussian literal components must be rational constants");
    }
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) {
      ExprNode n;
      n.kind = ExprNode::Kind::number;
      n.number = Rat(mpz_class(t.text, 10));
      ++pos;
      return make(std::move(n));
    }
    if (t.kind == Token::Kind::name) {
      ExprNode n;
      n.kind = ExprNode::Kind::name;
      n.name = t.text;
      ++pos;
      return make(std::move(n));
    }
    if (eat_op("(")) {
      ExprPtr a = expr();
      if (eat_op(",")) {
        ExprPtr b = expr();
        expect_op(")");
        ExprNode n;
        n.kind = ExprNode::Kind::gauss;
        n.gauss = GaussRat(fold_rational(a), fold_rational(b));
        return make(std::move(n));
      }
      expect_op(")");
      return a;
    }
    fail(errc::parse_error, "unexpected token in expression");
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) {
  Parser p{tokenize(text)};
  ExprPtr e = p.expr();
  if (p.peek().kind != Token::Kind::end) fail(errc::parse_error, "trailing input in expression");
  return e;
}

}  // namespace zeq
