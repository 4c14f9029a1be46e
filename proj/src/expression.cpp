#include "dphase/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "dphase/errors.hpp"

namespace dphase {

namespace {

enum class Op {
  constant,
  var_x,
  var_y,
  add,
  sub,
  mul,
  div,
  pow,
  neg,
  abs,
  min,
  max,
  sin,
  cos,
  exp,
  log,
};

}  // namespace

struct Expression::Node {
  Op op;
  double value = 0.0;       // constant payload
  std::size_t offset = 0;   // byte offset in the source text, for diagnostics
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, std::size_t offset, std::vector<NodePtr> args = {},
                  double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->value = value;
  n->offset = offset;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    if (text_.empty()) throw ParseError("empty expression", 0);
    auto node = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return node;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      std::size_t at = pos_;
      if (eat('+'))
        lhs = make_node(Op::add, at, {lhs, term()});
      else if (eat('-'))
        lhs = make_node(Op::sub, at, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      std::size_t at = pos_;
      if (eat('*'))
        lhs = make_node(Op::mul, at, {lhs, unary()});
      else if (eat('/'))
        lhs = make_node(Op::div, at, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    std::size_t at = pos_;
    if (eat('-')) return make_node(Op::neg, at, {unary()});
    return power();
  }

  NodePtr power() {
    auto base = atom();
    std::size_t at = pos_;
    if (eat('^')) return make_node(Op::pow, at, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected value", pos_);
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t start = pos_;
    const char* begin = text_.data() + start;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", start);
    pos_ = start + static_cast<std::size_t>(end - begin);
    return make_node(Op::constant, start, {}, v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make_node(Op::var_x, start);
    if (name == "y") return make_node(Op::var_y, start);

    Op op;
    std::size_t arity;
    if (name == "abs") op = Op::abs, arity = 1;
    else if (name == "min") op = Op::min, arity = 2;
    else if (name == "max") op = Op::max, arity = 2;
    else if (name == "sin") op = Op::sin, arity = 1;
    else if (name == "cos") op = Op::cos, arity = 1;
    else if (name == "exp") op = Op::exp, arity = 1;
    else if (name == "log") op = Op::log, arity = 1;
    else
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);

    if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
    std::vector<NodePtr> args;
    args.push_back(expr());
    while (eat(',')) args.push_back(expr());
    if (!eat(')')) throw ParseError("expected ')'", pos_);
    if (args.size() != arity)
      throw ParseError("wrong argument count for '" + std::string(name) + "'", start);
    return make_node(op, start, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double x, double y) {
  auto arg = [&](std::size_t i) { return eval_node(*n.args[i], x, y); };
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var_x: return x;
    case Op::var_y: return y;
    case Op::add: return arg(0) + arg(1);
    case Op::sub: return arg(0) - arg(1);
    case Op::mul: return arg(0) * arg(1);
    case Op::div: {
      double d = arg(1);
      if (d == 0.0)
        throw ParseError("division by zero during evaluation", n.offset);
      return arg(0) / d;
    }
    case Op::pow: return std::pow(arg(0), arg(1));
    case Op::neg: return -arg(0);
    case Op::abs: return std::fabs(arg(0));
    case Op::min: return std::fmin(arg(0), arg(1));
    case Op::max: return std::fmax(arg(0), arg(1));
    case Op::sin: return std::sin(arg(0));
    case Op::cos: return std::cos(arg(0));
    case Op::exp: return std::exp(arg(0));
    case Op::log: {
      double v = arg(0);
      if (v <= 0.0)
        throw ParseError("log of a nonpositive value during evaluation", n.offset);
      return std::log(v);
    }
  }
  throw NumericError("corrupt expression tree");
}

bool node_is_constant(const Expression::Node& n) {
  if (n.op == Op::var_x || n.op == Op::var_y) return false;
  for (const auto& a : n.args)
    if (!node_is_constant(*a)) return false;
  return true;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = std::string(text);
  return e;
}

double Expression::eval(double x, double y) const {
  return eval_node(*root_, x, y);
}

bool Expression::is_constant() const { return node_is_constant(*root_); }

double Expression::constant_value() const { return eval(0.0, 0.0); }

}  // namespace dphase
