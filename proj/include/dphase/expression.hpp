#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dphase {

// Arithmetic expression in the variables x and y.
//
// Grammar ( ^ is right-associative and binds tighter than unary minus):
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?
//   atom    := number | 'x' | 'y' | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func    := abs | min | max | sin | cos | exp | log
//
// Parsing rejects malformed input with the byte offset of the error;
// evaluation rejects division by zero and log of a nonpositive value the same
// way, so a field backed by an Expression is total wherever it succeeds.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double eval(double x, double y) const;

  // True when the tree contains no variables; such expressions evaluate to
  // the same value everywhere.
  bool is_constant() const;
  double constant_value() const;

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace dphase
