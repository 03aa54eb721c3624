#ifndef REALDYN_EXPR_HPP
#define REALDYN_EXPR_HPP

#include <memory>
#include <string>

#include "realdyn/realmap.hpp"

namespace realdyn {

// AST over { rational literals, z, +, -, *, /, ^int, unary - } with the grammar
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' exponent)?
//   base   := rational | 'z' | '(' expr ')'
struct ExprNode {
  enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg } op;
  Rat value;                       // Num
  int exponent = 0;                // Pow
  std::unique_ptr<ExprNode> lhs, rhs;
  bool equals(const ExprNode& o) const;
};

struct MapExpression {
  std::string source;
  std::unique_ptr<ExprNode> ast;
};

MapExpression parse_expression(const std::string& text);
std::string print_expression(const ExprNode& node);

// normalize the AST to a reduced P/Q and build the map
RealRationalMap to_map(const MapExpression& e);
RealRationalMap parse_map(const std::string& text);

}  // namespace realdyn

#endif
