#include "realdyn/expr.hpp"

#include <cctype>

namespace realdyn {

bool ExprNode::equals(const ExprNode& o) const {
  if (op != o.op) return false;
  switch (op) {
    case Op::Num: return value == o.value;
    case Op::Var: return true;
    case Op::Pow: return exponent == o.exponent && lhs->equals(*o.lhs);
    case Op::Neg: return lhs->equals(*o.lhs);
    default: return lhs->equals(*o.lhs) && rhs->equals(*o.rhs);
  }
}

namespace {

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr node(ExprNode::Op op) {
  auto n = std::make_unique<ExprNode>();
  n->op = op;
  return n;
}

// fold constant subtrees so that "1/2", "0.5" and "-(3)" parse identically
NodePtr fold(NodePtr n) {
  using Op = ExprNode::Op;
  if (n->op == Op::Neg && n->lhs->op == Op::Num) {
    auto r = node(Op::Num);
    r->value = -n->lhs->value;
    return r;
  }
  if (n->op == Op::Pow && n->lhs->op == Op::Num) {
    auto r = node(Op::Num);
    Rat base = n->lhs->value;
    int e = n->exponent;
    if (e < 0) {
      if (base == 0) throw ZeroDenominator("zero to a negative power");
      base = Rat(1) / base;
      e = -e;
    }
    r->value = rat_pow(base, static_cast<unsigned long>(e));
    return r;
  }
  if (!n->lhs || !n->rhs) return n;
  if (n->lhs->op != Op::Num || n->rhs->op != Op::Num) return n;
  auto r = node(Op::Num);
  switch (n->op) {
    case Op::Add: r->value = n->lhs->value + n->rhs->value; break;
    case Op::Sub: r->value = n->lhs->value - n->rhs->value; break;
    case Op::Mul: r->value = n->lhs->value * n->rhs->value; break;
    case Op::Div:
      if (n->rhs->value == 0) throw ZeroDenominator("division by zero constant");
      r->value = n->lhs->value / n->rhs->value;
      break;
    default: return n;
  }
  return r;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;
  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    skip_ws();
    bool neg = accept('-');
    NodePtr acc = parse_term();
    if (neg) {
      auto n = node(ExprNode::Op::Neg);
      n->lhs = std::move(acc);
      acc = fold(std::move(n));
    }
    while (true) {
      skip_ws();
      if (accept('+')) {
        auto n = node(ExprNode::Op::Add);
        n->lhs = std::move(acc);
        n->rhs = parse_term();
        acc = fold(std::move(n));
      } else if (accept('-')) {
        auto n = node(ExprNode::Op::Sub);
        n->lhs = std::move(acc);
        n->rhs = parse_term();
        acc = fold(std::move(n));
      } else {
        return acc;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr acc = parse_factor();
    while (true) {
      skip_ws();
      if (accept('*')) {
        auto n = node(ExprNode::Op::Mul);
        n->lhs = std::move(acc);
        n->rhs = parse_factor();
        acc = fold(std::move(n));
      } else if (accept('/')) {
        auto n = node(ExprNode::Op::Div);
        n->lhs = std::move(acc);
        n->rhs = parse_factor();
        acc = fold(std::move(n));
      } else {
        return acc;
      }
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_base();
    skip_ws();
    if (accept('^')) {
      auto n = node(ExprNode::Op::Pow);
      n->lhs = std::move(base);
      n->exponent = parse_int_exponent();
      return fold(std::move(n));
    }
    return base;
  }

  // integer literal, possibly signed or parenthesized; anything else is the
  // dedicated non-polynomial-exponent error
  int parse_int_exponent() {
    skip_ws();
    size_t mark = pos;
    if (accept('(')) {
      NodePtr inner = parse_expr();
      if (!accept(')')) throw SyntaxError(pos, "expected ')' in exponent");
      // must evaluate to an integer constant
      if (inner->op == ExprNode::Op::Num && inner->value.get_den() == 1)
        return static_cast<int>(inner->value.get_num().get_si());
      if (inner->op == ExprNode::Op::Neg && inner->lhs->op == ExprNode::Op::Num &&
          inner->lhs->value.get_den() == 1)
        return -static_cast<int>(inner->lhs->value.get_num().get_si());
      if (inner->op == ExprNode::Op::Div && inner->lhs->op == ExprNode::Op::Num &&
          inner->rhs->op == ExprNode::Op::Num) {
        Rat q = inner->lhs->value / inner->rhs->value;
        if (q.get_den() == 1) return static_cast<int>(q.get_num().get_si());
      }
      throw NonPolynomialExponent("exponent at byte " + std::to_string(mark) +
                                  " is not an integer");
    }
    bool neg = accept('-');
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw SyntaxError(pos, "expected integer exponent");
    // a fractional literal like 1/2 straight after '^' binds as (1/2) per the
    // factor grammar only through parentheses; a bare digit run is the exponent
    int v = std::stoi(s.substr(start, pos - start));
    return neg ? -v : v;
  }

  NodePtr parse_base() {
    skip_ws();
    if (pos >= s.size()) throw SyntaxError(pos, "unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      if (!accept(')')) throw SyntaxError(pos, "expected ')'");
      return e;
    }
    if (c == 'z' || c == 'x') {
      ++pos;
      return node(ExprNode::Op::Var);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
        ++pos;
      // scientific tail
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        size_t q = pos + 1;
        if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
        if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
          pos = q;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
      }
      auto n = node(ExprNode::Op::Num);
      try {
        n->value = rat_from_string(s.substr(start, pos - start));
      } catch (const SyntaxError&) {
        throw SyntaxError(start, "malformed number");
      }
      return n;
    }
    throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
  }
};

// rational-function value for AST evaluation
struct RF {
  QPoly num, den;
};

RF rf_const(const Rat& v) { return {QPoly::constant(v), QPoly::constant(Rat(1))}; }

RF eval_node(const ExprNode& n) {
  switch (n.op) {
    case ExprNode::Op::Num: return rf_const(n.value);
    case ExprNode::Op::Var: return {QPoly::x(), QPoly::constant(Rat(1))};
    case ExprNode::Op::Neg: {
      RF a = eval_node(*n.lhs);
      return {-a.num, a.den};
    }
    case ExprNode::Op::Add: {
      RF a = eval_node(*n.lhs), b = eval_node(*n.rhs);
      return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    case ExprNode::Op::Sub: {
      RF a = eval_node(*n.lhs), b = eval_node(*n.rhs);
      return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    case ExprNode::Op::Mul: {
      RF a = eval_node(*n.lhs), b = eval_node(*n.rhs);
      return {a.num * b.num, a.den * b.den};
    }
    case ExprNode::Op::Div: {
      RF a = eval_node(*n.lhs), b = eval_node(*n.rhs);
      if (b.num.is_zero()) throw ZeroDenominator("division by zero expression");
      return {a.num * b.den, a.den * b.num};
    }
    case ExprNode::Op::Pow: {
      RF a = eval_node(*n.lhs);
      int e = n.exponent;
      RF r = rf_const(Rat(1));
      RF base = a;
      if (e < 0) {
        if (a.num.is_zero()) throw ZeroDenominator("zero to a negative power");
        std::swap(base.num, base.den);
        e = -e;
      }
      for (int i = 0; i < e; ++i) r = {r.num * base.num, r.den * base.den};
      return r;
    }
  }
  throw SyntaxError(0, "corrupt AST");
}

}  // namespace

MapExpression parse_expression(const std::string& text) {
  Parser p(text);
  MapExpression e;
  e.source = text;
  e.ast = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw SyntaxError(p.pos, "trailing input");
  return e;
}

std::string print_expression(const ExprNode& n) {
  switch (n.op) {
    case ExprNode::Op::Num: {
      if (sgn(n.value) < 0) {
        // negatives re-enter the grammar through constant folding of 0-v
        Rat a = -n.value;
        if (a.get_den() == 1) return "(0-" + a.get_num().get_str() + ")";
        return "(0-" + a.get_num().get_str() + "/" + a.get_den().get_str() + ")";
      }
      if (n.value.get_den() == 1) return n.value.get_num().get_str();
      return "(" + n.value.get_num().get_str() + "/" + n.value.get_den().get_str() + ")";
    }
    case ExprNode::Op::Var: return "z";
    case ExprNode::Op::Neg: return "-(" + print_expression(*n.lhs) + ")";
    case ExprNode::Op::Add:
      return "(" + print_expression(*n.lhs) + "+" + print_expression(*n.rhs) + ")";
    case ExprNode::Op::Sub:
      return "(" + print_expression(*n.lhs) + "-" + print_expression(*n.rhs) + ")";
    case ExprNode::Op::Mul:
      return "(" + print_expression(*n.lhs) + "*" + print_expression(*n.rhs) + ")";
    case ExprNode::Op::Div:
      return "(" + print_expression(*n.lhs) + "/" + print_expression(*n.rhs) + ")";
    case ExprNode::Op::Pow:
      return "(" + print_expression(*n.lhs) + ")^" +
             (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")"
                             : std::to_string(n.exponent));
  }
  return "?";
}

RealRationalMap to_map(const MapExpression& e) {
  RF rf = eval_node(*e.ast);
  try {
    return make_map(rf.num, rf.den);
  } catch (const DegeneratesToConstant&) {
    throw DegreeZero("expression reduces to a constant");
  }
}

RealRationalMap parse_map(const std::string& text) {
  return to_map(parse_expression(text));
}

}  // namespace realdyn
