#include "ncgeo/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace ncgeo {

struct Expr::Node {
  enum class Kind { Constant, VarT, VarR, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_const(double v) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = Kind::Constant;
  node->value = v;
  return node;
}

class Parser {
public:
  explicit Parser(const std::string& src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_space();
    if (pos_ != src_.size())
      throw ExprError("unexpected trailing input at position " + std::to_string(pos_));
    return e;
  }

private:
  const std::string& src_;
  size_t pos_ = 0;

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      if (consume('+')) lhs = make(Kind::Add, lhs, term());
      else if (consume('-')) lhs = make(Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (consume('*')) lhs = make(Kind::Mul, lhs, factor());
      else if (consume('/')) lhs = make(Kind::Div, lhs, factor());
      else return lhs;
    }
  }

  // right-associative power binds tighter than unary minus on the left
  NodePtr factor() {
    if (consume('-')) return make(Kind::Neg, factor());
    NodePtr base = primary();
    if (consume('^')) return make(Kind::Pow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) throw ExprError("unexpected end of expression");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (consume('(')) {
      NodePtr e = expression();
      if (!consume(')')) throw ExprError("missing closing parenthesis");
      return e;
    }
    throw ExprError(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    size_t end = 0;
    double v = 0.0;
    try {
      v = std::stod(src_.substr(pos_), &end);
    } catch (const std::exception&) {
      throw ExprError("invalid number at position " + std::to_string(pos_));
    }
    pos_ += end;
    return make_const(v);
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "t") return make(Kind::VarT);
    if (name == "r") return make(Kind::VarR);
    if (name == "pi") return make_const(M_PI);
    Kind kind;
    if (name == "sin") kind = Kind::Sin;
    else if (name == "cos") kind = Kind::Cos;
    else if (name == "exp") kind = Kind::Exp;
    else throw ExprError("unknown identifier '" + name + "'");
    if (!consume('(')) throw ExprError("expected '(' after " + name);
    NodePtr arg = expression();
    if (!consume(')')) throw ExprError("missing closing parenthesis after " + name);
    return make(kind, arg);
  }
};

double eval_node(const Expr::Node& node, double t, double r) {
  switch (node.kind) {
    case Kind::Constant: return node.value;
    case Kind::VarT: return t;
    case Kind::VarR: return r;
    case Kind::Add: return eval_node(*node.lhs, t, r) + eval_node(*node.rhs, t, r);
    case Kind::Sub: return eval_node(*node.lhs, t, r) - eval_node(*node.rhs, t, r);
    case Kind::Mul: return eval_node(*node.lhs, t, r) * eval_node(*node.rhs, t, r);
    case Kind::Div: return eval_node(*node.lhs, t, r) / eval_node(*node.rhs, t, r);
    case Kind::Pow: return std::pow(eval_node(*node.lhs, t, r), eval_node(*node.rhs, t, r));
    case Kind::Neg: return -eval_node(*node.lhs, t, r);
    case Kind::Sin: return std::sin(eval_node(*node.lhs, t, r));
    case Kind::Cos: return std::cos(eval_node(*node.lhs, t, r));
    case Kind::Exp: return std::exp(eval_node(*node.lhs, t, r));
  }
  throw ExprError("corrupt expression node");
}

}  // namespace

Expr Expr::parse(const std::string& source) {
  Expr e;
  e.root_ = Parser(source).parse();
  return e;
}

double Expr::eval(double t, double r) const {
  if (!root_) throw ExprError("empty expression");
  return eval_node(*root_, t, r);
}

}  // namespace ncgeo
