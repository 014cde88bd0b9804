#ifndef NCGEO_EXPR_HPP
#define NCGEO_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>

namespace ncgeo {

class ExprError : public std::runtime_error {
public:
  explicit ExprError(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic expression over the variables t and r: numeric constants, pi,
/// + - * / ^, unary minus, parentheses, and the functions sin, cos, exp.
class Expr {
public:
  static Expr parse(const std::string& source);

  double eval(double t, double r) const;

  struct Node;

private:
  std::shared_ptr<const Node> root_;
};

}  // namespace ncgeo

#endif
