#ifndef LIPBOUND_EXPRESSION_HPP
#define LIPBOUND_EXPRESSION_HPP

#include <memory>
#include <string>

#include "lipbound/types.hpp"

namespace lipbound {

namespace detail {
struct ExprNode;
}

/// A parsed arithmetic expression over +, -, *, /, ^, sin, cos, exp, log
/// and variables x1..xn. '^' is right-associative and binds tighter than
/// unary minus. Malformed input raises std::invalid_argument with the
/// offending position.
class Expression {
 public:
  static Expression parse(const std::string& text);

  /// Evaluates with x(0) bound to x1 and so on; x must supply at least
  /// max_variable() coordinates.
  double eval(const Vec<double>& x) const;

  /// Highest variable index that occurs, e.g. 3 when x3 is used.
  Eigen::Index max_variable() const noexcept { return max_variable_; }

  const std::string& text() const noexcept { return text_; }

 private:
  Expression(std::shared_ptr<const detail::ExprNode> root,
             Eigen::Index max_variable, std::string text);

  std::shared_ptr<const detail::ExprNode> root_;
  Eigen::Index max_variable_;
  std::string text_;
};

/// Wraps a parsed expression as a FunctionModel over `box`. Expressions
/// carry no analytic derivatives; estimation falls back to finite
/// differences. The box must supply every variable the expression uses.
FunctionModel make_expression_model(const std::string& text,
                                    BoxDomain<double> box);

}  // namespace lipbound

#endif  // LIPBOUND_EXPRESSION_HPP
