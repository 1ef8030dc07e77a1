#include "lipbound/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace lipbound {

namespace detail {

struct ExprNode {
  enum class Kind {
    constant,
    variable,
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    sin,
    cos,
    exp,
    log
  };

  Kind kind;
  double value = 0.0;
  Eigen::Index index = 0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;

  double eval(const Vec<double>& x) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::variable: return x(index);
      case Kind::add: return lhs->eval(x) + rhs->eval(x);
      case Kind::sub: return lhs->eval(x) - rhs->eval(x);
      case Kind::mul: return lhs->eval(x) * rhs->eval(x);
      case Kind::div: return lhs->eval(x) / rhs->eval(x);
      case Kind::pow: return std::pow(lhs->eval(x), rhs->eval(x));
      case Kind::neg: return -lhs->eval(x);
      case Kind::sin: return std::sin(lhs->eval(x));
      case Kind::cos: return std::cos(lhs->eval(x));
      case Kind::exp: return std::exp(lhs->eval(x));
      default: return std::log(lhs->eval(x));
    }
  }
};

}  // namespace detail

namespace {

using detail::ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode::Kind kind, NodePtr lhs = nullptr,
                  NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

  Eigen::Index max_variable() const noexcept { return max_variable_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression: " + what + " at position " +
                                std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
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

  NodePtr parse_expr() {
    NodePtr node = parse_term();
    for (;;) {
      if (consume('+')) {
        node = make_node(ExprNode::Kind::add, node, parse_term());
      } else if (consume('-')) {
        node = make_node(ExprNode::Kind::sub, node, parse_term());
      } else {
        return node;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr node = parse_unary();
    for (;;) {
      if (consume('*')) {
        node = make_node(ExprNode::Kind::mul, node, parse_unary());
      } else if (consume('/')) {
        node = make_node(ExprNode::Kind::div, node, parse_unary());
      } else {
        return node;
      }
    }
  }

  NodePtr parse_unary() {
    if (consume('-'))
      return make_node(ExprNode::Kind::neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (consume('^'))
      return make_node(ExprNode::Kind::pow, base, parse_unary());
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::constant;
    n->value = v;
    return n;
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);

    if (name == "x") {
      const std::size_t digits = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == digits) fail("variables are named x1, x2, ...");
      const long idx = std::strtol(text_.c_str() + digits, nullptr, 10);
      if (idx < 1) fail("variable indices start at 1");
      max_variable_ = std::max<Eigen::Index>(max_variable_, idx);
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::variable;
      n->index = idx - 1;
      return n;
    }

    ExprNode::Kind kind;
    if (name == "sin") {
      kind = ExprNode::Kind::sin;
    } else if (name == "cos") {
      kind = ExprNode::Kind::cos;
    } else if (name == "exp") {
      kind = ExprNode::Kind::exp;
    } else if (name == "log") {
      kind = ExprNode::Kind::log;
    } else {
      fail("unknown name '" + name + "'");
    }
    if (!consume('(')) fail("expected '(' after '" + name + "'");
    NodePtr inner = parse_expr();
    if (!consume(')')) fail("expected ')'");
    return make_node(kind, std::move(inner));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Eigen::Index max_variable_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const detail::ExprNode> root,
                       Eigen::Index max_variable, std::string text)
    : root_(std::move(root)),
      max_variable_(max_variable),
      text_(std::move(text)) {}

Expression Expression::parse(const std::string& text) {
  Parser parser(text);
  NodePtr root = parser.run();
  return Expression(std::move(root), parser.max_variable(), text);
}

double Expression::eval(const Vec<double>& x) const {
  detail::require(x.size() >= max_variable_,
                  "expression: point has fewer coordinates than the "
                  "expression uses");
  return root_->eval(x);
}

FunctionModel make_expression_model(const std::string& text,
                                    BoxDomain<double> box) {
  Expression expr = Expression::parse(text);
  detail::require(expr.max_variable() <= box.dim(),
                  "expression uses variable x" +
                      std::to_string(expr.max_variable()) +
                      " but the box has only " + std::to_string(box.dim()) +
                      " axes");
  const Eigen::Index dim = box.dim();
  return FunctionModel(
      dim, [expr](const Vec<double>& x) { return expr.eval(x); },
      std::move(box));
}

}  // namespace lipbound
