#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "corrquad/errors.hpp"
#include "corrquad/integrand.hpp"
#include "corrquad/taylor_jet.hpp"

// Grammar (whitespace-insensitive, identifiers case-sensitive):
//
//   expr    = term , { ( "+" | "-" ) , term } ;
//   term    = unary , { ( "*" | "/" ) , unary } ;
//   unary   = ( "-" | "+" ) , unary | power ;
//   power   = primary , [ "^" , unary ] ;          (* right-associative *)
//   primary = number | "x" | "pi" | "e"
//           | func , "(" , expr , ")" | "(" , expr , ")" ;
//   func    = "exp" | "log" | "sin" | "cos" | "tan" | "sqrt" ;
//   number  = digits , [ "." , digits ] , [ ( "e" | "E" ) , [ sign ] , digits ]
//           | "." , digits , [ exponent ] ;
//
// so -x^2 is -(x^2) and 2^-x^2 is 2^(-(x^2)).

namespace corrquad {

class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

enum class NodeKind { Number, Variable, Constant, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Function { Exp, Log, Sin, Cos, Tan, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;  // Number, Constant
  std::string name;     // Constant
  Function fn = Function::Exp;
  NodePtr lhs;          // also the operand of Neg and Call
  NodePtr rhs;
  bool depends_on_x = false;

  static NodePtr make_number(double v) {
    Node n;
    n.number = v;
    return std::make_shared<const Node>(std::move(n));
  }
  static NodePtr make_variable() {
    Node n;
    n.kind = NodeKind::Variable;
    n.depends_on_x = true;
    return std::make_shared<const Node>(std::move(n));
  }
  static NodePtr make_constant(std::string name, double v) {
    Node n;
    n.kind = NodeKind::Constant;
    n.number = v;
    n.name = std::move(name);
    return std::make_shared<const Node>(std::move(n));
  }
  static NodePtr make_binary(NodeKind k, NodePtr l, NodePtr r) {
    Node n;
    n.kind = k;
    n.depends_on_x = l->depends_on_x || r->depends_on_x;
    n.lhs = std::move(l);
    n.rhs = std::move(r);
    return std::make_shared<const Node>(std::move(n));
  }
  static NodePtr make_neg(NodePtr operand) {
    Node n;
    n.kind = NodeKind::Neg;
    n.depends_on_x = operand->depends_on_x;
    n.lhs = std::move(operand);
    return std::make_shared<const Node>(std::move(n));
  }
  static NodePtr make_call(Function f, NodePtr arg) {
    Node n;
    n.kind = NodeKind::Call;
    n.fn = f;
    n.depends_on_x = arg->depends_on_x;
    n.lhs = std::move(arg);
    return std::make_shared<const Node>(std::move(n));
  }
};

inline constexpr std::string_view function_name(Function f) noexcept {
  switch (f) {
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Tan: return "tan";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

inline bool trees_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number:
      return a->number == b->number;
    case NodeKind::Variable:
      return true;
    case NodeKind::Constant:
      return a->name == b->name;
    case NodeKind::Neg:
      return trees_equal(a->lhs, b->lhs);
    case NodeKind::Call:
      return a->fn == b->fn && trees_equal(a->lhs, b->lhs);
    default:
      return trees_equal(a->lhs, b->lhs) && trees_equal(a->rhs, b->rhs);
  }
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Node::make_binary(NodeKind::Add, lhs, term());
      else if (accept('-')) lhs = Node::make_binary(NodeKind::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Node::make_binary(NodeKind::Mul, lhs, unary());
      else if (accept('/')) lhs = Node::make_binary(NodeKind::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return Node::make_neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return Node::make_binary(NodeKind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an operand but input ended");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    return Node::make_number(std::strtod(literal.c_str(), nullptr));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return Node::make_variable();
    if (name == "pi") return Node::make_constant(name, std::numbers::pi);
    if (name == "e") return Node::make_constant(name, std::numbers::e);
    for (Function f : {Function::Exp, Function::Log, Function::Sin, Function::Cos,
                       Function::Tan, Function::Sqrt}) {
      if (function_name(f) == name) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return Node::make_call(f, arg);
      }
    }
    throw UnknownIdentifier(name, start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void print_node(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.lhs, out);
    out += op;
    print_node(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.number); break;
    case NodeKind::Variable: out += 'x'; break;
    case NodeKind::Constant: out += n.name; break;
    case NodeKind::Add: binary(" + "); break;
    case NodeKind::Sub: binary(" - "); break;
    case NodeKind::Mul: binary(" * "); break;
    case NodeKind::Div: binary(" / "); break;
    case NodeKind::Pow: binary(" ^ "); break;
    case NodeKind::Neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      break;
    case NodeKind::Call:
      out += function_name(n.fn);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      break;
  }
}

inline std::optional<long long> as_small_integer(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) <= 1024.0)
    return static_cast<long long>(v);
  return std::nullopt;
}

// Shared walker for double and TaylorJet evaluation; x is the abscissa
// reported in domain errors.
template <typename T>
T evaluate(const Node& n, const T& var, double x) {
  constexpr bool is_jet = std::is_same_v<T, TaylorJet>;
  auto value_of = [](const T& v) {
    if constexpr (is_jet) return v.value();
    else return v;
  };
  auto lift = [](double v) {
    if constexpr (is_jet) return TaylorJet::constant(v);
    else return v;
  };

  switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Constant:
      return lift(n.number);
    case NodeKind::Variable:
      return var;
    case NodeKind::Add:
      return evaluate(*n.lhs, var, x) + evaluate(*n.rhs, var, x);
    case NodeKind::Sub:
      return evaluate(*n.lhs, var, x) - evaluate(*n.rhs, var, x);
    case NodeKind::Mul:
      return evaluate(*n.lhs, var, x) * evaluate(*n.rhs, var, x);
    case NodeKind::Div: {
      const T den = evaluate(*n.rhs, var, x);
      if (value_of(den) == 0.0) throw EvaluationError("division by zero", x);
      return evaluate(*n.lhs, var, x) / den;
    }
    case NodeKind::Neg:
      return -evaluate(*n.lhs, var, x);
    case NodeKind::Pow: {
      const T base = evaluate(*n.lhs, var, x);
      const double b0 = value_of(base);
      if (!n.rhs->depends_on_x) {
        const double r = evaluate(*n.rhs, 0.0, x);
        if (const auto k = as_small_integer(r)) {
          if (*k < 0 && b0 == 0.0) throw EvaluationError("division by zero in power", x);
          if constexpr (is_jet) return pow(base, *k);
          else return std::pow(base, static_cast<double>(*k));
        }
        if (b0 < 0.0) throw EvaluationError("negative base with non-integer exponent", x);
        if constexpr (is_jet) {
          if (b0 == 0.0 && !base.is_constant())
            throw EvaluationError("power not differentiable at zero base", x);
          if (b0 == 0.0) return lift(r > 0.0 ? 0.0 : std::pow(0.0, r));
          return pow(base, r);
        } else {
          if (b0 == 0.0 && r <= 0.0) throw EvaluationError("zero base with non-positive exponent", x);
          return std::pow(base, r);
        }
      }
      if (!(b0 > 0.0)) throw EvaluationError("variable exponent requires a positive base", x);
      const T ex = evaluate(*n.rhs, var, x);
      if constexpr (is_jet) return pow(base, ex);
      else return std::exp(ex * std::log(base));
    }
    case NodeKind::Call: {
      const T arg = evaluate(*n.lhs, var, x);
      const double a0 = value_of(arg);
      using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan;
      switch (n.fn) {
        case Function::Exp: return exp(arg);
        case Function::Sin: return sin(arg);
        case Function::Cos: return cos(arg);
        case Function::Tan: return tan(arg);
        case Function::Log:
          if (!(a0 > 0.0)) throw EvaluationError("log of non-positive argument", x);
          return log(arg);
        case Function::Sqrt:
          if (a0 < 0.0) throw EvaluationError("sqrt of negative argument", x);
          if constexpr (is_jet) {
            if (a0 == 0.0 && !arg.is_constant())
              throw EvaluationError("sqrt not differentiable at zero", x);
          }
          return sqrt(arg);
      }
    }
  }
  throw Error("malformed expression tree");
}

}  // namespace detail

/// Immutable parsed expression in the single variable x.
class Expression {
 public:
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  static Expression parse(std::string_view text) {
    return Expression(detail::Parser(text).parse());
  }

  const NodePtr& root() const noexcept { return root_; }

  double eval(double x) const { return detail::evaluate<double>(*root_, x, x); }

  /// Taylor jet at x0; coefficients above max_order are zeroed.
  TaylorJet derivatives(double x0, int max_order = TaylorJet::kOrder) const {
    if (max_order < 1 || max_order > TaylorJet::kOrder)
      throw InvalidArgument("max_order must lie in 1..6");
    TaylorJet jet = detail::evaluate<TaylorJet>(*root_, TaylorJet::variable(x0), x0);
    for (int i = max_order + 1; i <= TaylorJet::kOrder; ++i) jet[static_cast<std::size_t>(i)] = 0.0;
    return jet;
  }

  /// Fully parenthesised infix form; parses back to an equal tree.
  std::string to_string() const {
    std::string out;
    detail::print_node(*root_, out);
    return out;
  }

  friend bool operator==(const Expression& a, const Expression& b) {
    return trees_equal(a.root_, b.root_);
  }

 private:
  NodePtr root_;
};

/// Integrand backed by an expression; derivatives to order 6 come from
/// Taylor jets. `first_derivative`, when given, replaces f' only.
inline Integrand make_integrand(const Expression& f,
                                std::optional<Expression> first_derivative = std::nullopt) {
  Integrand base(
      [f](double x) { return f.eval(x); },
      [f](int k, double x) { return f.derivatives(x, k).derivative(k); },
      TaylorJet::kOrder);
  if (first_derivative) {
    return base.with_first_derivative(
        [df = *first_derivative](double x) { return df.eval(x); });
  }
  return base;
}

}  // namespace corrquad
