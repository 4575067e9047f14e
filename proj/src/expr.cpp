#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace pqlab {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

class ExprParser {
 public:
  ExprParser(std::string_view src, int dim, int components, Expr& out)
      : src_(src), dim_(dim), components_(components), out_(out) {}

  void run() {
    if (src_.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw ParseError("empty expression", 0);
    out_.root_ = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int dim_, components_;
  Expr& out_;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) { ++pos_; return true; }
    return false;
  }

  int add(Expr::Node n) {
    out_.nodes_.push_back(std::move(n));
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  // expr := term (('+'|'-') term)*
  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      std::size_t p = pos_;
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        int rhs = parse_term();
        Expr::Node n;
        n.op = (c == '+') ? Expr::Op::Add : Expr::Op::Sub;
        n.a = lhs; n.b = rhs; n.pos = static_cast<std::uint32_t>(p);
        lhs = add(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  // term := factor (('*'|'/') factor)*
  int parse_term() {
    int lhs = parse_factor();
    for (;;) {
      std::size_t p = pos_;
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        int rhs = parse_factor();
        Expr::Node n;
        n.op = (c == '*') ? Expr::Op::Mul : Expr::Op::Div;
        n.a = lhs; n.b = rhs; n.pos = static_cast<std::uint32_t>(p);
        lhs = add(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  // factor := unary ('^' int_literal)?
  int parse_factor() {
    int base = parse_unary();
    if (consume('^')) {
      std::size_t p = pos_;
      int expn = parse_int_literal();
      Expr::Node n;
      n.op = Expr::Op::PowInt;
      n.a = base; n.index = expn; n.pos = static_cast<std::uint32_t>(p);
      return add(std::move(n));
    }
    return base;
  }

  int parse_int_literal() {
    skip_ws();
    std::size_t p = pos_;
    bool neg = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      neg = (src_[pos_] == '-');
      ++pos_;
    }
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      throw ParseError("exponent must be an integer literal", p);
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      if (v > 1000000) throw ParseError("exponent too large", p);
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
      throw ParseError("exponent must be an integer literal", p);
    return static_cast<int>(neg ? -v : v);
  }

  // unary := '-' unary | primary
  int parse_unary() {
    std::size_t p = pos_;
    if (consume('-')) {
      int child = parse_unary();
      Expr::Node n;
      n.op = Expr::Op::Neg;
      n.a = child; n.pos = static_cast<std::uint32_t>(p);
      return add(std::move(n));
    }
    consume('+');
    return parse_primary();
  }

  int parse_primary() {
    char c = peek();
    std::size_t p = pos_;
    if (c == '(') {
      ++pos_;
      int e = parse_expr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    if (c == '\0') throw ParseError("unexpected end of expression", p);
    throw ParseError(std::string("unexpected character '") + c + "'", p);
  }

  int parse_number() {
    skip_ws();
    std::size_t p = pos_;
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", p);
    pos_ += static_cast<std::size_t>(end - begin);
    Expr::Node n;
    n.op = Expr::Op::Literal;
    n.value = v; n.pos = static_cast<std::uint32_t>(p);
    return add(std::move(n));
  }

  int parse_identifier() {
    skip_ws();
    std::size_t p = pos_;
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    std::string name(src_.substr(start, pos_ - start));

    // x<k> / u<k> variable references
    if ((name[0] == 'x' || name[0] == 'u') && name.size() > 1 &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      int idx = std::atoi(name.c_str() + 1);
      int limit = (name[0] == 'x') ? dim_ : components_;
      if (idx < 1 || idx > limit)
        throw ParseError("unknown variable '" + name + "': index out of range (" +
                             (name[0] == 'x' ? "d=" : "N=") + std::to_string(limit) + ")",
                         p);
      Expr::Node n;
      n.op = (name[0] == 'x') ? Expr::Op::VarX : Expr::Op::VarU;
      n.index = idx - 1; n.pos = static_cast<std::uint32_t>(p);
      return add(std::move(n));
    }

    // one-argument functions
    Expr::Op fn;
    bool is_fn = true;
    if (name == "sin") fn = Expr::Op::Sin;
    else if (name == "cos") fn = Expr::Op::Cos;
    else if (name == "exp") fn = Expr::Op::Exp;
    else if (name == "sqrt") fn = Expr::Op::Sqrt;
    else if (name == "abs") fn = Expr::Op::Abs;
    else is_fn = false;

    if (is_fn) {
      if (!consume('(')) throw ParseError("function '" + name + "' requires an argument list", pos_);
      int arg = parse_expr();
      if (consume(',')) throw ParseError("function '" + name + "' takes exactly one argument", pos_ - 1);
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      Expr::Node n;
      n.op = fn;
      n.a = arg; n.pos = static_cast<std::uint32_t>(p);
      return add(std::move(n));
    }

    if (peek() == '(')
      throw ParseError("unknown function '" + name + "'", p);

    // anything else is a named parameter, resolved at evaluation time
    Expr::Node n;
    n.op = Expr::Op::Param;
    n.name = std::move(name); n.pos = static_cast<std::uint32_t>(p);
    return add(std::move(n));
  }
};

Expr Expr::parse(std::string_view source, int dim, int components) {
  if (dim < 0 || components < 0)
    throw ParseError("dimensions must be non-negative", 0);
  Expr e;
  e.dim_ = dim;
  e.components_ = components;
  e.source_ = std::string(source);
  ExprParser parser(source, dim, components, e);
  parser.run();
  return e;
}

namespace {

double powi(double base, int e) {
  if (e < 0) return 1.0 / powi(base, -e);
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

double Expr::eval_node(int idx, std::span<const double> x, std::span<const double> u,
                       const ParamMap& params) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.op) {
    case Op::Literal: return n.value;
    case Op::VarX: return x[static_cast<std::size_t>(n.index)];
    case Op::VarU: return u[static_cast<std::size_t>(n.index)];
    case Op::Param: {
      auto it = params.find(n.name);
      if (it == params.end())
        throw EvalError("unknown parameter '" + n.name + "' in '" + source_ + "'");
      return it->second;
    }
    case Op::Neg: return -eval_node(n.a, x, u, params);
    case Op::Add: return eval_node(n.a, x, u, params) + eval_node(n.b, x, u, params);
    case Op::Sub: return eval_node(n.a, x, u, params) - eval_node(n.b, x, u, params);
    case Op::Mul: return eval_node(n.a, x, u, params) * eval_node(n.b, x, u, params);
    case Op::Div: {
      double a = eval_node(n.a, x, u, params);
      double b = eval_node(n.b, x, u, params);
      double r = a / b;
      if (!std::isfinite(r))
        throw EvalError("non-finite result of division in '" + source_ + "'");
      return r;
    }
    case Op::PowInt: {
      double r = powi(eval_node(n.a, x, u, params), n.index);
      if (!std::isfinite(r))
        throw EvalError("non-finite result of '^' in '" + source_ + "'");
      return r;
    }
    case Op::Sin: return std::sin(eval_node(n.a, x, u, params));
    case Op::Cos: return std::cos(eval_node(n.a, x, u, params));
    case Op::Exp: {
      double r = std::exp(eval_node(n.a, x, u, params));
      if (!std::isfinite(r)) throw EvalError("non-finite result of exp in '" + source_ + "'");
      return r;
    }
    case Op::Sqrt: {
      double a = eval_node(n.a, x, u, params);
      if (a < 0.0) throw EvalError("sqrt of negative value in '" + source_ + "'");
      return std::sqrt(a);
    }
    case Op::Abs: return std::fabs(eval_node(n.a, x, u, params));
  }
  throw EvalError("corrupt expression node");
}

double Expr::eval(std::span<const double> x, std::span<const double> u,
                  const ParamMap& params) const {
  if (static_cast<int>(x.size()) < dim_ || static_cast<int>(u.size()) < components_)
    throw EvalError("evaluation point dimension mismatch for '" + source_ + "'");
  double r = eval_node(root_, x, u, params);
  if (!std::isfinite(r))
    throw EvalError("non-finite result of '" + source_ + "'");
  return r;
}

std::vector<std::string> Expr::param_names() const {
  std::set<std::string> names;
  for (const Node& n : nodes_)
    if (n.op == Op::Param) names.insert(n.name);
  return {names.begin(), names.end()};
}

}  // namespace pqlab
