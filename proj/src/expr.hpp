// Arithmetic expression DSL over grid coordinates x1..xd, state components
// u1..uN and named parameters. Used to define coefficient models from text.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pqlab {

using ParamMap = std::map<std::string, double>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos + 1) + ")"),
        position(pos) {}
  std::size_t position;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable AST. Supported syntax: literals, x<k>/u<k> variables, named
/// parameters, + - * /, unary minus, sin/cos/exp/sqrt/abs, and `^` with an
/// integer literal exponent. Evaluation is a pure function of (x, u, params);
/// non-finite intermediate results raise EvalError instead of propagating.
class Expr {
 public:
  static Expr parse(std::string_view source, int dim, int components);

  double eval(std::span<const double> x, std::span<const double> u,
              const ParamMap& params) const;

  int dim() const { return dim_; }
  int components() const { return components_; }
  const std::string& source() const { return source_; }

  /// Parameter names referenced by the expression (sorted, unique).
  std::vector<std::string> param_names() const;

 private:
  enum class Op : std::uint8_t {
    Literal, VarX, VarU, Param,
    Neg, Add, Sub, Mul, Div, PowInt,
    Sin, Cos, Exp, Sqrt, Abs
  };
  struct Node {
    Op op;
    int a = -1, b = -1;   // child node indices
    double value = 0.0;   // Literal payload
    int index = 0;        // VarX/VarU index, PowInt exponent
    std::string name;     // Param payload
    std::uint32_t pos = 0;
  };

  double eval_node(int idx, std::span<const double> x, std::span<const double> u,
                   const ParamMap& params) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  int dim_ = 0;
  int components_ = 0;
  std::string source_;

  friend class ExprParser;
};

}  // namespace pqlab
