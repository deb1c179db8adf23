#ifndef SPRAYMET_EXPRESSION_HPP
#define SPRAYMET_EXPRESSION_HPP

// Coefficient-expression DSL: spray coefficients, projective factors,
// generators and expected closed forms are all written in it.  Parsing
// produces an immutable postorder AST that evaluates over any scalar
// algebra providing the node operations (plain doubles or jets).

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spraymet/errors.hpp"
#include "spraymet/jet.hpp"

namespace spraymet {

enum class ExprOp : std::uint8_t {
  kConstant,
  kVarX,
  kVarY,
  kNeg,
  kSqrt,
  kExp,
  kLog,
  kAbs,
  kSin,
  kCos,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,  // exponent is a folded real constant in `value`
};

struct ExprNode {
  ExprOp op;
  double value = 0.0;   // constant value or pow exponent
  std::int32_t index = -1;  // 0-based coordinate slot for kVarX/kVarY
  std::int32_t a = -1;
  std::int32_t b = -1;

  bool operator==(const ExprNode& o) const {
    return op == o.op && value == o.value && index == o.index && a == o.a && b == o.b;
  }
};

namespace exprdetail {

inline double eval_log(double v) {
  if (v <= 0.0) throw DomainError("log of non-positive value");
  return std::log(v);
}
inline double eval_sqrt(double v) {
  if (v < 0.0) throw DomainError("sqrt of negative value");
  return std::sqrt(v);
}
inline double eval_div(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}
inline double eval_pow(double v, double e) {
  double rounded = std::nearbyint(e);
  if (rounded == e && std::abs(e) <= 64.0) {
    if (v == 0.0 && e < 0.0) throw DomainError("negative integer power of zero");
    return detail::powi(v, static_cast<long>(rounded));
  }
  if (v < 0.0) throw DomainError("non-integer power of negative value");
  return std::pow(v, e);
}
inline double eval_abs(double v) { return v < 0.0 ? -v : v; }
inline double eval_exp(double v) { return std::exp(v); }
inline double eval_sin(double v) { return std::sin(v); }
inline double eval_cos(double v) { return std::cos(v); }
inline double eval_neg(double v) { return -v; }
inline double constant_like(double v, double) { return v; }

template <typename S>
JetT<S> eval_log(const JetT<S>& v) { return log(v); }
template <typename S>
JetT<S> eval_sqrt(const JetT<S>& v) { return sqrt(v); }
template <typename S>
JetT<S> eval_div(const JetT<S>& a, const JetT<S>& b) { return a / b; }
template <typename S>
JetT<S> eval_pow(const JetT<S>& v, double e) { return pow(v, e); }
template <typename S>
JetT<S> eval_abs(const JetT<S>& v) { return abs(v); }
template <typename S>
JetT<S> eval_exp(const JetT<S>& v) { return exp(v); }
template <typename S>
JetT<S> eval_sin(const JetT<S>& v) { return sin(v); }
template <typename S>
JetT<S> eval_cos(const JetT<S>& v) { return cos(v); }
template <typename S>
JetT<S> eval_neg(const JetT<S>& v) { return -v; }
template <typename S>
JetT<S> constant_like(double v, const JetT<S>& proto) {
  return JetT<S>::constant(proto.layout(), one_like(proto.value()) * v);
}

}  // namespace exprdetail

class Expression {
 public:
  Expression() = default;

  bool empty() const { return !nodes_ || nodes_->empty(); }
  int dimension() const { return dim_; }
  const std::vector<ExprNode>& nodes() const { return *nodes_; }

  // Re-parseable text form; the printed tree is structurally identical.
  std::string to_string() const;

  bool structurally_equal(const Expression& o) const {
    return dim_ == o.dim_ && !empty() && !o.empty() && *nodes_ == *o.nodes_;
  }

  template <typename T>
  T evaluate(std::span<const T> x, std::span<const T> y) const {
    if (empty()) throw Error("evaluating an empty expression");
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) {
      throw Error("binding size does not match expression dimension");
    }
    using namespace exprdetail;
    std::vector<T> vals;
    vals.reserve(nodes_->size());
    const T& proto = x[0];
    for (const ExprNode& nd : *nodes_) {
      switch (nd.op) {
        case ExprOp::kConstant: vals.push_back(constant_like(nd.value, proto)); break;
        case ExprOp::kVarX: vals.push_back(x[static_cast<std::size_t>(nd.index)]); break;
        case ExprOp::kVarY: vals.push_back(y[static_cast<std::size_t>(nd.index)]); break;
        case ExprOp::kNeg: vals.push_back(eval_neg(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kSqrt: vals.push_back(eval_sqrt(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kExp: vals.push_back(eval_exp(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kLog: vals.push_back(eval_log(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kAbs: vals.push_back(eval_abs(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kSin: vals.push_back(eval_sin(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kCos: vals.push_back(eval_cos(vals[static_cast<std::size_t>(nd.a)])); break;
        case ExprOp::kAdd:
          vals.push_back(vals[static_cast<std::size_t>(nd.a)] + vals[static_cast<std::size_t>(nd.b)]);
          break;
        case ExprOp::kSub:
          vals.push_back(vals[static_cast<std::size_t>(nd.a)] - vals[static_cast<std::size_t>(nd.b)]);
          break;
        case ExprOp::kMul:
          vals.push_back(vals[static_cast<std::size_t>(nd.a)] * vals[static_cast<std::size_t>(nd.b)]);
          break;
        case ExprOp::kDiv:
          vals.push_back(
              eval_div(vals[static_cast<std::size_t>(nd.a)], vals[static_cast<std::size_t>(nd.b)]));
          break;
        case ExprOp::kPow:
          vals.push_back(eval_pow(vals[static_cast<std::size_t>(nd.a)], nd.value));
          break;
      }
    }
    return vals.back();
  }

  // Programmatic constructors, used for derived coefficients and tests.
  static Expression constant(double v, int n);
  static Expression coordinate_x(int one_based_index, int n);
  static Expression coordinate_y(int one_based_index, int n);
  static Expression unary(ExprOp op, const Expression& a);
  static Expression binary(ExprOp op, const Expression& a, const Expression& b);
  static Expression pow_const(const Expression& a, double exponent);

  friend Expression parse(const std::string& text, int n);

 private:
  Expression(std::shared_ptr<const std::vector<ExprNode>> nodes, int dim)
      : nodes_(std::move(nodes)), dim_(dim) {}

  std::shared_ptr<const std::vector<ExprNode>> nodes_;
  int dim_ = 0;
};

// Parses `text` for dimension `n`; builtins xx/yy/xy are expanded to
// explicit n-term sums.  Throws SyntaxError / IndexError.
Expression parse(const std::string& text, int n);

}  // namespace spraymet

#endif  // SPRAYMET_EXPRESSION_HPP
