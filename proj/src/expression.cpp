#include "spraymet/expression.hpp"

#include <cctype>
#include <cstdio>
#include <utility>

namespace spraymet {

namespace {

enum class TokKind { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };

struct Token {
  TokKind kind;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& current() const { return tok_; }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.offset = pos_;
    tok_.text.clear();
    if (pos_ >= text_.size()) {
      tok_.kind = TokKind::kEnd;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '+': tok_.kind = TokKind::kPlus; ++pos_; return;
      case '-': tok_.kind = TokKind::kMinus; ++pos_; return;
      case '*': tok_.kind = TokKind::kStar; ++pos_; return;
      case '/': tok_.kind = TokKind::kSlash; ++pos_; return;
      case '^': tok_.kind = TokKind::kCaret; ++pos_; return;
      case '(': tok_.kind = TokKind::kLParen; ++pos_; return;
      case ')': tok_.kind = TokKind::kRParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t mark = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = mark;  // 'e' belongs to a following identifier, not this number
        }
      }
      tok_.kind = TokKind::kNumber;
      tok_.text = text_.substr(start, pos_ - start);
      tok_.number = std::strtod(tok_.text.c_str(), nullptr);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.kind = TokKind::kIdent;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, int n) : lex_(text), n_(n) {}

  std::vector<ExprNode> run() {
    int root = parse_expr();
    if (lex_.current().kind != TokKind::kEnd) {
      throw SyntaxError("expected operator or end of input", lex_.current().offset);
    }
    (void)root;
    return std::move(nodes_);
  }

 private:
  int push(ExprNode nd) {
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int push_const(double v) { return push({ExprOp::kConstant, v, -1, -1, -1}); }

  int push_var(ExprOp op, int idx0) { return push({op, 0.0, idx0, -1, -1}); }

  int push_unary(ExprOp op, int a) { return push({op, 0.0, -1, a, -1}); }

  int push_binary(ExprOp op, int a, int b) { return push({op, 0.0, -1, a, b}); }

  int parse_expr() {
    int lhs = parse_term();
    while (true) {
      TokKind k = lex_.current().kind;
      if (k == TokKind::kPlus || k == TokKind::kMinus) {
        lex_.advance();
        int rhs = parse_term();
        lhs = push_binary(k == TokKind::kPlus ? ExprOp::kAdd : ExprOp::kSub, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_factor();
    while (true) {
      TokKind k = lex_.current().kind;
      if (k == TokKind::kStar || k == TokKind::kSlash) {
        lex_.advance();
        int rhs = parse_factor();
        lhs = push_binary(k == TokKind::kStar ? ExprOp::kMul : ExprOp::kDiv, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  int parse_factor() {
    if (lex_.current().kind == TokKind::kMinus) {
      lex_.advance();
      return push_unary(ExprOp::kNeg, parse_factor());
    }
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    if (lex_.current().kind == TokKind::kCaret) {
      std::size_t caret_off = lex_.current().offset;
      lex_.advance();
      std::size_t mark = nodes_.size();
      int expo = parse_factor();
      double value = fold_constant(expo, caret_off);
      nodes_.resize(mark);  // drop the exponent subtree, keep the folded value
      return push({ExprOp::kPow, value, -1, base, -1});
    }
    return base;
  }

  double fold_constant(int node, std::size_t offset) const {
    const ExprNode& nd = nodes_[static_cast<std::size_t>(node)];
    switch (nd.op) {
      case ExprOp::kConstant: return nd.value;
      case ExprOp::kNeg: return -fold_constant(nd.a, offset);
      case ExprOp::kAdd: return fold_constant(nd.a, offset) + fold_constant(nd.b, offset);
      case ExprOp::kSub: return fold_constant(nd.a, offset) - fold_constant(nd.b, offset);
      case ExprOp::kMul: return fold_constant(nd.a, offset) * fold_constant(nd.b, offset);
      case ExprOp::kDiv: return exprdetail::eval_div(fold_constant(nd.a, offset), fold_constant(nd.b, offset));
      case ExprOp::kPow: return exprdetail::eval_pow(fold_constant(nd.a, offset), nd.value);
      default:
        throw SyntaxError("exponent must be a real constant", offset);
    }
  }

  int expand_builtin(const std::string& name) {
    int acc = -1;
    for (int i = 0; i < n_; ++i) {
      int lhs = push_var(name[0] == 'y' ? ExprOp::kVarY : ExprOp::kVarX, i);
      int rhs = push_var(name[1] == 'x' ? ExprOp::kVarX : ExprOp::kVarY, i);
      int prod = push_binary(ExprOp::kMul, lhs, rhs);
      acc = (acc < 0) ? prod : push_binary(ExprOp::kAdd, acc, prod);
    }
    return acc;
  }

  int parse_atom() {
    const Token& tok = lex_.current();
    switch (tok.kind) {
      case TokKind::kNumber: {
        double v = tok.number;
        lex_.advance();
        return push_const(v);
      }
      case TokKind::kLParen: {
        lex_.advance();
        int inner = parse_expr();
        if (lex_.current().kind != TokKind::kRParen) {
          throw SyntaxError("expected ')'", lex_.current().offset);
        }
        lex_.advance();
        return inner;
      }
      case TokKind::kIdent: {
        std::string name = tok.text;
        std::size_t off = tok.offset;
        if (name == "xx" || name == "yy" || name == "xy") {
          lex_.advance();
          return expand_builtin(name);
        }
        if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1 &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
          long idx = std::strtol(name.c_str() + 1, nullptr, 10);
          if (idx < 1 || idx > n_) {
            throw IndexError("coordinate index " + std::to_string(idx) + " outside [1, " +
                             std::to_string(n_) + "] in '" + name + "'");
          }
          lex_.advance();
          return push_var(name[0] == 'x' ? ExprOp::kVarX : ExprOp::kVarY, static_cast<int>(idx) - 1);
        }
        ExprOp fn;
        if (name == "sqrt") fn = ExprOp::kSqrt;
        else if (name == "exp") fn = ExprOp::kExp;
        else if (name == "ln") fn = ExprOp::kLog;
        else if (name == "abs") fn = ExprOp::kAbs;
        else if (name == "sin") fn = ExprOp::kSin;
        else if (name == "cos") fn = ExprOp::kCos;
        else throw SyntaxError("unknown identifier '" + name + "'", off);
        lex_.advance();
        if (lex_.current().kind != TokKind::kLParen) {
          throw SyntaxError("expected '(' after function name", lex_.current().offset);
        }
        lex_.advance();
        int arg = parse_expr();
        if (lex_.current().kind != TokKind::kRParen) {
          throw SyntaxError("expected ')'", lex_.current().offset);
        }
        lex_.advance();
        return push_unary(fn, arg);
      }
      default:
        throw SyntaxError("expected number, coordinate, function or '('", tok.offset);
    }
  }

  Lexer lex_;
  int n_;
  std::vector<ExprNode> nodes_;
};

int op_precedence(ExprOp op) {
  switch (op) {
    case ExprOp::kAdd:
    case ExprOp::kSub: return 1;
    case ExprOp::kMul:
    case ExprOp::kDiv: return 2;
    case ExprOp::kNeg: return 3;
    case ExprOp::kPow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const std::vector<ExprNode>& nodes, int idx, std::string& out);

void print_child(const std::vector<ExprNode>& nodes, int idx, int min_prec, std::string& out) {
  bool parens = op_precedence(nodes[static_cast<std::size_t>(idx)].op) < min_prec;
  if (parens) out += '(';
  print_node(nodes, idx, out);
  if (parens) out += ')';
}

void print_node(const std::vector<ExprNode>& nodes, int idx, std::string& out) {
  const ExprNode& nd = nodes[static_cast<std::size_t>(idx)];
  switch (nd.op) {
    case ExprOp::kConstant:
      if (nd.value < 0.0) {
        out += '(' + format_number(nd.value) + ')';
      } else {
        out += format_number(nd.value);
      }
      return;
    case ExprOp::kVarX: out += "x" + std::to_string(nd.index + 1); return;
    case ExprOp::kVarY: out += "y" + std::to_string(nd.index + 1); return;
    case ExprOp::kNeg:
      out += '-';
      print_child(nodes, nd.a, 3, out);
      return;
    case ExprOp::kSqrt: out += "sqrt("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kExp: out += "exp("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kLog: out += "ln("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kAbs: out += "abs("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kSin: out += "sin("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kCos: out += "cos("; print_node(nodes, nd.a, out); out += ')'; return;
    case ExprOp::kAdd:
      print_child(nodes, nd.a, 1, out);
      out += " + ";
      print_child(nodes, nd.b, 2, out);
      return;
    case ExprOp::kSub:
      print_child(nodes, nd.a, 1, out);
      out += " - ";
      print_child(nodes, nd.b, 2, out);
      return;
    case ExprOp::kMul:
      print_child(nodes, nd.a, 2, out);
      out += "*";
      print_child(nodes, nd.b, 3, out);
      return;
    case ExprOp::kDiv:
      print_child(nodes, nd.a, 2, out);
      out += "/";
      print_child(nodes, nd.b, 3, out);
      return;
    case ExprOp::kPow:
      print_child(nodes, nd.a, 5, out);
      out += '^';
      if (nd.value < 0.0) {
        out += '-' + format_number(-nd.value);
      } else {
        out += format_number(nd.value);
      }
      return;
  }
}

// Appends `src` subtree nodes into `dst`, returning the new root index.
int append_nodes(std::vector<ExprNode>& dst, const std::vector<ExprNode>& src) {
  int offset = static_cast<int>(dst.size());
  for (ExprNode nd : src) {
    if (nd.a >= 0) nd.a += offset;
    if (nd.b >= 0) nd.b += offset;
    dst.push_back(nd);
  }
  return static_cast<int>(dst.size()) - 1;
}

}  // namespace

Expression parse(const std::string& text, int n) {
  if (text.empty()) throw SyntaxError("empty expression", 0);
  if (n < 1 || 2 * n > kMaxJetVars) throw Error("expression dimension out of range");
  Parser parser(text, n);
  auto nodes = std::make_shared<std::vector<ExprNode>>(parser.run());
  return Expression(std::move(nodes), n);
}

std::string Expression::to_string() const {
  if (empty()) return "";
  std::string out;
  print_node(*nodes_, static_cast<int>(nodes_->size()) - 1, out);
  return out;
}

Expression Expression::constant(double v, int n) {
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  nodes->push_back({ExprOp::kConstant, v, -1, -1, -1});
  return Expression(std::move(nodes), n);
}

Expression Expression::coordinate_x(int one_based_index, int n) {
  if (one_based_index < 1 || one_based_index > n) throw IndexError("coordinate index out of range");
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  nodes->push_back({ExprOp::kVarX, 0.0, one_based_index - 1, -1, -1});
  return Expression(std::move(nodes), n);
}

Expression Expression::coordinate_y(int one_based_index, int n) {
  if (one_based_index < 1 || one_based_index > n) throw IndexError("coordinate index out of range");
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  nodes->push_back({ExprOp::kVarY, 0.0, one_based_index - 1, -1, -1});
  return Expression(std::move(nodes), n);
}

Expression Expression::unary(ExprOp op, const Expression& a) {
  if (a.empty()) throw Error("unary on empty expression");
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  int ia = append_nodes(*nodes, *a.nodes_);
  nodes->push_back({op, 0.0, -1, ia, -1});
  return Expression(std::move(nodes), a.dim_);
}

Expression Expression::binary(ExprOp op, const Expression& a, const Expression& b) {
  if (a.empty() || b.empty()) throw Error("binary on empty expression");
  if (a.dim_ != b.dim_) throw Error("expression dimensions differ");
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  int ia = append_nodes(*nodes, *a.nodes_);
  int ib = append_nodes(*nodes, *b.nodes_);
  nodes->push_back({op, 0.0, -1, ia, ib});
  return Expression(std::move(nodes), a.dim_);
}

Expression Expression::pow_const(const Expression& a, double exponent) {
  if (a.empty()) throw Error("pow on empty expression");
  auto nodes = std::make_shared<std::vector<ExprNode>>();
  int ia = append_nodes(*nodes, *a.nodes_);
  nodes->push_back({ExprOp::kPow, exponent, -1, ia, -1});
  return Expression(std::move(nodes), a.dim_);
}

}  // namespace spraymet
