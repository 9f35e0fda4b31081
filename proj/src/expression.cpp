#include "dcreg/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "dcreg/error.hpp"
#include "dcreg/text.hpp"

namespace dcreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Lt, Le, Gt, Ge, End };
  Type type = Type::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::string where(int line, int column) { return std::to_string(line) + ":" + std::to_string(column); }

[[noreturn]] void fail_at(ErrorCode code, int line, int column, const std::string& msg) {
  fail(code, where(line, column) + ": " + msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.type = Token::Type::Number;
      t.text = std::string(src.substr(i, j - i));
      try {
        t.number = parse_double(t.text);
      } catch (const Error&) {
        fail_at(ErrorCode::SyntaxError, line, col, "malformed number '" + t.text + "'");
      }
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Token::Type::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      std::size_t len = 1;
      switch (c) {
        case '+': t.type = Token::Type::Plus; break;
        case '-': t.type = Token::Type::Minus; break;
        case '*': t.type = Token::Type::Star; break;
        case '/': t.type = Token::Type::Slash; break;
        case '^': t.type = Token::Type::Caret; break;
        case '(': t.type = Token::Type::LParen; break;
        case ')': t.type = Token::Type::RParen; break;
        case ',': t.type = Token::Type::Comma; break;
        case '<':
        case '>': {
          const bool eq = i + 1 < src.size() && src[i + 1] == '=';
          len = eq ? 2 : 1;
          t.type = c == '<' ? (eq ? Token::Type::Le : Token::Type::Lt) : (eq ? Token::Type::Ge : Token::Type::Gt);
          break;
        }
        default: fail_at(ErrorCode::SyntaxError, line, col, std::string("unexpected character '") + c + "'");
      }
      t.text = std::string(src.substr(i, len));
      advance(len);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct FuncInfo {
  const char* name;
  ExprNode::Func func;
  std::size_t min_args;
  std::size_t max_args;
};

constexpr FuncInfo kFuncs[] = {
    {"abs", ExprNode::Func::Abs, 1, 1},  {"sqrt", ExprNode::Func::Sqrt, 1, 1},
    {"exp", ExprNode::Func::Exp, 1, 1},  {"sin", ExprNode::Func::Sin, 1, 1},
    {"cos", ExprNode::Func::Cos, 1, 1},  {"min", ExprNode::Func::Min, 2, 2},
    {"max", ExprNode::Func::Max, 2, 2},  {"norm", ExprNode::Func::Norm, 1, 2},
};

const FuncInfo& func_info(ExprNode::Func f) {
  for (const auto& info : kFuncs)
    if (info.func == f) return info;
  return kFuncs[0];
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int dim) : toks_(std::move(toks)), dim_(dim) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_additive();
    const Token& t = peek();
    if (t.type != Token::Type::End) {
      if (is_cmp(t.type))
        fail_at(ErrorCode::SyntaxError, t.line, t.column, "comparisons are only allowed as an if condition");
      fail_at(ErrorCode::SyntaxError, t.line, t.column, "unexpected '" + t.text + "'");
    }
    return e;
  }

 private:
  static bool is_cmp(Token::Type t) {
    return t == Token::Type::Lt || t == Token::Type::Le || t == Token::Type::Gt || t == Token::Type::Ge;
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void expect(Token::Type type, const char* what) {
    const Token& t = peek();
    if (t.type != type && is_cmp(t.type))
      fail_at(ErrorCode::SyntaxError, t.line, t.column, "comparisons are only allowed as an if condition");
    if (t.type != type)
      fail_at(ErrorCode::SyntaxError, t.line, t.column,
              std::string("expected ") + what + (t.type == Token::Type::End ? " before end of input" : " before '" + t.text + "'"));
    next();
  }

  static std::shared_ptr<ExprNode> node(ExprNode::Kind kind, const Token& at) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->line = at.line;
    n->column = at.column;
    return n;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
      const Token& op = next();
      auto n = node(ExprNode::Kind::Binary, op);
      n->op = op.type == Token::Type::Plus ? ExprNode::Op::Add : ExprNode::Op::Sub;
      n->args = {lhs, parse_multiplicative()};
      lhs = n;
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (peek().type == Token::Type::Star || peek().type == Token::Type::Slash) {
      const Token& op = next();
      auto n = node(ExprNode::Kind::Binary, op);
      n->op = op.type == Token::Type::Star ? ExprNode::Op::Mul : ExprNode::Op::Div;
      n->args = {lhs, parse_unary()};
      lhs = n;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek().type == Token::Type::Minus) {
      const Token& op = next();
      auto n = node(ExprNode::Kind::Negate, op);
      n->args = {parse_unary()};
      return n;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (peek().type != Token::Type::Caret) return base;
    const Token& op = next();
    auto n = node(ExprNode::Kind::Binary, op);
    n->op = ExprNode::Op::Pow;
    n->args = {base, parse_unary()};
    return n;
  }

  ExprPtr parse_branch() {
    if (peek().type == Token::Type::Ident && peek().text == "inf" &&
        (peek(1).type == Token::Type::Comma || peek(1).type == Token::Type::RParen))
      return node(ExprNode::Kind::Infinity, next());
    return parse_additive();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Number: {
        auto n = node(ExprNode::Kind::Number, next());
        n->number = t.number;
        return n;
      }
      case Token::Type::LParen: {
        next();
        ExprPtr e = parse_additive();
        expect(Token::Type::RParen, "')'");
        return e;
      }
      case Token::Type::Ident: return parse_identifier();
      case Token::Type::End: fail_at(ErrorCode::SyntaxError, t.line, t.column, "unexpected end of input");
      default: fail_at(ErrorCode::SyntaxError, t.line, t.column, "unexpected '" + t.text + "'");
    }
  }

  ExprPtr parse_identifier() {
    const Token id = next();
    if (id.text == "x" || (id.text == "y" && dim_ == 2)) {
      auto n = node(ExprNode::Kind::Variable, id);
      n->variable = id.text == "x" ? 0 : 1;
      return n;
    }
    if (id.text == "inf")
      fail_at(ErrorCode::SyntaxError, id.line, id.column, "inf is only allowed as a branch of if(...)");
    if (id.text == "if") return parse_if(id);
    if (peek().type != Token::Type::LParen) {
      if (id.text == "y") fail_at(ErrorCode::UnknownIdentifier, id.line, id.column, "y is not a variable of a 1D function");
      fail_at(ErrorCode::UnknownIdentifier, id.line, id.column, "unknown identifier '" + id.text + "'");
    }
    const FuncInfo* info = nullptr;
    for (const auto& f : kFuncs)
      if (id.text == f.name) info = &f;
    if (!info) fail_at(ErrorCode::UnknownIdentifier, id.line, id.column, "unknown function '" + id.text + "'");
    next();
    auto n = node(ExprNode::Kind::Call, id);
    n->func = info->func;
    if (peek().type != Token::Type::RParen) {
      n->args.push_back(parse_additive());
      while (peek().type == Token::Type::Comma) {
        next();
        n->args.push_back(parse_additive());
      }
    }
    expect(Token::Type::RParen, "')'");
    if (n->args.size() < info->min_args || n->args.size() > info->max_args)
      fail_at(ErrorCode::ArityMismatch, id.line, id.column,
              id.text + " takes " + std::to_string(info->min_args) +
                  (info->max_args != info->min_args ? " or " + std::to_string(info->max_args) : "") +
                  " argument(s), got " + std::to_string(n->args.size()));
    return n;
  }

  ExprPtr parse_if(const Token& id) {
    expect(Token::Type::LParen, "'(' after if");
    auto n = node(ExprNode::Kind::Conditional, id);
    ExprPtr lhs = parse_additive();
    const Token& c = peek();
    if (!is_cmp(c.type)) fail_at(ErrorCode::SyntaxError, c.line, c.column, "expected a comparison in if condition");
    next();
    n->cmp = c.type == Token::Type::Lt   ? ExprNode::Cmp::Lt
             : c.type == Token::Type::Le ? ExprNode::Cmp::Le
             : c.type == Token::Type::Gt ? ExprNode::Cmp::Gt
                                         : ExprNode::Cmp::Ge;
    ExprPtr rhs = parse_additive();
    expect(Token::Type::Comma, "','");
    ExprPtr a = parse_branch();
    expect(Token::Type::Comma, "','");
    ExprPtr b = parse_branch();
    expect(Token::Type::RParen, "')'");
    n->args = {lhs, rhs, a, b};
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int dim_;
};

[[noreturn]] void eval_fail(const ExprNode& n, const std::string& msg) {
  fail_at(ErrorCode::EvaluationError, n.line, n.column, msg);
}

double eval_node(const ExprNode& n, const Point& p) {
  switch (n.kind) {
    case ExprNode::Kind::Number: return n.number;
    case ExprNode::Kind::Infinity: return kInf;
    case ExprNode::Kind::Variable: return p[n.variable];
    case ExprNode::Kind::Negate: {
      const double v = eval_node(*n.args[0], p);
      if (v == kInf) eval_fail(n, "negation of +inf");
      return -v;
    }
    case ExprNode::Kind::Binary: {
      const double a = eval_node(*n.args[0], p);
      const double b = eval_node(*n.args[1], p);
      double r = 0.0;
      switch (n.op) {
        case ExprNode::Op::Add: r = a + b; break;
        case ExprNode::Op::Sub:
          if (b == kInf) eval_fail(n, "subtraction of +inf");
          r = a - b;
          break;
        case ExprNode::Op::Mul: r = a * b; break;
        case ExprNode::Op::Div:
          if (b == 0.0) eval_fail(n, "division by zero");
          r = a / b;
          break;
        case ExprNode::Op::Pow: r = std::pow(a, b); break;
      }
      if (std::isnan(r) || r == -kInf) eval_fail(n, "undefined arithmetic result");
      if (r == kInf && std::isfinite(a) && std::isfinite(b)) eval_fail(n, "overflow");
      return r;
    }
    case ExprNode::Kind::Call: {
      std::vector<double> v;
      for (const auto& a : n.args) v.push_back(eval_node(*a, p));
      double r = 0.0;
      switch (n.func) {
        case ExprNode::Func::Abs: r = std::abs(v[0]); break;
        case ExprNode::Func::Sqrt:
          if (v[0] < 0.0) eval_fail(n, "sqrt of a negative number");
          r = std::sqrt(v[0]);
          break;
        case ExprNode::Func::Exp: r = std::exp(v[0]); break;
        case ExprNode::Func::Sin: r = std::sin(v[0]); break;
        case ExprNode::Func::Cos: r = std::cos(v[0]); break;
        case ExprNode::Func::Min: r = std::min(v[0], v[1]); break;
        case ExprNode::Func::Max: r = std::max(v[0], v[1]); break;
        case ExprNode::Func::Norm: r = v.size() == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]); break;
      }
      if (std::isnan(r)) eval_fail(n, std::string(func_info(n.func).name) + " of +inf");
      if (r == kInf && std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }))
        eval_fail(n, "overflow");
      return r;
    }
    case ExprNode::Kind::Conditional: {
      const double a = eval_node(*n.args[0], p);
      const double b = eval_node(*n.args[1], p);
      bool c = false;
      switch (n.cmp) {
        case ExprNode::Cmp::Lt: c = a < b; break;
        case ExprNode::Cmp::Le: c = a <= b; break;
        case ExprNode::Cmp::Gt: c = a > b; break;
        case ExprNode::Cmp::Ge: c = a >= b; break;
      }
      return eval_node(*n.args[c ? 2 : 3], p);
    }
  }
  return 0.0;
}

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Binary:
      switch (n.op) {
        case ExprNode::Op::Add:
        case ExprNode::Op::Sub: return 1;
        case ExprNode::Op::Mul:
        case ExprNode::Op::Div: return 2;
        case ExprNode::Op::Pow: return 4;
      }
      return 1;
    case ExprNode::Kind::Negate: return 3;
    default: return 5;
  }
}

void print(const ExprNode& n, int min_prec, std::string& out) {
  const bool paren = precedence(n) < min_prec;
  if (paren) out += '(';
  switch (n.kind) {
    case ExprNode::Kind::Number: out += format_double(n.number); break;
    case ExprNode::Kind::Infinity: out += "inf"; break;
    case ExprNode::Kind::Variable: out += n.variable == 0 ? "x" : "y"; break;
    case ExprNode::Kind::Negate:
      out += '-';
      print(*n.args[0], 3, out);
      break;
    case ExprNode::Kind::Binary: {
      const int p = precedence(n);
      static const char* const kOps[] = {" + ", " - ", " * ", " / ", "^"};
      if (n.op == ExprNode::Op::Pow) {
        print(*n.args[0], 5, out);
        out += kOps[static_cast<int>(n.op)];
        print(*n.args[1], 3, out);
      } else {
        print(*n.args[0], p, out);
        out += kOps[static_cast<int>(n.op)];
        print(*n.args[1], p + 1, out);
      }
      break;
    }
    case ExprNode::Kind::Call:
      out += func_info(n.func).name;
      out += '(';
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k) out += ", ";
        print(*n.args[k], 0, out);
      }
      out += ')';
      break;
    case ExprNode::Kind::Conditional: {
      static const char* const kCmp[] = {" < ", " <= ", " > ", " >= "};
      out += "if(";
      print(*n.args[0], 0, out);
      out += kCmp[static_cast<int>(n.cmp)];
      print(*n.args[1], 0, out);
      out += ", ";
      print(*n.args[2], 0, out);
      out += ", ";
      print(*n.args[3], 0, out);
      out += ')';
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprNode::Kind::Number:
      if (a.number != b.number || std::signbit(a.number) != std::signbit(b.number)) return false;
      break;
    case ExprNode::Kind::Variable:
      if (a.variable != b.variable) return false;
      break;
    case ExprNode::Kind::Binary:
      if (a.op != b.op) return false;
      break;
    case ExprNode::Kind::Call:
      if (a.func != b.func) return false;
      break;
    case ExprNode::Kind::Conditional:
      if (a.cmp != b.cmp) return false;
      break;
    default: break;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k)
    if (!same_tree(*a.args[k], *b.args[k])) return false;
  return true;
}

Expression Expression::parse(std::string_view source, int dim) {
  if (dim != 1 && dim != 2) fail(ErrorCode::InvalidArgument, "expression dimension must be 1 or 2");
  Parser p(lex(source), dim);
  return Expression(p.parse_all(), dim);
}

ExtReal Expression::eval(const Point& p) const { return ExtReal(eval_node(*root_, p)); }

std::string to_string(const ExprNode& node) {
  std::string out;
  print(node, 0, out);
  return out;
}

std::string Expression::to_string() const { return dcreg::to_string(*root_); }

GridFunction Expression::sample(const Grid& grid) const {
  if (grid.dim() > dim_) fail(ErrorCode::DimensionMismatch, "expression parsed for 1D but grid is 2D");
  return GridFunction::sample(grid, [this](const Point& p) { return eval(p); });
}

}  // namespace dcreg
