#include "mclaw/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <vector>

namespace mclaw {

namespace {

enum class NodeKind { Constant, Variable, Unary, Binary, Call1, Call2 };

enum class VarId { R1, R2, T, U };

double apply_call1(int fn, double a) {
  switch (fn) {
    case 0: return std::sin(a);
    case 1: return std::cos(a);
    case 2: return std::tan(a);
    case 3: return std::asin(a);
    case 4: return std::acos(a);
    case 5: return std::atan(a);
    case 6: return std::sinh(a);
    case 7: return std::cosh(a);
    case 8: return std::tanh(a);
    case 9: return std::exp(a);
    case 10: return std::log(a);
    case 11: return std::log10(a);
    case 12: return std::sqrt(a);
    case 13: return std::abs(a);
    case 14: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    case 15: return std::floor(a);
    case 16: return std::ceil(a);
    default: return 0.0;
  }
}

double apply_call2(int fn, double a, double b) {
  switch (fn) {
    case 0: return std::pow(a, b);
    case 1: return std::min(a, b);
    case 2: return std::max(a, b);
    case 3: return a - b * std::floor(b != 0.0 ? a / b : 0.0);
    case 4: return std::atan2(a, b);
    default: return 0.0;
  }
}

const std::map<std::string, int, std::less<>>& call1_table() {
  static const std::map<std::string, int, std::less<>> table = {
      {"sin", 0},  {"cos", 1},  {"tan", 2},   {"asin", 3},  {"acos", 4},
      {"atan", 5}, {"sinh", 6}, {"cosh", 7},  {"tanh", 8},  {"exp", 9},
      {"log", 10}, {"log10", 11}, {"sqrt", 12}, {"abs", 13}, {"sign", 14},
      {"floor", 15}, {"ceil", 16}};
  return table;
}

const std::map<std::string, int, std::less<>>& call2_table() {
  static const std::map<std::string, int, std::less<>> table = {
      {"pow", 0}, {"min", 1}, {"max", 2}, {"mod", 3}, {"atan2", 4}};
  return table;
}

}  // namespace

struct Expression::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;          // Constant
  VarId var = VarId::R1;       // Variable
  char op = 0;                 // Unary ('-') and Binary ('+','-','*','/','^')
  int fn = 0;                  // Call1 / Call2
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;

  double eval(const VarEnv& env) const {
    switch (kind) {
      case NodeKind::Constant:
        return value;
      case NodeKind::Variable:
        switch (var) {
          case VarId::R1: return env.r1;
          case VarId::R2: return env.r2;
          case VarId::T: return env.t;
          case VarId::U: return env.u;
        }
        return 0.0;
      case NodeKind::Unary:
        return -a->eval(env);
      case NodeKind::Binary: {
        const double x = a->eval(env);
        const double y = b->eval(env);
        switch (op) {
          case '+': return x + y;
          case '-': return x - y;
          case '*': return x * y;
          case '/': return x / y;
          case '^': return std::pow(x, y);
        }
        return 0.0;
      }
      case NodeKind::Call1:
        return apply_call1(fn, a->eval(env));
      case NodeKind::Call2:
        return apply_call2(fn, a->eval(env), b->eval(env));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = v;
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::set<std::string>* vars)
      : text_(text), vars_(vars) {}

  NodePtr run() {
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression error at position " + std::to_string(pos_) +
                          " in \"" + std::string(text_) + "\": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      NodePtr rhs = parse_term();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Binary;
      n->op = c;
      n->a = lhs;
      n->b = rhs;
      lhs = n;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      NodePtr rhs = parse_factor();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Binary;
      n->op = c;
      n->a = lhs;
      n->b = rhs;
      lhs = n;
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (peek() == '^') {
      ++pos_;
      NodePtr exponent = parse_factor();  // right associative
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Binary;
      n->op = '^';
      n->a = base;
      n->b = exponent;
      return n;
    }
    return base;
  }

  NodePtr parse_unary() {
    char c = peek();
    if (c == '+') {
      ++pos_;
      return parse_unary();
    }
    if (c == '-') {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Unary;
      n->op = '-';
      n->a = parse_unary();
      return n;
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make_constant(v);
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return make_constant(3.14159265358979323846);
    if (name == "e") return make_constant(2.71828182845904523536);

    if (peek() == '(') {
      ++pos_;
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      if (auto it = call1_table().find(name); it != call1_table().end()) {
        if (args.size() != 1) fail("function '" + name + "' takes 1 argument");
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Call1;
        n->fn = it->second;
        n->a = args[0];
        return n;
      }
      if (auto it = call2_table().find(name); it != call2_table().end()) {
        if (args.size() != 2) fail("function '" + name + "' takes 2 arguments");
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Call2;
        n->fn = it->second;
        n->a = args[0];
        n->b = args[1];
        return n;
      }
      fail("unknown function '" + name + "'");
    }

    VarId id;
    if (name == "r1") id = VarId::R1;
    else if (name == "r2") id = VarId::R2;
    else if (name == "t") id = VarId::T;
    else if (name == "u") id = VarId::U;
    else fail("unknown name '" + name + "'");
    vars_->insert(name);
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->var = id;
    return n;
  }

  std::string_view text_;
  std::set<std::string>* vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  Parser parser(text, &e.vars_);
  e.node_ = parser.run();
  return e;
}

Expression Expression::parse(std::string_view text, const std::set<std::string>& allowed) {
  Expression e = parse(text);
  for (const auto& v : e.vars_) {
    if (!allowed.count(v)) {
      throw ExpressionError("expression \"" + std::string(text) + "\" uses variable '" + v +
                            "' which is not available in this context");
    }
  }
  return e;
}

double Expression::eval(const VarEnv& env) const {
  if (!node_) throw ExpressionError("evaluating an empty expression");
  return node_->eval(env);
}

}  // namespace mclaw
