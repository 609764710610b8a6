#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "mclaw/util.hpp"

namespace mclaw {

/// Raised on malformed expression text; the message carries the character
/// position of the offending token.
class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variables an expression may read. Unset variables evaluate as 0.
struct VarEnv {
  double r1 = 0.0;
  double r2 = 0.0;
  double t = 0.0;
  double u = 0.0;
};

/// A small arithmetic expression over the variables r1, r2, t, u.
///
/// Grammar (usual precedence, ^ binds tightest and associates right):
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := unary ('^' factor)?
///   unary   := ('+'|'-') unary | primary
///   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Names: variables r1 r2 t u; constants pi e; one-argument functions sin cos
/// tan asin acos atan sinh cosh tanh exp log log10 sqrt abs sign floor ceil;
/// two-argument functions pow min max mod atan2.
class Expression {
 public:
  Expression() = default;

  /// Parses text; throws ExpressionError on bad syntax or unknown names.
  static Expression parse(std::string_view text);

  /// Parses and additionally rejects variables outside `allowed` so that, for
  /// example, an initial-data expression cannot silently read u.
  static Expression parse(std::string_view text, const std::set<std::string>& allowed);

  double eval(const VarEnv& env) const;

  /// Variables that actually occur in the expression.
  const std::set<std::string>& variables() const { return vars_; }
  bool uses(const std::string& var) const { return vars_.count(var) > 0; }

  const std::string& text() const { return text_; }
  bool empty() const { return node_ == nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> node_;
  std::set<std::string> vars_;
  std::string text_;
};

}  // namespace mclaw
