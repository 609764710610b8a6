/// @file test_expression.cpp
/// Parser and evaluator for the scalar expression language used by metric
/// embeddings, flux components, and initial data.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mclaw/expression.hpp"
#include "mclaw/util.hpp"

using namespace mclaw;

namespace {

double eval1(const std::string& text, double r1 = 0.0, double r2 = 0.0, double t = 0.0,
             double u = 0.0) {
  VarEnv env;
  env.r1 = r1;
  env.r2 = r2;
  env.t = t;
  env.u = u;
  return Expression::parse(text).eval(env);
}

}  // namespace

// ============================================================================
// Arithmetic and precedence
// ============================================================================

TEST_CASE("arithmetic follows standard precedence") {
  CHECK(eval1("1 + 2*3") == doctest::Approx(7.0));
  CHECK(eval1("(1 + 2)*3") == doctest::Approx(9.0));
  CHECK(eval1("2^3^2") == doctest::Approx(512.0));  // right associative
  CHECK(eval1("-2^2") == doctest::Approx(4.0));     // unary sign binds before ^
  CHECK(eval1("10 - 4 - 3") == doctest::Approx(3.0));
  CHECK(eval1("7/2/2") == doctest::Approx(1.75));
}

TEST_CASE("variables and constants are bound from the environment") {
  CHECK(eval1("r1 + 2*r2 - t + u", 0.25, 0.5, 1.0, 4.0) == doctest::Approx(4.25));
  CHECK(eval1("pi") == doctest::Approx(3.14159265358979323846));
  CHECK(eval1("e") == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("function library covers the analytic building blocks") {
  CHECK(eval1("sin(pi/2)") == doctest::Approx(1.0));
  CHECK(eval1("cos(0)") == doctest::Approx(1.0));
  CHECK(eval1("exp(1)") == doctest::Approx(std::exp(1.0)));
  CHECK(eval1("sqrt(16)") == doctest::Approx(4.0));
  CHECK(eval1("abs(-3.5)") == doctest::Approx(3.5));
  CHECK(eval1("floor(2.9)") == doctest::Approx(2.0));
  CHECK(eval1("ceil(2.1)") == doctest::Approx(3.0));
  CHECK(eval1("sign(-7)") == doctest::Approx(-1.0));
  CHECK(eval1("min(2, 3)") == doctest::Approx(2.0));
  CHECK(eval1("max(2, 3)") == doctest::Approx(3.0));
  CHECK(eval1("mod(2.5, 1)") == doctest::Approx(0.5));
  CHECK(eval1("pow(2, 10)") == doctest::Approx(1024.0));
  CHECK(eval1("atan2(1, 1)") == doctest::Approx(std::atan2(1.0, 1.0)));
  CHECK(eval1("log(e)") == doctest::Approx(1.0));
}

TEST_CASE("riemann step data via floor stays exact at cell centers") {
  // 1 - 2*floor(2*r1): value 1 on [0, 0.5), -1 on [0.5, 1).
  CHECK(eval1("1 - 2*floor(2*r1)", 0.25) == doctest::Approx(1.0));
  CHECK(eval1("1 - 2*floor(2*r1)", 0.75) == doctest::Approx(-1.0));
}

// ============================================================================
// Error handling
// ============================================================================

TEST_CASE("parse errors identify the offending token") {
  CHECK_THROWS_AS(Expression::parse("1 +"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("sin(1"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("nosuchfn(1)"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("bogusvar + 1"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse(""), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("min(1)"), ExpressionError);  // arity
}

TEST_CASE("restricted variable sets reject out-of-scope names") {
  CHECK_NOTHROW(Expression::parse("sin(2*pi*r1)", {"r1", "r2"}));
  CHECK_THROWS_AS(Expression::parse("u + 1", {"r1", "r2", "t"}), ExpressionError);
}
