#pragma once

#include <array>
#include <span>

#include "mclaw/util.hpp"

namespace mclaw {

/// Gauss-Legendre rule mapped to the reference interval [0,1].
/// Orders 1 through 8 are tabulated; weights sum to 1.
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

const GaussRule& gauss_rule(int order);

/// Integral of f over [a,b] with the given rule.
template <class F>
double gauss_integrate(const GaussRule& rule, double a, double b, F&& f) {
  const double len = b - a;
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    acc += rule.weights[q] * f(a + rule.nodes[q] * len);
  }
  return acc * len;
}

}  // namespace mclaw
