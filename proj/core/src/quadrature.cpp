#include "mclaw/quadrature.hpp"

#include <string>

namespace mclaw {
namespace {

// Gauss-Legendre abscissae/weights on [-1,1], shifted once to [0,1] below.
// Values are the standard tabulated ones to 16 digits.
struct RawRule {
  std::array<double, 8> x;
  std::array<double, 8> w;
  int n;
};

constexpr RawRule kRaw[] = {
    {{0.0}, {2.0}, 1},
    {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}, 2},
    {{-0.7745966692414834, 0.0, 0.7745966692414834},
     {0.5555555555555556, 0.8888888888888888, 0.5555555555555556},
     3},
    {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
     {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538},
     4},
    {{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640},
     {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
      0.2369268850561891},
     5},
    {{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969, 0.2386191860831969,
      0.6612093864662645, 0.9324695142031521},
     {0.1713244923791704, 0.3607615730481386, 0.4679139345726910, 0.4679139345726910,
      0.3607615730481386, 0.1713244923791704},
     6},
    {{-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0, 0.4058451513773972,
      0.7415311855993945, 0.9491079123427585},
     {0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
      0.3818300505051189, 0.2797053914892766, 0.1294849661688697},
     7},
    {{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
      0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
     {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
      0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763},
     8},
};

struct ShiftedStorage {
  std::array<double, 8> nodes;
  std::array<double, 8> weights;
};

}  // namespace

const GaussRule& gauss_rule(int order) {
  // Shifted tables live for the program lifetime; the views alias them.
  static const std::array<ShiftedStorage, 8> storage = [] {
    std::array<ShiftedStorage, 8> s{};
    for (int i = 0; i < 8; ++i) {
      for (int q = 0; q < kRaw[i].n; ++q) {
        s[i].nodes[q] = 0.5 * (kRaw[i].x[q] + 1.0);
        s[i].weights[q] = 0.5 * kRaw[i].w[q];
      }
    }
    return s;
  }();
  static const std::array<GaussRule, 8> views = [] {
    std::array<GaussRule, 8> v{};
    for (int i = 0; i < 8; ++i) {
      v[i] = {std::span<const double>(storage[i].nodes.data(), kRaw[i].n),
              std::span<const double>(storage[i].weights.data(), kRaw[i].n)};
    }
    return v;
  }();
  if (order < 1 || order > 8) {
    throw ConfigError("quadrature_order must be between 1 and 8, got " + std::to_string(order));
  }
  return views[order - 1];
}

}  // namespace mclaw
