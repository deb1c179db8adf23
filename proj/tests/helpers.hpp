#ifndef SPRAYMET_TESTS_HELPERS_HPP
#define SPRAYMET_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "spraymet/expression.hpp"
#include "spraymet/spray.hpp"

namespace spraymet::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Random positively 2-homogeneous polynomial coefficients:
// G^i = sum_{j<=k} c^i_{jk}(x) y^j y^k with affine c^i_{jk}(x).
inline Spray random_polynomial_spray(std::mt19937_64& rng, int n) {
  std::vector<Expression> gs;
  for (int i = 0; i < n; ++i) {
    Expression acc = Expression::constant(0.0, n);
    for (int j = 1; j <= n; ++j) {
      for (int k = j; k <= n; ++k) {
        Expression coef = Expression::constant(uniform(rng, -0.4, 0.4), n);
        for (int m = 1; m <= n; ++m) {
          Expression lin = Expression::binary(ExprOp::kMul,
                                              Expression::constant(uniform(rng, -0.3, 0.3), n),
                                              Expression::coordinate_x(m, n));
          coef = Expression::binary(ExprOp::kAdd, coef, lin);
        }
        Expression quad = Expression::binary(ExprOp::kMul, Expression::coordinate_y(j, n),
                                             Expression::coordinate_y(k, n));
        acc = Expression::binary(ExprOp::kAdd, acc,
                                 Expression::binary(ExprOp::kMul, coef, quad));
      }
    }
    gs.push_back(acc);
  }
  return Spray::from_expressions(std::move(gs));
}

inline PhasePoint random_phase_point(std::mt19937_64& rng, int n) {
  std::vector<double> x, y;
  for (int i = 0; i < n; ++i) x.push_back(uniform(rng, -0.8, 0.8));
  for (int i = 0; i < n; ++i) {
    double v = uniform(rng, 0.3, 1.4);
    y.push_back(rng() & 1 ? v : -v);
  }
  return PhasePoint(std::move(x), std::move(y));
}

// x'' coefficients of the worked 2D systems.
inline Spray degenerate_spray() {
  return Spray::from_expressions({parse("y1*y2", 2), parse("0 - y2^2/2", 2)},
                                 {parse("y2", 2)});
}

inline Spray nonmetrizable_spray() {
  return Spray::from_expressions({parse("(y1^2 + y2^2)/2", 2), parse("2*y1*y2", 2)});
}

// Affine family G^1 = phi(x) (y1)^2 / 2, G^2 = psi(x) (y2)^2 / 2.
inline Spray affine_spray(const std::string& phi, const std::string& psi) {
  return Spray::from_expressions(
      {parse("(" + phi + ")*y1^2/2", 2), parse("(" + psi + ")*y2^2/2", 2)},
      {parse("y1", 2), parse("y2", 2)});
}

}  // namespace spraymet::testing

#endif
