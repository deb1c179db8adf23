#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "helpers.hpp"
#include "spraymet/geometry.hpp"
#include "spraymet/hilbert.hpp"

using namespace spraymet;
using namespace spraymet::testing;

namespace {

Expression klein_p() { return parse("xy/(1 - xx)", 2); }
Expression numata_p() { return parse("yy/(2*(sqrt(yy) + xy))", 2); }

double eval(const Expression& e, const PhasePoint& p) {
  return e.evaluate<double>(std::span<const double>(p.x), std::span<const double>(p.y));
}

// Random basic polynomial g(x) of degree <= 3 together with its exact
// gradient, both as expressions, so P = y^i dg/dx^i is available in
// closed form.
struct PolyGenerator {
  Expression g;
  Expression P;
};

PolyGenerator random_poly_generator(std::mt19937_64& rng, int n) {
  auto monomial = [&](const std::vector<int>& exps) {
    Expression m = Expression::constant(1.0, n);
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < exps[static_cast<std::size_t>(v)]; ++e) {
        m = Expression::binary(ExprOp::kMul, m, Expression::coordinate_x(v + 1, n));
      }
    }
    return m;
  };
  Expression g = Expression::constant(0.0, n);
  std::vector<Expression> grad(static_cast<std::size_t>(n), Expression::constant(0.0, n));
  std::vector<int> exps(static_cast<std::size_t>(n), 0);

  std::vector<std::vector<int>> all;
  std::function<void(int, int)> enumerate = [&](int var, int budget) {
    if (var == n) {
      all.push_back(exps);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      exps[static_cast<std::size_t>(var)] = e;
      enumerate(var + 1, budget - e);
    }
    exps[static_cast<std::size_t>(var)] = 0;
  };
  enumerate(0, 3);

  for (const auto& mono : all) {
    double c = uniform(rng, -0.3, 0.3);
    Expression term = Expression::binary(ExprOp::kMul, Expression::constant(c, n), monomial(mono));
    g = Expression::binary(ExprOp::kAdd, g, term);
    for (int v = 0; v < n; ++v) {
      if (mono[static_cast<std::size_t>(v)] == 0) continue;
      std::vector<int> lowered = mono;
      lowered[static_cast<std::size_t>(v)] -= 1;
      Expression dterm = Expression::binary(
          ExprOp::kMul,
          Expression::constant(c * mono[static_cast<std::size_t>(v)], n), monomial(lowered));
      grad[static_cast<std::size_t>(v)] =
          Expression::binary(ExprOp::kAdd, grad[static_cast<std::size_t>(v)], dterm);
    }
  }
  Expression P = Expression::constant(0.0, n);
  for (int v = 0; v < n; ++v) {
    P = Expression::binary(ExprOp::kAdd, P,
                           Expression::binary(ExprOp::kMul, Expression::coordinate_y(v + 1, n),
                                              grad[static_cast<std::size_t>(v)]));
  }
  return {g, P};
}

}  // namespace

TEST_CASE("zero projective factor reproduces the flat spray") {
  Spray s = deform_flat(ProjectiveFactor{parse("0*y1", 2)});
  PhasePoint p({0.4, -0.1}, {1.0, 2.0});
  for (double v : s.coefficients(p)) CHECK(v == 0.0);
}

TEST_CASE("Numata deformation carries the expected fiber coefficients") {
  Spray s = deform_flat(ProjectiveFactor{numata_p()});
  Expression closed = parse("yy*y1/(2*(sqrt(yy) + xy))", 2);
  Expression closed2 = parse("yy*y2/(2*(sqrt(yy) + xy))", 2);
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)},
                 {uniform(rng, 0.4, 1.4), uniform(rng, 0.4, 1.4)});
    auto g = s.coefficients(p);
    CHECK(g[0] == doctest::Approx(eval(closed, p)).epsilon(1e-13));
    CHECK(g[1] == doctest::Approx(eval(closed2, p)).epsilon(1e-13));
  }
}

TEST_CASE("projective factors built as S0(g) are 1-homogeneous") {
  std::mt19937_64 rng(72);
  PolyGenerator pg = random_poly_generator(rng, 2);
  ProjectiveFactor pf{pg.P};
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p = random_phase_point(rng, 2);
    CHECK(projective_homogeneity_residual(pf, p) <= 1e-12);
  }
  ProjectiveFactor klein{klein_p()};
  PhasePoint p({0.2, -0.4}, {0.8, 0.9});
  CHECK(projective_homogeneity_residual(klein, p) <= 1e-12);
  CHECK(homogeneity_residual(deform_flat(klein, {parse("0.81 - xx", 2)}), p) <= 1e-12);
}

TEST_CASE("jacobi_projective reproduces the closed-form rho") {
  // Numata: rho = 3 P^2.
  ProjectiveFactor numata{numata_p()};
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)},
                 {uniform(rng, 0.4, 1.4), uniform(rng, 0.4, 1.4)});
    ProjectiveJacobi pj = jacobi_projective(numata, p);
    double pval = eval(numata_p(), p);
    CHECK(pj.rho == doctest::Approx(3.0 * pval * pval).epsilon(1e-12));
  }
  // Disk factor: rho = -(|y|^2 (1 - |x|^2) + <x,y>^2)/(1 - |x|^2)^2.
  ProjectiveFactor klein{klein_p()};
  Expression rho_closed = parse("0 - (yy*(1 - xx) + xy^2)/(1 - xx)^2", 2);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.4, 1.5)});
    ProjectiveJacobi pj = jacobi_projective(klein, p);
    CHECK(pj.rho == doctest::Approx(eval(rho_closed, p)).epsilon(1e-11));
  }
}

TEST_CASE("two-pipeline agreement: closed-form projective Jacobi data vs the generic pipeline") {
  std::mt19937_64 rng(74);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    PolyGenerator pg = random_poly_generator(rng, 2);
    ProjectiveFactor pf{pg.P};
    Spray s = deform_flat(pf);
    for (int k = 0; k < 3; ++k) {
      PhasePoint p = random_phase_point(rng, 2);
      ProjectiveJacobi direct = jacobi_projective(pf, p);
      IsotropyData iso = isotropy(s, p, 1e-6);
      CurvatureData jac = jacobi(s, p);
      double scale = 1.0;
      for (double v : direct.Phi) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(direct.Phi[static_cast<std::size_t>(i)] -
                                         jac.Phi[static_cast<std::size_t>(i)]) / scale);
      }
      worst = std::max(worst, std::abs(direct.rho - iso.rho) / scale);
      for (int i = 0; i < 2; ++i) {
        worst = std::max(worst, std::abs(direct.alpha[static_cast<std::size_t>(i)] -
                                         iso.alpha[static_cast<std::size_t>(i)]) / scale);
      }
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("generator conditions vanish for the constant-curvature generators") {
  GeneratorFunction disk{parse("0 - ln(sqrt(1 - xx))", 2), GeneratorFunction::Kind::kBasic};
  GeneratorFunction pos{parse("0 - ln(sqrt(1 + xx))", 2), GeneratorFunction::Kind::kBasic};
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 1.5)});
    GeneratorConditions disk_res = generator_conditions(disk, p);
    CHECK(disk_res.res_c1 <= 1e-10);
    CHECK(disk_res.res_c2 <= 1e-10);
    GeneratorConditions pos_res = generator_conditions(pos, p);
    CHECK(pos_res.res_c1 <= 1e-10);
    CHECK(pos_res.res_c2 <= 1e-10);
  }
}

TEST_CASE("the metric F^2 = |rho| of the disk generator matches the closed form, kappa = -1") {
  GeneratorFunction disk{parse("0 - ln(sqrt(1 - xx))", 2), GeneratorFunction::Kind::kBasic};
  Spray s = deform_generator(disk, {parse("0.81 - xx", 2)});
  Expression f2 = parse("(yy*(1 - xx) + xy^2)/(1 - xx)^2", 2);
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 1.5)});
    if (!s.admitted(p)) continue;
    CurvatureData jac = jacobi(s, p);
    CHECK(std::abs(jac.rho) == doctest::Approx(eval(f2, p)).epsilon(1e-11));
    CHECK(jac.rho / eval(f2, p) == doctest::Approx(-1.0).epsilon(1e-11));
  }
}

TEST_CASE("the metric of the positive generator matches and has kappa = +1") {
  GeneratorFunction pos{parse("0 - ln(sqrt(1 + xx))", 2), GeneratorFunction::Kind::kBasic};
  Spray s = deform_generator(pos);
  Expression f2 = parse("(yy*(1 + xx) - xy^2)/(1 + xx)^2", 2);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 1.5)});
    CurvatureData jac = jacobi(s, p);
    CHECK(std::abs(jac.rho) == doctest::Approx(eval(f2, p)).epsilon(1e-11));
    CHECK(jac.rho / eval(f2, p) == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("basic generators satisfy the first condition identically") {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 10; ++trial) {
    PolyGenerator pg = random_poly_generator(rng, 2);
    GeneratorFunction gf{pg.g, GeneratorFunction::Kind::kBasic};
    PhasePoint p = random_phase_point(rng, 2);
    CHECK(generator_conditions(gf, p).res_c1 == 0.0);
  }
}

TEST_CASE("d_J alpha identity for projective deformations") {
  std::mt19937_64 rng(79);
  ProjectiveFactor numata{numata_p()};
  ProjectiveFactor klein{klein_p()};
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)},
                 {uniform(rng, 0.4, 1.4), uniform(rng, 0.4, 1.4)});
    CHECK(dja_identity_residual(numata, p) <= 1e-9);
    CHECK(dja_identity_residual(klein, p) <= 1e-9);
  }
  ProjectiveFactor zero{parse("0*y1", 2)};
  CHECK(dja_identity_residual(zero, PhasePoint({0.1, 0.2}, {1.0, 0.5})) == 0.0);
}

TEST_CASE("deformed connection equals P J + d_J P (x) C in coordinates") {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 20; ++trial) {
    PolyGenerator pg = random_poly_generator(rng, 2);
    ProjectiveFactor pf{pg.P};
    Spray s = deform_flat(pf);
    PhasePoint p = random_phase_point(rng, 2);
    ConnectionData c = connection(s, p);
    std::vector<Jet> seeds = lift_point(p.x, p.y, 1);
    std::span<const Jet> xs(seeds.data(), 2), ys(seeds.data() + 2, 2);
    Jet pj = pg.P.evaluate<Jet>(xs, ys);
    int n = 2;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double want = (i == j ? pj.value() : 0.0) +
                      p.y[static_cast<std::size_t>(i)] * pj.partial1(n + j);
        CHECK(std::abs(c.N[static_cast<std::size_t>(i * n + j)] - want) <=
              1e-10 * (1.0 + std::abs(want)));
      }
    }
  }
}

TEST_CASE("basic-generator deformations have straight base geodesics") {
  GeneratorFunction disk{parse("0 - ln(sqrt(1 - xx))", 2), GeneratorFunction::Kind::kBasic};
  Spray s = deform_generator(disk, {parse("0.81 - xx", 2)});

  std::mt19937_64 rng(81);
  for (int seed_idx = 0; seed_idx < 5; ++seed_idx) {
    std::vector<double> x{uniform(rng, -0.25, 0.25), uniform(rng, -0.25, 0.25)};
    std::vector<double> y{uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6)};
    if (std::abs(y[0]) + std::abs(y[1]) < 0.2) y[0] += 0.4;

    std::vector<std::vector<double>> trail;
    double h = 1e-3;
    auto accel = [&](const std::vector<double>& xx, const std::vector<double>& yy,
                     std::vector<double>& out) {
      auto g = s.coefficients(PhasePoint(xx, yy));
      out = {-2.0 * g[0], -2.0 * g[1]};
    };
    std::vector<double> cx = x, cy = y;
    for (int step = 0; step < 500; ++step) {
      trail.push_back(cx);
      // Classical RK4 on the first-order system (x, y).
      std::vector<double> k1a, k2a, k3a, k4a;
      std::vector<double> x1 = cx, y1 = cy;
      accel(x1, y1, k1a);
      std::vector<double> x2(2), y2(2);
      for (int i = 0; i < 2; ++i) {
        x2[static_cast<std::size_t>(i)] = cx[static_cast<std::size_t>(i)] + 0.5 * h * y1[static_cast<std::size_t>(i)];
        y2[static_cast<std::size_t>(i)] = cy[static_cast<std::size_t>(i)] + 0.5 * h * k1a[static_cast<std::size_t>(i)];
      }
      accel(x2, y2, k2a);
      std::vector<double> x3(2), y3(2);
      for (int i = 0; i < 2; ++i) {
        x3[static_cast<std::size_t>(i)] = cx[static_cast<std::size_t>(i)] + 0.5 * h * y2[static_cast<std::size_t>(i)];
        y3[static_cast<std::size_t>(i)] = cy[static_cast<std::size_t>(i)] + 0.5 * h * k2a[static_cast<std::size_t>(i)];
      }
      accel(x3, y3, k3a);
      std::vector<double> x4(2), y4(2);
      for (int i = 0; i < 2; ++i) {
        x4[static_cast<std::size_t>(i)] = cx[static_cast<std::size_t>(i)] + h * y3[static_cast<std::size_t>(i)];
        y4[static_cast<std::size_t>(i)] = cy[static_cast<std::size_t>(i)] + h * k3a[static_cast<std::size_t>(i)];
      }
      accel(x4, y4, k4a);
      for (int i = 0; i < 2; ++i) {
        cx[static_cast<std::size_t>(i)] +=
            h / 6.0 * (y1[static_cast<std::size_t>(i)] + 2.0 * y2[static_cast<std::size_t>(i)] +
                       2.0 * y3[static_cast<std::size_t>(i)] + y4[static_cast<std::size_t>(i)]);
        cy[static_cast<std::size_t>(i)] +=
            h / 6.0 * (k1a[static_cast<std::size_t>(i)] + 2.0 * k2a[static_cast<std::size_t>(i)] +
                       2.0 * k3a[static_cast<std::size_t>(i)] + k4a[static_cast<std::size_t>(i)]);
      }
    }
    trail.push_back(cx);

    // Collinearity of the base trajectory.
    const auto& a = trail.front();
    const auto& b = trail.back();
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double len = std::sqrt(dx * dx + dy * dy);
    REQUIRE(len > 1e-3);
    double worst = 0.0;
    for (const auto& q : trail) {
      double cross = (q[0] - a[0]) * dy - (q[1] - a[1]) * dx;
      worst = std::max(worst, std::abs(cross) / len);
    }
    CHECK(worst / len <= 1e-6);
  }
}
