#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spraymet/geometry.hpp"
#include "spraymet/hilbert.hpp"

using namespace spraymet;
using namespace spraymet::testing;

namespace {

Spray flat_spray() {
  return Spray::from_expressions({parse("0", 2), parse("0", 2)});
}

double phi_isr_mismatch(const Spray& s, const PhasePoint& p, bool first_index) {
  // Contracts i_S into the first or second lower index of R and compares
  // against the Jacobi endomorphism.
  int n = s.dimension();
  CurvatureData r = curvature(s, p);
  CurvatureData jac = jacobi(s, p);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double contracted = 0.0;
      for (int k = 0; k < n; ++k) {
        double rv = first_index ? r.Rten[static_cast<std::size_t>((i * n + k) * n + j)]
                                : r.Rten[static_cast<std::size_t>((i * n + j) * n + k)];
        contracted += rv * p.y[static_cast<std::size_t>(k)];
      }
      double d = contracted - jac.Phi[static_cast<std::size_t>(i * n + j)];
      num += d * d;
      den += jac.Phi[static_cast<std::size_t>(i * n + j)] * jac.Phi[static_cast<std::size_t>(i * n + j)];
    }
  }
  return std::sqrt(num) / std::max(1e-300, std::sqrt(den));
}

}  // namespace

TEST_CASE("flat spray has vanishing connection, curvature and isotropy data") {
  Spray s = flat_spray();
  PhasePoint p({0.3, -0.2}, {1.0, 2.0});
  ConnectionData c = connection(s, p);
  for (double v : c.N) CHECK(v == 0.0);
  for (double v : c.Gamma) CHECK(v == 0.0);
  CurvatureData r = curvature(s, p);
  for (double v : r.Rten) CHECK(v == 0.0);
  IsotropyData iso = isotropy(s, p, 1e-7);
  CHECK(iso.rho == 0.0);
  for (double v : iso.alpha) CHECK(v == 0.0);
  CHECK(iso.residual == 0.0);
  CHECK(iso.isotropic);
  CHECK(homogeneity_residual(s, p) == 0.0);
}

TEST_CASE("degenerate example connection at y = (1, 2)") {
  Spray s = degenerate_spray();
  PhasePoint p({0.0, 0.0}, {1.0, 2.0});
  ConnectionData c = connection(s, p);
  CHECK(c.N[0] == doctest::Approx(2.0).epsilon(1e-14));   // N^1_1 = y2
  CHECK(c.N[1] == doctest::Approx(1.0).epsilon(1e-14));   // N^1_2 = y1
  CHECK(c.N[2] == doctest::Approx(0.0));
  CHECK(c.N[3] == doctest::Approx(-2.0).epsilon(1e-14));  // N^2_2 = -y2
  // Gamma symmetric in the lower indices.
  int n = 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        CHECK(c.Gamma[static_cast<std::size_t>((i * n + j) * n + k)] ==
              doctest::Approx(c.Gamma[static_cast<std::size_t>((i * n + k) * n + j)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("affine family connection is diagonal with N^i_i = phi y^i") {
  Spray s = affine_spray("x2^2", "x1*x2");
  PhasePoint p({0.7, 1.3}, {0.9, 1.1});
  ConnectionData c = connection(s, p);
  double phi = 1.3 * 1.3, psi = 0.7 * 1.3;
  CHECK(c.N[0] == doctest::Approx(phi * 0.9).epsilon(1e-13));
  CHECK(c.N[1] == doctest::Approx(0.0));
  CHECK(c.N[2] == doctest::Approx(0.0));
  CHECK(c.N[3] == doctest::Approx(psi * 1.1).epsilon(1e-13));
}

TEST_CASE("affine family Jacobi endomorphism matches the closed form") {
  Spray s = affine_spray("x2^2", "x1*x2");
  PhasePoint p({0.7, 1.3}, {0.9, -1.1});
  CurvatureData jac = jacobi(s, p);
  double phi_x2 = 2.0 * 1.3, psi_x1 = 1.3;
  double y1 = 0.9, y2 = -1.1;
  CHECK(jac.Phi[0] == doctest::Approx(-phi_x2 * y1 * y2).epsilon(1e-12));
  CHECK(jac.Phi[1] == doctest::Approx(phi_x2 * y1 * y1).epsilon(1e-12));
  CHECK(jac.Phi[2] == doctest::Approx(psi_x1 * y2 * y2).epsilon(1e-12));
  CHECK(jac.Phi[3] == doctest::Approx(-psi_x1 * y1 * y2).epsilon(1e-12));
  CHECK(jac.rho == doctest::Approx(-y1 * y2 * (phi_x2 + psi_x1)).epsilon(1e-12));
}

TEST_CASE("degenerate example Jacobi data at y = (1, 2)") {
  Spray s = degenerate_spray();
  PhasePoint p({0.4, -0.1}, {1.0, 2.0});
  CurvatureData jac = jacobi(s, p);
  CHECK(jac.Phi[0] == doctest::Approx(-8.0).epsilon(1e-13));  // -2 (y2)^2
  CHECK(jac.Phi[3] == doctest::Approx(0.0).scale(1.0));
  CHECK(jac.rho == doctest::Approx(-8.0).epsilon(1e-13));
}

TEST_CASE("disk-generator spray has rho = -|y|^2 at the origin") {
  GeneratorFunction g{parse("0 - ln(sqrt(1 - xx))", 2), GeneratorFunction::Kind::kBasic};
  Spray s = deform_generator(g, {parse("0.81 - xx", 2)});
  PhasePoint p({0.0, 0.0}, {0.7, -1.2});
  CurvatureData jac = jacobi(s, p);
  double yy = 0.7 * 0.7 + 1.2 * 1.2;
  CHECK(jac.rho == doctest::Approx(-yy).epsilon(1e-12));
}

TEST_CASE("isotropy decomposition of the degenerate example") {
  std::mt19937_64 rng(5150);
  Spray s = degenerate_spray();
  for (int trial = 0; trial < 20; ++trial) {
    PhasePoint p({uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)},
                 {uniform(rng, -2.0, 2.0), uniform(rng, 0.3, 2.0)});
    IsotropyData iso = isotropy(s, p, 1e-7);
    CHECK(iso.residual <= 1e-10);
    CHECK(iso.alpha[0] == doctest::Approx(0.0).scale(1.0 + std::abs(iso.rho)));
    CHECK(iso.alpha[1] == doctest::Approx(-2.0 * p.y[1]).epsilon(1e-11));
    // i_S alpha = rho for isotropic sprays.
    double isa = iso.alpha[0] * p.y[0] + iso.alpha[1] * p.y[1];
    CHECK(isa == doctest::Approx(iso.rho).epsilon(1e-11));
  }
}

TEST_CASE("non-metrizable example is isotropic with the stated Ricci scalar") {
  Spray s = nonmetrizable_spray();
  PhasePoint p({0.2, 0.5}, {0.8, 1.1});
  IsotropyData iso = isotropy(s, p, 1e-7);
  CHECK(iso.isotropic);
  CHECK(iso.rho == doctest::Approx(-2.0 * 0.64 - 1.21).epsilon(1e-12));
}

TEST_CASE("homogeneity residual is zero on the worked examples and flags a broken one") {
  std::mt19937_64 rng(11);
  for (Spray s : {degenerate_spray(), nonmetrizable_spray(), affine_spray("x2^2", "x1*x2")}) {
    for (int trial = 0; trial < 10; ++trial) {
      PhasePoint p({uniform(rng, -0.9, 0.9), uniform(rng, -0.9, 0.9)},
                   {uniform(rng, 0.3, 2.0), uniform(rng, 0.3, 2.0)});
      CHECK(homogeneity_residual(s, p) <= 1e-12);
    }
  }
  Spray broken = Spray::from_expressions({parse("y1 + y1^2", 2), parse("0", 2)});
  PhasePoint p({0.0, 0.0}, {1.0, 1.0});
  CHECK(homogeneity_residual(broken, p) > 0.1);
}

TEST_CASE("Phi = i_S R with the contraction on the first lower index, and only that one") {
  std::mt19937_64 rng(90210);
  double worst_good = 0.0;
  double best_bad = 1e9;
  bool any_curved = false;
  for (int trial = 0; trial < 20; ++trial) {
    Spray s = random_polynomial_spray(rng, 2);
    for (int k = 0; k < 20; ++k) {
      PhasePoint p = random_phase_point(rng, 2);
      CurvatureData jac = jacobi(s, p);
      double phinorm = 0.0;
      for (double v : jac.Phi) phinorm += v * v;
      worst_good = std::max(worst_good, phi_isr_mismatch(s, p, true));
      if (std::sqrt(phinorm) > 1e-3) {
        any_curved = true;
        best_bad = std::min(best_bad, phi_isr_mismatch(s, p, false));
      }
    }
  }
  CHECK(worst_good <= 1e-9);
  REQUIRE(any_curved);
  CHECK(best_bad > 1e-2);  // the opposite ordering misses badly
}

TEST_CASE("Phi is positively 2-homogeneous in y") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    Spray s = random_polynomial_spray(rng, 2);
    PhasePoint p = random_phase_point(rng, 2);
    CurvatureData base = jacobi(s, p);
    for (double lambda : {0.5, 2.0}) {
      PhasePoint q = p;
      for (double& v : q.y) v *= lambda;
      CurvatureData scaled = jacobi(s, q);
      for (std::size_t i = 0; i < base.Phi.size(); ++i) {
        double want = lambda * lambda * base.Phi[i];
        CHECK(std::abs(scaled.Phi[i] - want) <= 1e-9 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("every 2-dimensional spray is isotropic") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    Spray s = random_polynomial_spray(rng, 2);
    PhasePoint p = random_phase_point(rng, 2);
    IsotropyData iso = isotropy(s, p, 1e-7);
    CHECK(iso.residual <= 1e-10);
  }
}

TEST_CASE("Phi annihilates the Liouville direction") {
  std::mt19937_64 rng(3030);
  for (int trial = 0; trial < 10; ++trial) {
    for (int n : {2, 3}) {
      Spray s = random_polynomial_spray(rng, n);
      PhasePoint p = random_phase_point(rng, n);
      CurvatureData jac = jacobi(s, p);
      double scale = 1e-300;
      for (double v : jac.Phi) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          acc += jac.Phi[static_cast<std::size_t>(i * n + j)] * p.y[static_cast<std::size_t>(j)];
        }
        CHECK(std::abs(acc) <= 1e-9 * scale * (1.0 + p.y_norm()));
      }
    }
  }
}

TEST_CASE("curvature tensor is antisymmetric in the lower indices") {
  std::mt19937_64 rng(41);
  Spray s = random_polynomial_spray(rng, 3);
  PhasePoint p = random_phase_point(rng, 3);
  CurvatureData r = curvature(s, p);
  int n = 3;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        CHECK(r.Rten[static_cast<std::size_t>((i * n + j) * n + k)] ==
              -r.Rten[static_cast<std::size_t>((i * n + k) * n + j)]);
      }
    }
  }
}
