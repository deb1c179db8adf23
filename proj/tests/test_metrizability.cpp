#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spraymet/metrizability.hpp"
#include "spraymet/registry.hpp"

using namespace spraymet;
using namespace spraymet::testing;

namespace {

TestConfig default_config() { return TestConfig{}; }

}  // namespace

TEST_CASE("sigma of the degenerate example is (0, 1/y2)") {
  Spray s = degenerate_spray();
  TestConfig cfg = default_config();
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 2.0)});
    SemiBasicForm f = sigma_at(s, p, cfg);
    CHECK(f.sigma[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(f.sigma[1] == doctest::Approx(1.0 / p.y[1]).epsilon(1e-11));
    CHECK(f.unit_residual <= 1e-11);
  }
}

TEST_CASE("sigma of the affine family matches the closed form") {
  Spray s = affine_spray("x2^2", "x1*x2");
  TestConfig cfg = default_config();
  PhasePoint p({0.7, 1.3}, {0.9, 1.1});
  double phi_x2 = 2.0 * 1.3, psi_x1 = 1.3;
  SemiBasicForm f = sigma_at(s, p, cfg);
  CHECK(f.sigma[0] == doctest::Approx(psi_x1 / ((phi_x2 + psi_x1) * 0.9)).epsilon(1e-11));
  CHECK(f.sigma[1] == doctest::Approx(phi_x2 / ((phi_x2 + psi_x1) * 1.1)).epsilon(1e-11));
}

TEST_CASE("sigma of the non-metrizable example at y = (1, 1)") {
  Spray s = nonmetrizable_spray();
  TestConfig cfg = default_config();
  PhasePoint p({0.3, -0.6}, {1.0, 1.0});
  SemiBasicForm f = sigma_at(s, p, cfg);
  CHECK(f.sigma[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.sigma[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(f.unit_residual <= 1e-12);
}

TEST_CASE("sigma_at signals a vanishing Ricci scalar") {
  Spray s = affine_spray("x2", "0 - x1");  // rho = 0, Phi != 0
  TestConfig cfg = default_config();
  PhasePoint p({1.0, 1.0}, {1.0, 1.0});
  CHECK_THROWS_AS((void)sigma_at(s, p, cfg), RicciDegenerateError);
}

TEST_CASE("condition ii holds on the worked examples and flags an injected asymmetry") {
  TestConfig cfg = default_config();
  std::mt19937_64 rng(62);
  for (Spray s : {nonmetrizable_spray(), affine_spray("x2^2", "x1*x2")}) {
    for (int trial = 0; trial < 10; ++trial) {
      PhasePoint p({uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0)},
                   {uniform(rng, 0.3, 1.5), uniform(rng, 0.3, 1.5)});
      SemiBasicForm f = sigma_at(s, p, cfg);
      CHECK(condition_ii_residual(f) <= 1e-10);
    }
  }

  SemiBasicForm injected;
  injected.point = PhasePoint({0.0, 0.0}, {0.6, 0.8});  // |y| = 1
  injected.sigma = {0.8, 0.0};
  injected.dsigma_dx = {0.0, 0.0, 0.0, 0.0};
  injected.dsigma_dy = {0.0, 1.0, 0.0, 0.0};  // d sigma_1/dy^2 = 1, d sigma_2/dy^1 = 0
  CHECK(condition_ii_residual(injected) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("condition iii: degenerate example passes, non-metrizable one fails with a bounded residual") {
  TestConfig cfg = default_config();
  std::mt19937_64 rng(63);
  Spray deg = degenerate_spray();
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)},
                 {uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 2.0)});
    SemiBasicForm f = sigma_at(deg, p, cfg);
    CHECK(condition_iii_residual(deg, p, f) <= 1e-9);
  }

  Spray bad = nonmetrizable_spray();
  for (double x1 : {-0.7, 0.0, 1.3}) {
    PhasePoint p({x1, 0.4}, {1.0, 1.0});
    SemiBasicForm f = sigma_at(bad, p, cfg);
    double res = condition_iii_residual(bad, p, f);
    // Hand value: max defect 4/9 against scale 1 + ||N||_F = 1 + sqrt(10).
    CHECK(res == doctest::Approx(4.0 / 9.0 / (1.0 + std::sqrt(10.0))).epsilon(1e-10));
    CHECK(res >= 0.05);
  }
}

TEST_CASE("condition iii passes on the constrained affine family") {
  TestConfig cfg = default_config();
  Spray s = affine_spray("0 - 2/(x1 + x2)", "0 - 2/(x1 + x2)");  // g(t) = t/2
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    PhasePoint p({uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5)},
                 {uniform(rng, 0.3, 2.0), uniform(rng, 0.3, 2.0)});
    SemiBasicForm f = sigma_at(s, p, cfg);
    CHECK(condition_iii_residual(s, p, f) <= 1e-9);
  }
}

TEST_CASE("regularity rank: full for the constrained affine family, 2 of 4 for the degenerate one") {
  TestConfig cfg = default_config();
  Spray good = affine_spray("0 - 2/(x1 + x2)", "0 - 2/(x1 + x2)");
  PhasePoint p({0.8, 0.9}, {1.2, 0.7});
  SemiBasicForm f = sigma_at(good, p, cfg);
  RankResult rr = regularity_rank(good, p, f, cfg);
  CHECK(rr.rank == 4);
  CHECK(std::abs(rr.det_v) > 1e-6);

  Spray deg = degenerate_spray();
  PhasePoint q({0.3, -0.2}, {0.9, 1.4});
  SemiBasicForm fd = sigma_at(deg, q, cfg);
  RankResult rd = regularity_rank(deg, q, fd, cfg);
  CHECK(rd.rank == 2);
  CHECK(std::abs(rd.det_v) <= 1e-12);
}

TEST_CASE("the degenerate example's V block is [[0,0],[0,1/(y2)^2]]") {
  TestConfig cfg = default_config();
  Spray deg = degenerate_spray();
  PhasePoint p({0.1, 0.6}, {0.8, 1.3});
  SemiBasicForm f = sigma_at(deg, p, cfg);
  int n = 2;
  // V_{ji} = d sigma_i/dy^j + 2 sigma_j sigma_i
  auto V = [&](int j, int i) {
    return f.dsigma_dy[static_cast<std::size_t>(i * n + j)] + 2.0 * f.sigma[static_cast<std::size_t>(j)] * f.sigma[static_cast<std::size_t>(i)];
  };
  CHECK(V(0, 0) == doctest::Approx(0.0).scale(1.0));
  CHECK(V(0, 1) == doctest::Approx(0.0).scale(1.0));
  CHECK(V(1, 0) == doctest::Approx(0.0).scale(1.0));
  CHECK(V(1, 1) == doctest::Approx(1.0 / (1.3 * 1.3)).epsilon(1e-11));
}

TEST_CASE("constant-curvature tests: disk generator passes with dd_J rho = -2 Id at x = 0") {
  TestConfig cfg = default_config();
  Scenario sc = registry_scenario("klein");
  Spray s = sc.build_spray();
  PhasePoint p({0.0, 0.0}, {0.8, -0.5});
  ConstantCurvatureResult cc = constant_curvature_tests(s, p, cfg);
  CHECK(cc.res_c1 <= 1e-10);
  CHECK(cc.res_c2 <= 1e-10);
  CHECK(cc.rank_c3 == 4);

  GeometryJets gj = geometry_jets(s, p, 4, false);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double want = (i == j) ? -2.0 : 0.0;
      CHECK(gj.rho.partial2(gj.y_slot(i), gj.y_slot(j)) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("constant-curvature tests: Numata deformation fails the d_h rho condition") {
  TestConfig cfg = default_config();
  Scenario sc = registry_scenario("numata");
  Spray s = sc.build_spray();
  PhasePoint p({0.0, 0.0}, {1.0, 0.0});
  ConstantCurvatureResult cc = constant_curvature_tests(s, p, cfg);
  CHECK(cc.res_c2 > 0.1);
}

TEST_CASE("classify verdicts on the worked examples") {
  auto run_classify = [](const char* name) {
    Scenario sc = registry_scenario(name);
    sc.sample_count = 60;
    Spray s = sc.build_spray();
    TestConfig cfg = sc.tolerances;
    cfg.samples = sample_points(sc);
    return classify(s, cfg);
  };

  CHECK(run_classify("nonmetrizable2d").verdict == Verdict::kFailsConditionIII);
  CHECK(run_classify("degenerate2d").verdict == Verdict::kRankDeficientCandidate);
  CHECK(run_classify("klein").verdict == Verdict::kMetrizableConstant);
  CHECK(run_classify("affine2d_g").verdict == Verdict::kMetrizableConstant);
  CHECK(run_classify("affine2d_g:quadratic").verdict == Verdict::kMetrizableScalar);
  CHECK(run_classify("numata").verdict == Verdict::kMetrizableScalar);

  ClassificationReport shen = run_classify("shen_ricciflat");
  CHECK(shen.verdict == Verdict::kRicciDegenerate);
  REQUIRE(!shen.notes.empty());
  CHECK(shen.notes.front().find("|Phi|>0") != std::string::npos);

  ClassificationReport flat = run_classify("flat");
  CHECK(flat.verdict == Verdict::kRicciDegenerate);
  REQUIRE(!flat.notes.empty());
  CHECK(flat.notes.front().find("flat") != std::string::npos);
}

TEST_CASE("classify flags an inhomogeneous system") {
  Spray broken = Spray::from_expressions({parse("y1 + y1^2", 2), parse("0", 2)});
  TestConfig cfg = default_config();
  cfg.samples = {PhasePoint({0.0, 0.0}, {1.0, 1.0}), PhasePoint({0.2, 0.1}, {0.5, 1.5})};
  CHECK(classify(broken, cfg).verdict == Verdict::kNotHomogeneous);
}

TEST_CASE("verdicts are invariant under fiber scaling and sample order") {
  for (const char* name : {"nonmetrizable2d", "degenerate2d", "affine2d_g"}) {
    Scenario sc = registry_scenario(name);
    sc.sample_count = 40;
    Spray s = sc.build_spray();
    TestConfig cfg = sc.tolerances;
    cfg.samples = sample_points(sc);
    Verdict base = classify(s, cfg).verdict;

    TestConfig scaled = cfg;
    for (PhasePoint& p : scaled.samples) {
      for (double& v : p.y) v *= 2.0;
    }
    CHECK(classify(s, scaled).verdict == base);

    TestConfig shuffled = cfg;
    std::reverse(shuffled.samples.begin(), shuffled.samples.end());
    CHECK(classify(s, shuffled).verdict == base);
  }
}

TEST_CASE("unit residual i_S sigma = 1 holds wherever sigma exists") {
  std::mt19937_64 rng(65);
  TestConfig cfg = default_config();
  for (Spray s : {degenerate_spray(), nonmetrizable_spray(), affine_spray("x2^2", "x1*x2")}) {
    for (int trial = 0; trial < 10; ++trial) {
      PhasePoint p({uniform(rng, 0.3, 1.2), uniform(rng, 0.3, 1.2)},
                   {uniform(rng, 0.4, 1.6), uniform(rng, 0.4, 1.6)});
      SemiBasicForm f = sigma_at(s, p, cfg);
      CHECK(f.unit_residual <= cfg.tol_unit);
    }
  }
}

TEST_CASE("full regularity rank agrees with the det V cutoff criterion") {
  TestConfig cfg = default_config();
  for (const char* name : {"degenerate2d", "affine2d_g", "affine2d_g:quadratic", "numata"}) {
    Scenario sc = registry_scenario(name);
    sc.sample_count = 25;
    Spray s = sc.build_spray();
    for (const PhasePoint& p : sample_points(sc)) {
      SemiBasicForm f = sigma_at(s, p, cfg);
      RankResult rr = regularity_rank(s, p, f, cfg);
      double sigma_max = rr.singular_values.empty() ? 0.0 : rr.singular_values.front();
      double cutoff = std::pow(cfg.rank_rtol * sigma_max, static_cast<double>(sc.n));
      bool full_by_rank = rr.rank == 2 * sc.n;
      bool full_by_det = std::abs(rr.det_v) > cutoff;
      CHECK(full_by_rank == full_by_det);
    }
  }
}
