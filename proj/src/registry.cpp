#include "spraymet/registry.hpp"

namespace spraymet {

namespace {

std::array<double, 2> iv(double lo, double hi) { return {lo, hi}; }

Scenario base_scenario(const std::string& name, int n) {
  Scenario sc;
  sc.name = name;
  sc.n = n;
  sc.sample_count = 200;
  sc.seed = 20240601;
  return sc;
}

Scenario make_klein(int n) {
  Scenario sc = base_scenario(n == 2 ? "klein" : "klein:n3", n);
  sc.mode = "generator";
  sc.g = "0 - ln(sqrt(1 - xx))";
  sc.generator_kind = "basic";
  for (int i = 0; i < n; ++i) {
    sc.domain.x_box.push_back(iv(-0.9, 0.9));
    sc.domain.y_box.push_back(iv(-10.0, 10.0));
  }
  sc.domain.predicates = {"0.81 - xx", "yy - 0.01", "100 - yy"};
  sc.quadrature.homogeneity_split = true;
  sc.quadrature.x_ref.assign(static_cast<std::size_t>(n), 0.0);
  sc.quadrature.y_ref = (n == 2) ? std::vector<double>{0.8, 0.6}
                                 : std::vector<double>{0.64, 0.6, 0.48};
  sc.anchor_x = (n == 2) ? std::vector<double>{0.1, -0.2} : std::vector<double>{0.1, -0.2, 0.15};
  sc.anchor_y = (n == 2) ? std::vector<double>{0.9, 0.3} : std::vector<double>{0.9, 0.3, -0.4};
  sc.expected.verdict = "MetrizableConstant";
  sc.expected.F = "sqrt((yy*(1 - xx) + xy^2)/(1 - xx)^2)";
  sc.expected.kappa = "0 - 1";
  sc.expected.f_rtol = 1e-6;
  sc.expected.kappa_rtol = 1e-6;
  return sc;
}

Scenario make_positive_cc() {
  Scenario sc = base_scenario("positive_cc", 2);
  sc.mode = "generator";
  sc.g = "0 - ln(sqrt(1 + xx))";
  sc.generator_kind = "basic";
  sc.domain.x_box = {iv(-1.5, 1.5), iv(-1.5, 1.5)};
  sc.domain.y_box = {iv(-10.0, 10.0), iv(-10.0, 10.0)};
  sc.domain.predicates = {"yy - 0.01", "100 - yy"};
  sc.quadrature.homogeneity_split = true;
  sc.quadrature.x_ref = {0.0, 0.0};
  sc.quadrature.y_ref = {0.8, 0.6};
  sc.anchor_x = {0.4, -0.7};
  sc.anchor_y = {1.1, 0.4};
  sc.expected.verdict = "MetrizableConstant";
  sc.expected.F = "sqrt((yy*(1 + xx) - xy^2)/(1 + xx)^2)";
  sc.expected.kappa = "1";
  return sc;
}

Scenario make_numata() {
  Scenario sc = base_scenario("numata", 2);
  sc.mode = "projective";
  sc.P = "yy/(2*(sqrt(yy) + xy))";
  sc.domain.x_box = {iv(-0.35, 0.35), iv(-0.35, 0.35)};
  sc.domain.y_box = {iv(0.3, 1.5), iv(0.3, 1.5)};
  sc.domain.predicates = {"0.25 - xx"};
  sc.quadrature.x_ref = {0.0, 0.0};
  sc.quadrature.y_ref = {1.0, 1.0};
  sc.anchor_x = {0.1, -0.1};
  sc.anchor_y = {1.2, 0.7};
  sc.expected.verdict = "MetrizableScalar";
  sc.expected.F = "sqrt(yy) + xy";
  sc.expected.kappa = "0.75*yy^2/(sqrt(yy) + xy)^4";
  return sc;
}

Scenario make_affine(bool quadratic) {
  Scenario sc = base_scenario(quadratic ? "affine2d_g:quadratic" : "affine2d_g", 2);
  sc.mode = "spray";
  if (quadratic) {
    // phi = psi = -2 g'/g with g(t) = t^2, t = x1 + x2.
    sc.G = {"0 - 2*y1^2/(x1 + x2)", "0 - 2*y2^2/(x1 + x2)"};
  } else {
    // g(t) = t/2.
    sc.G = {"0 - y1^2/(x1 + x2)", "0 - y2^2/(x1 + x2)"};
  }
  sc.domain.x_box = {iv(0.5, 1.5), iv(0.5, 1.5)};
  sc.domain.y_box = {iv(0.2, 2.5), iv(0.2, 2.5)};
  sc.domain.predicates = {"y1", "y2"};
  sc.quadrature.x_ref = {1.0, 1.0};
  sc.quadrature.y_ref = {1.0, 1.0};
  sc.anchor_x = {0.7, 0.9};
  sc.anchor_y = {1.3, 0.8};
  if (quadratic) {
    sc.expected.verdict = "MetrizableScalar";
    sc.expected.F = "sqrt(y1*y2)/(x1 + x2)^2";
    sc.expected.kappa = "0 - 8*(x1 + x2)^2";
  } else {
    sc.expected.verdict = "MetrizableConstant";
    sc.expected.F = "2*sqrt(y1*y2)/(x1 + x2)";
    sc.expected.kappa = "0 - 1";
  }
  return sc;
}

Scenario make_degenerate() {
  Scenario sc = base_scenario("degenerate2d", 2);
  sc.mode = "spray";
  sc.G = {"y1*y2", "0 - y2^2/2"};
  sc.domain.x_box = {iv(-0.8, 0.8), iv(-0.8, 0.8)};
  sc.domain.y_box = {iv(-2.0, 2.0), iv(0.2, 2.5)};
  sc.domain.predicates = {"y2"};
  sc.quadrature.x_ref = {0.0, 0.0};
  sc.quadrature.y_ref = {0.5, 1.0};
  sc.anchor_x = {0.3, -0.4};
  sc.anchor_y = {1.0, 0.8};
  sc.expected.verdict = "RankDeficientCandidate";
  sc.expected.F = "exp(0 - x2)*y2";
  sc.expected.kappa = "0 - 2*exp(2*x2)";
  sc.expected.f_rtol = 1e-8;
  sc.expected.kappa_rtol = 1e-6;
  return sc;
}

Scenario make_nonmetrizable() {
  Scenario sc = base_scenario("nonmetrizable2d", 2);
  sc.mode = "spray";
  sc.G = {"(y1^2 + y2^2)/2", "2*y1*y2"};
  sc.domain.x_box = {iv(-1.0, 1.0), iv(-1.0, 1.0)};
  sc.domain.y_box = {iv(0.4, 1.8), iv(0.4, 1.8)};
  sc.quadrature.x_ref = {0.0, 0.0};
  sc.quadrature.y_ref = {1.0, 1.0};
  sc.anchor_x = {0.0, 0.0};
  sc.anchor_y = {1.0, 1.0};
  sc.expected.verdict = "FailsConditionIII";
  return sc;
}

Scenario make_shen() {
  Scenario sc = base_scenario("shen_ricciflat", 2);
  sc.mode = "spray";
  // phi = x2, psi = -x1, so phi_{x2} = -psi_{x1} = 1: rho = 0 with Phi != 0.
  sc.G = {"x2*y1^2/2", "0 - x1*y2^2/2"};
  sc.domain.x_box = {iv(0.5, 1.5), iv(0.5, 1.5)};
  sc.domain.y_box = {iv(0.3, 2.0), iv(0.3, 2.0)};
  sc.quadrature.x_ref = {1.0, 1.0};
  sc.quadrature.y_ref = {1.0, 1.0};
  sc.anchor_x = {1.0, 1.0};
  sc.anchor_y = {1.0, 1.0};
  sc.expected.verdict = "RicciDegenerate";
  return sc;
}

Scenario make_flat() {
  Scenario sc = base_scenario("flat", 2);
  sc.mode = "spray";
  sc.G = {"0", "0"};
  sc.domain.x_box = {iv(-1.0, 1.0), iv(-1.0, 1.0)};
  sc.domain.y_box = {iv(0.2, 2.0), iv(0.2, 2.0)};
  sc.quadrature.x_ref = {0.0, 0.0};
  sc.quadrature.y_ref = {1.0, 1.0};
  sc.anchor_x = {0.0, 0.0};
  sc.anchor_y = {1.0, 1.0};
  sc.expected.verdict = "RicciDegenerate";
  return sc;
}

}  // namespace

const std::vector<RegistryEntry>& registry_entries() {
  static const std::vector<RegistryEntry> entries = {
      {"flat", "zero spray; vacuously flat", {"default"}},
      {"klein", "projectively flat disk metric of constant curvature -1", {"n2", "n3"}},
      {"positive_cc", "projectively flat metric of constant curvature +1", {"default"}},
      {"numata", "Numata-type metric of non-constant scalar curvature", {"default"}},
      {"affine2d_g", "affine 2D family phi = psi = -2g'/g", {"linear", "quadratic"}},
      {"degenerate2d", "metrizable only by a rank-1 degenerate Finsler function", {"default"}},
      {"nonmetrizable2d", "fails the horizontal covariant-constancy condition", {"default"}},
      {"shen_ricciflat", "Ricci scalar vanishes while the curvature does not", {"default"}},
  };
  return entries;
}

Scenario registry_scenario(const std::string& key) {
  std::string name = key, variant;
  std::size_t colon = key.find(':');
  if (colon != std::string::npos) {
    name = key.substr(0, colon);
    variant = key.substr(colon + 1);
  }
  if (name == "flat" && (variant.empty() || variant == "default")) return make_flat();
  if (name == "klein") {
    if (variant.empty() || variant == "n2") return make_klein(2);
    if (variant == "n3") return make_klein(3);
  }
  if (name == "positive_cc" && (variant.empty() || variant == "default")) return make_positive_cc();
  if (name == "numata" && (variant.empty() || variant == "default")) return make_numata();
  if (name == "affine2d_g") {
    if (variant.empty() || variant == "linear") return make_affine(false);
    if (variant == "quadratic") return make_affine(true);
  }
  if (name == "degenerate2d" && (variant.empty() || variant == "default")) return make_degenerate();
  if (name == "nonmetrizable2d" && (variant.empty() || variant == "default")) return make_nonmetrizable();
  if (name == "shen_ricciflat" && (variant.empty() || variant == "default")) return make_shen();
  throw SchemaError(key, "unknown example (see `examples` for the list)");
}

}  // namespace spraymet
