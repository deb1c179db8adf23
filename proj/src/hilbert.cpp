#include "spraymet/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace spraymet {

namespace {

// Evaluates an expression as a jet at (x, y) over the 2n phase variables.
Jet expression_jet(const Expression& e, const PhasePoint& p, int order) {
  int n = e.dimension();
  std::vector<Jet> seeds = lift_point(p.x, p.y, order);
  std::span<const Jet> xs(seeds.data(), static_cast<std::size_t>(n));
  std::span<const Jet> ys(seeds.data() + n, static_cast<std::size_t>(n));
  return e.evaluate<Jet>(xs, ys);
}

// S0(f) = y^i df/dx^i as a jet one order lower.
Jet flat_spray_derivative(const Jet& f, const PhasePoint& p) {
  int n = static_cast<int>(p.x.size());
  const JetLayout* layout = f.layout();
  Jet acc = Jet::variable(layout, n, p.y[0]) * f.derivative(0);
  for (int i = 1; i < n; ++i) {
    acc = acc + Jet::variable(layout, n + i, p.y[static_cast<std::size_t>(i)]) * f.derivative(i);
  }
  return acc;
}

}  // namespace

ProjectiveSource::ProjectiveSource(Expression p) : p_(std::move(p)) {
  if (p_.empty()) throw Error("projective factor expression is empty");
}

std::vector<Jet> ProjectiveSource::coefficient_jets(const PhasePoint& pt, int order) const {
  int n = dimension();
  std::vector<Jet> seeds = lift_point(pt.x, pt.y, order);
  std::span<const Jet> xs(seeds.data(), static_cast<std::size_t>(n));
  std::span<const Jet> ys(seeds.data() + n, static_cast<std::size_t>(n));
  Jet p = p_.evaluate<Jet>(xs, ys);
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(p * seeds[static_cast<std::size_t>(n + i)]);
  return out;
}

std::string ProjectiveSource::describe() const { return "projective[P = " + p_.to_string() + "]"; }

GeneratorSource::GeneratorSource(Expression g) : g_(std::move(g)) {
  if (g_.empty()) throw Error("generator expression is empty");
}

std::vector<Jet> GeneratorSource::coefficient_jets(const PhasePoint& pt, int order) const {
  int n = dimension();
  Jet g = expression_jet(g_, pt, order + 1);
  Jet p = flat_spray_derivative(g, pt);  // order `order`
  const JetLayout* layout = p.layout();
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet yi = Jet::variable(layout, n + i, pt.y[static_cast<std::size_t>(i)]);
    out.push_back(p * yi);
  }
  return out;
}

std::string GeneratorSource::describe() const { return "generator[g = " + g_.to_string() + "]"; }

Spray deform_flat(const ProjectiveFactor& p, std::vector<Expression> domain_predicates) {
  return Spray(std::make_shared<ProjectiveSource>(p.P), std::move(domain_predicates));
}

Spray deform_generator(const GeneratorFunction& g, std::vector<Expression> domain_predicates) {
  return Spray(std::make_shared<GeneratorSource>(g.g), std::move(domain_predicates));
}

double projective_homogeneity_residual(const ProjectiveFactor& pf, const PhasePoint& p) {
  int n = pf.P.dimension();
  Jet pj = expression_jet(pf.P, p, 1);
  double euler = 0.0;
  for (int i = 0; i < n; ++i) euler += p.y[static_cast<std::size_t>(i)] * pj.partial1(n + i);
  return std::abs(euler - pj.value()) / (1.0 + std::abs(pj.value()));
}

double generator_homogeneity_residual(const GeneratorFunction& gf, const PhasePoint& p) {
  int n = gf.g.dimension();
  Jet gj = expression_jet(gf.g, p, 1);
  double euler = 0.0;
  for (int i = 0; i < n; ++i) euler += p.y[static_cast<std::size_t>(i)] * gj.partial1(n + i);
  return std::abs(euler) / (1.0 + std::abs(gj.value()));
}

ProjectiveJacobi jacobi_projective(const ProjectiveFactor& pf, const PhasePoint& p) {
  int n = pf.P.dimension();
  Jet pj = expression_jet(pf.P, p, 2);
  Jet s0p = flat_spray_derivative(pj, p);  // order 1

  ProjectiveJacobi out;
  out.n = n;
  out.rho = pj.value() * pj.value() - s0p.value();
  out.alpha.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.alpha[static_cast<std::size_t>(i)] = pj.value() * pj.partial1(n + i) +
                                             s0p.partial1(n + i) - 3.0 * pj.partial1(i);
  }
  out.Phi.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.Phi[static_cast<std::size_t>(i * n + j)] =
          (i == j ? out.rho : 0.0) -
          out.alpha[static_cast<std::size_t>(j)] * p.y[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

GeneratorConditions generator_conditions(const GeneratorFunction& gf, const PhasePoint& p) {
  int n = gf.g.dimension();
  GeneratorConditions out;

  // C1 route: d_J P = d_{h0} g with P = S0(g).
  {
    Jet g = expression_jet(gf.g, p, 2);
    Jet pjet = flat_spray_derivative(g, p);  // order 1
    double defect = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      double dpy = pjet.partial1(n + i);
      double dgx = g.partial1(i);
      defect = std::max(defect, std::abs(dpy - dgx));
      scale = std::max({scale, std::abs(dpy), std::abs(dgx)});
    }
    out.res_c1 = defect / (1.0 + scale);
  }

  // C2 route: d_{h0}(exp(-2g) rho) + 1/2 S0(exp(-2g)) d_J rho = 0 with
  // rho = (S0 g)^2 - S0^2 g.
  {
    Jet g = expression_jet(gf.g, p, 3);
    Jet s0g = flat_spray_derivative(g, p);      // order 2
    Jet s0s0g = flat_spray_derivative(s0g, p);  // order 1
    Jet rho = s0g * s0g - s0s0g;                // order 1
    Jet w = exp(g * (-2.0));                    // order 3
    Jet u = w * rho;                            // order 1
    Jet s0w = flat_spray_derivative(w, p);      // order 2
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      double term1 = u.partial1(i);
      double term2 = 0.5 * s0w.value() * rho.partial1(n + i);
      worst = std::max(worst, std::abs(term1 + term2));
      scale = std::max({scale, std::abs(term1), std::abs(term2)});
    }
    out.res_c2 = worst / (1.0 + scale);
  }
  return out;
}

double dja_identity_residual(const ProjectiveFactor& pf, const PhasePoint& p) {
  int n = pf.P.dimension();
  Jet pj = expression_jet(pf.P, p, 3);
  Jet s0p = flat_spray_derivative(pj, p);  // order 2

  // alpha as order-1 jets.
  std::vector<Jet> alpha;
  alpha.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    alpha.push_back(pj * pj.derivative(n + i) + s0p.derivative(n + i) - 3.0 * pj.derivative(i));
  }
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double da = alpha[static_cast<std::size_t>(i)].partial1(n + j) -
                  alpha[static_cast<std::size_t>(j)].partial1(n + i);
      double dp = pj.partial2(i, n + j) - pj.partial2(j, n + i);
      worst = std::max(worst, std::abs(da + 3.0 * dp));
      scale = std::max({scale, std::abs(da), 3.0 * std::abs(dp)});
    }
  }
  return worst / scale;
}

}  // namespace spraymet
