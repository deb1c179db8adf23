#ifndef SPRAYMET_HILBERT_HPP
#define SPRAYMET_HILBERT_HPP

// Projective deformations S = S0 - 2 P C of the flat spray.  The deformed
// spray has G^i = P y^i; its Jacobi data has the closed form
//   rho = P^2 - S0 P,  alpha = P d_J P + d_J(S0 P) - 3 d_{h0} P,
// with d_{h0} the plain x-derivative.  Generators g with P = S0(g) feed
// the constant-curvature conditions d_J P = d_{h0} g and the conservation
// law on exp(-2g) rho.

#include <vector>

#include "spraymet/expression.hpp"
#include "spraymet/spray.hpp"

namespace spraymet {

struct ProjectiveFactor {
  Expression P;  // 1-homogeneous in y
};

struct GeneratorFunction {
  enum class Kind { kBasic, kZeroHomogeneous };
  Expression g;
  Kind kind = Kind::kBasic;
};

// Coefficients G^i = P y^i.
class ProjectiveSource final : public CoefficientSource {
 public:
  explicit ProjectiveSource(Expression p);
  int dimension() const override { return p_.dimension(); }
  std::vector<Jet> coefficient_jets(const PhasePoint& p, int order) const override;
  std::string describe() const override;
  const Expression& factor() const { return p_; }

 private:
  Expression p_;
};

// Coefficients G^i = S0(g) y^i; g-jets run one order deeper than requested.
class GeneratorSource final : public CoefficientSource {
 public:
  explicit GeneratorSource(Expression g);
  int dimension() const override { return g_.dimension(); }
  std::vector<Jet> coefficient_jets(const PhasePoint& p, int order) const override;
  std::string describe() const override;
  const Expression& generator() const { return g_; }

 private:
  Expression g_;
};

Spray deform_flat(const ProjectiveFactor& p, std::vector<Expression> domain_predicates = {});
Spray deform_generator(const GeneratorFunction& g, std::vector<Expression> domain_predicates = {});

// |C(P) - P| / (1 + |P|); zero for 1-homogeneous factors.
double projective_homogeneity_residual(const ProjectiveFactor& pf, const PhasePoint& p);

// |C(g)| / (1 + |g|); zero for 0-homogeneous generators.
double generator_homogeneity_residual(const GeneratorFunction& gf, const PhasePoint& p);

struct ProjectiveJacobi {
  int n = 0;
  std::vector<double> Phi;  // n*n, assembled as rho J - alpha (x) C
  double rho = 0.0;
  std::vector<double> alpha;  // n
};

ProjectiveJacobi jacobi_projective(const ProjectiveFactor& pf, const PhasePoint& p);

struct GeneratorConditions {
  double res_c1 = 0.0;  // d_J P - d_{h0} g defect
  double res_c2 = 0.0;  // d_{h0}(exp(-2g) rho) + 1/2 S0(exp(-2g)) d_J rho defect
};

GeneratorConditions generator_conditions(const GeneratorFunction& gf, const PhasePoint& p);

// Defect of d_J alpha = -3 d_J d_{h0} P, scale-corrected.
double dja_identity_residual(const ProjectiveFactor& pf, const PhasePoint& p);

}  // namespace spraymet

#endif  // SPRAYMET_HILBERT_HPP
