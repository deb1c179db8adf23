#ifndef SPRAYMET_METRIZABILITY_HPP
#define SPRAYMET_METRIZABILITY_HPP

// Pointwise metrizability tests.  A spray passes when, at every sampled
// point, it is isotropic with non-vanishing Ricci scalar, sigma = alpha/rho
// is d_J-closed and horizontally covariant-constant, and the associated
// 2-form has the right rank.  Constant-curvature tests (d_J alpha = 0,
// d_h rho = 0, rank dd_J rho = 2n) run before the scalar regularity test
// because constant is the stronger verdict.
//
// The conditions are tensorial identities; evaluating them on a finite
// sample gives evidence, not proof.  All residuals are scale-corrected so
// the configured tolerances are dimensionless.

#include <map>
#include <string>
#include <vector>

#include "spraymet/geometry.hpp"
#include "spraymet/spray.hpp"

namespace spraymet {

// Raised when |rho| falls below the configured threshold where a
// non-vanishing Ricci scalar is required.
class RicciDegenerateError : public Error {
 public:
  using Error::Error;
};

struct TestConfig {
  double tol_iso = 1e-7;
  double tol_ii = 1e-7;
  double tol_iii = 1e-7;
  double tol_unit = 1e-7;
  double min_rho = 1e-8;    // relative to the isotropy scale
  double rank_rtol = 1e-8;  // singular-value cutoff ratio
  std::vector<PhasePoint> samples;
};

// sigma_i = alpha_i / rho with its first phase-space partials, evaluated
// through the order-3 jet pipeline.
struct SemiBasicForm {
  PhasePoint point;
  std::vector<double> sigma;      // n
  std::vector<double> dsigma_dx;  // n*n, [i*n + j] = d sigma_i / d x^j
  std::vector<double> dsigma_dy;  // n*n, [i*n + j] = d sigma_i / d y^j
  double unit_residual = 0.0;     // |i_S sigma - 1|
  double rho = 0.0;

  int n() const { return static_cast<int>(sigma.size()); }
};

SemiBasicForm sigma_at(const Spray& s, const PhasePoint& p, const TestConfig& cfg);

// d_J sigma = 0 defect: max_{i<j} |d sigma_i/d y^j - d sigma_j/d y^i| * |y|.
double condition_ii_residual(const SemiBasicForm& f);

// Berwald horizontal covariant derivative defect:
// max_{i,k} |delta sigma_i/delta x^k - sigma_m Gamma^m_{ki}| / (1 + ||N||_F).
double condition_iii_residual(const Spray& s, const PhasePoint& p, const SemiBasicForm& f);

struct RankResult {
  int rank = 0;
  double det_v = 0.0;
  std::vector<double> singular_values;
};

// Rank of Omega = d sigma + 2 (i_F sigma) ^ sigma assembled in the
// coordinate coframe as [[H, -V^T], [V, 0]].
RankResult regularity_rank(const Spray& s, const PhasePoint& p, const SemiBasicForm& f,
                           const TestConfig& cfg);

struct ConstantCurvatureResult {
  double res_c1 = 0.0;  // d_J alpha antisymmetry defect, scale-corrected
  double res_c2 = 0.0;  // d_h rho defect, scale-corrected
  int rank_c3 = 0;      // rank of dd_J rho
};

ConstantCurvatureResult constant_curvature_tests(const Spray& s, const PhasePoint& p,
                                                 const TestConfig& cfg);

enum class Verdict {
  kNotHomogeneous,
  kNonIsotropic,
  kRicciDegenerate,
  kFailsConditionII,
  kFailsConditionIII,
  kMetrizableConstant,
  kMetrizableScalar,
  kRankDeficientCandidate,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& name);

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  PhasePoint argmax;
  int count = 0;

  void add(double value, const PhasePoint& p) {
    if (count == 0 || value > max) {
      max = value;
      argmax = p;
    }
    mean = (mean * count + value) / (count + 1);
    ++count;
  }
};

struct ClassificationReport {
  Verdict verdict = Verdict::kRicciDegenerate;
  std::map<std::string, ResidualStats> residuals;  // keyed by condition name
  std::vector<int> regularity_ranks;               // per sampled point, when reached
  std::vector<double> regularity_det_v;
  std::vector<int> ddjrho_ranks;
  int full_rank = 0;  // 2n
  std::vector<std::string> notes;
};

// Fixed decision ladder: homogeneity, isotropy, |rho| threshold,
// condition ii, condition iii, constant-curvature tests, regularity rank.
ClassificationReport classify(const Spray& s, const TestConfig& cfg);

}  // namespace spraymet

#endif  // SPRAYMET_METRIZABILITY_HPP
