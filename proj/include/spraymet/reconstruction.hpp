#ifndef SPRAYMET_RECONSTRUCTION_HPP
#define SPRAYMET_RECONSTRUCTION_HPP

// Constructive rebuild of the Finsler function once the tests pass:
//   fiber potential   f0(x, y) = integral of sigma along a fiber path,
//   horizontal form   omega_i  = d f0/dx^i - N^j_i sigma_j,
//   base potential    b(x)     = integral of omega(., y_ref),
//   F = exp(f0 - b),  kappa = rho / F^2.
// Everything is defined up to one positive multiplicative constant fixed
// by the caller at an anchor point.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "spraymet/metrizability.hpp"
#include "spraymet/spray.hpp"

namespace spraymet {

struct QuadratureConfig {
  int gauss_order = 16;
  double panels_per_unit_length = 4.0;
  double target_abs_tol = 1e-10;
  int max_refinements = 10;
  std::vector<double> y_ref;
  std::vector<double> x_ref;
  // Optional intermediate fiber points between y_ref and the target y.
  std::vector<std::vector<double>> waypoints;
  // Integrate radially by homogeneity (f0 = ln|y|/|y_ref| + arc integral);
  // needed when straight fiber segments would pass near y = 0.
  bool homogeneity_split = false;
};

struct FiberPotential {
  double f0 = 0.0;
  std::vector<double> grad_x;  // d f0/dx^j, differentiated under the integral
  std::vector<double> grad_y;  // end-point derivative; empty in split mode
};

struct HorizontalForm {
  std::vector<double> omega;     // at the requested (x, y)
  std::vector<double> omega_ref; // on the y_ref slice (what b integrates)
  double basic_residual = 0.0;   // variation of omega over fiber probes
  double closed_residual = 0.0;  // antisymmetry defect of d omega on the y_ref slice
};

struct FinslerValue {
  double F = 0.0;
  double kappa = 0.0;
  double f0 = 0.0;
  double b = 0.0;
};

struct VerificationRecord {
  double max_dh_residual = 0.0;    // d_h F, scale-corrected
  double max_el_residual = 0.0;    // i_S dd_J F^2 + d F^2, scale-corrected
  int hessian_rank_min = 0;        // energy Hessian g_ij = F^2 (dsigma_i/dy^j + 2 s_i s_j)
  int hessian_rank_max = 0;
  bool regular = false;            // rank n at every point
};

class Reconstruction {
 public:
  Reconstruction(Spray spray, TestConfig tests, QuadratureConfig quad);

  const QuadratureConfig& config() const { return quad_; }
  const Spray& spray() const { return spray_; }

  FiberPotential fiber_potential(const std::vector<double>& x, const std::vector<double>& y) const;
  HorizontalForm horizontal_form(const std::vector<double>& x, const std::vector<double>& y) const;
  double base_potential(const std::vector<double>& x) const;
  FinslerValue finsler_value(const std::vector<double>& x, const std::vector<double>& y) const;

  // Energy Hessian at a point (row-major n x n) for metric comparisons.
  std::vector<double> energy_hessian(const std::vector<double>& x, const std::vector<double>& y) const;

  VerificationRecord verify(const std::vector<PhasePoint>& points) const;

 private:
  struct SigmaSample;
  SigmaSample sigma_sample(const std::vector<double>& x, const std::vector<double>& y) const;
  FiberPotential integrate_fiber(const std::vector<double>& x, const std::vector<double>& y) const;
  std::vector<double> omega_ref_slice(const std::vector<double>& x) const;

  Spray spray_;
  TestConfig tests_;
  QuadratureConfig quad_;
  mutable std::map<std::vector<double>, double> b_cache_;
  mutable std::mutex b_mutex_;
};

// Spec-level entry points; each builds on a shared Reconstruction.
FiberPotential fiber_potential(const Spray& s, const std::vector<double>& x,
                               const std::vector<double>& y, const TestConfig& tests,
                               const QuadratureConfig& quad);
HorizontalForm horizontal_form(const Spray& s, const std::vector<double>& x,
                               const std::vector<double>& y, const TestConfig& tests,
                               const QuadratureConfig& quad);
double base_potential(const Spray& s, const std::vector<double>& x, const TestConfig& tests,
                      const QuadratureConfig& quad);
FinslerValue finsler_value(const Spray& s, const std::vector<double>& x,
                           const std::vector<double>& y, const TestConfig& tests,
                           const QuadratureConfig& quad);

// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

}  // namespace spraymet

#endif  // SPRAYMET_RECONSTRUCTION_HPP
