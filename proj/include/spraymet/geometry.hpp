#ifndef SPRAYMET_GEOMETRY_HPP
#define SPRAYMET_GEOMETRY_HPP

// Canonical objects attached to a spray at a phase point: nonlinear
// connection N^i_j = dG^i/dy^j, Berwald coefficients, curvature tensor,
// Jacobi endomorphism, Ricci scalar and the isotropy decomposition
// Phi = rho J - alpha (x) C.
//
// Index conventions (all arrays row-major):
//   N[i*n + j]          = N^i_j
//   Gamma[(i*n + j)*n + k] = Gamma^i_{jk} = dN^i_j/dy^k
//   Rten[(i*n + j)*n + k]  = R^i_{jk} = delta N^i_j/delta x^k - delta N^i_k/delta x^j
//   Phi[i*n + j]        = Phi^i_j
// The curvature components are stored without a 1/2 prefactor; the
// contraction Phi^i_j = R^i_{kj} y^k reproduces the Jacobi endomorphism
// and is enforced by tests.

#include <vector>

#include "spraymet/jet.hpp"
#include "spraymet/spray.hpp"

namespace spraymet {

struct ConnectionData {
  int n = 0;
  std::vector<double> N;      // n*n
  std::vector<double> Gamma;  // n*n*n
};

struct CurvatureData {
  int n = 0;
  std::vector<double> Rten;  // n*n*n; filled by curvature()
  std::vector<double> Phi;   // n*n;   filled by jacobi()
  double rho = 0.0;          //        filled by jacobi()
};

struct IsotropyData {
  double rho = 0.0;
  std::vector<double> alpha;  // n
  double residual = 0.0;      // ||Phi - rho J + alpha (x) C||_F / scale
  bool isotropic = false;
  double scale = 0.0;     // max(||Phi||_F, |rho| sqrt(n), 1e-300)
  double phi_norm = 0.0;  // ||Phi||_F
};

ConnectionData connection(const Spray& s, const PhasePoint& p);
CurvatureData curvature(const Spray& s, const PhasePoint& p);
CurvatureData jacobi(const Spray& s, const PhasePoint& p);
IsotropyData isotropy(const Spray& s, const PhasePoint& p, double tol);

// Whole pipeline evaluated in jet arithmetic so that derivatives of the
// derived tensors stay exact: G at order k gives N at k-1 and Phi, rho,
// alpha, sigma at k-2.  sigma is only produced when |rho| > 0 and
// want_sigma is set.
struct GeometryJets {
  int n = 0;
  PhasePoint point;
  std::vector<Jet> G;      // n, order k
  std::vector<Jet> N;      // n*n, order k-1
  std::vector<Jet> dGdx;   // n*n, order k-1
  std::vector<Jet> Phi;    // n*n, order k-2
  Jet rho;                 // order k-2
  std::vector<Jet> alpha;  // n, order k-2
  std::vector<Jet> sigma;  // n, order k-2; empty unless requested and valid

  double iso_residual = 0.0;
  double iso_scale = 0.0;
  double phi_frob = 0.0;

  int x_slot(int i) const { return i; }
  int y_slot(int j) const { return n + j; }
};

GeometryJets geometry_jets(const Spray& s, const PhasePoint& p, int g_order, bool want_sigma);

}  // namespace spraymet

#endif  // SPRAYMET_GEOMETRY_HPP
