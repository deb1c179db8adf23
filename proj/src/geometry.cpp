#include "spraymet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace spraymet {

namespace {

double frobenius(const std::vector<double>& m) {
  double s = 0.0;
  for (double v : m) s += v * v;
  return std::sqrt(s);
}

// Least-squares alpha from Phi = rho J - alpha (x) C:
// alpha_j = sum_i y^i (rho d^i_j - Phi^i_j) / |y|^2.
std::vector<double> solve_alpha(int n, const std::vector<double>& phi, double rho,
                                const std::vector<double>& y) {
  double yy = 0.0;
  for (double v : y) yy += v * v;
  std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double target = (i == j ? rho : 0.0) - phi[static_cast<std::size_t>(i * n + j)];
      acc += y[static_cast<std::size_t>(i)] * target;
    }
    alpha[static_cast<std::size_t>(j)] = acc / yy;
  }
  return alpha;
}

}  // namespace

ConnectionData connection(const Spray& s, const PhasePoint& p) {
  int n = s.dimension();
  std::vector<Jet> g = s.coefficient_jets(p, 2);
  ConnectionData c;
  c.n = n;
  c.N.resize(static_cast<std::size_t>(n * n));
  c.Gamma.resize(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      c.N[static_cast<std::size_t>(i * n + j)] = g[static_cast<std::size_t>(i)].partial1(n + j);
      for (int k = 0; k < n; ++k) {
        c.Gamma[static_cast<std::size_t>((i * n + j) * n + k)] =
            g[static_cast<std::size_t>(i)].partial2(n + j, n + k);
      }
    }
  }
  return c;
}

CurvatureData curvature(const Spray& s, const PhasePoint& p) {
  int n = s.dimension();
  std::vector<Jet> g = s.coefficient_jets(p, 2);
  // delta N^i_j / delta x^k = d2G^i/dx^k dy^j - N^m_k d2G^i/dy^m dy^j
  std::vector<double> N(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      N[static_cast<std::size_t>(i * n + j)] = g[static_cast<std::size_t>(i)].partial1(n + j);
    }
  }
  std::vector<double> deltaN(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double v = g[static_cast<std::size_t>(i)].partial2(k, n + j);
        for (int m = 0; m < n; ++m) {
          v -= N[static_cast<std::size_t>(m * n + k)] *
               g[static_cast<std::size_t>(i)].partial2(n + m, n + j);
        }
        deltaN[static_cast<std::size_t>((i * n + j) * n + k)] = v;
      }
    }
  }
  CurvatureData out;
  out.n = n;
  out.Rten.resize(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        out.Rten[static_cast<std::size_t>((i * n + j) * n + k)] =
            deltaN[static_cast<std::size_t>((i * n + j) * n + k)] -
            deltaN[static_cast<std::size_t>((i * n + k) * n + j)];
      }
    }
  }
  return out;
}

CurvatureData jacobi(const Spray& s, const PhasePoint& p) {
  int n = s.dimension();
  std::vector<Jet> g = s.coefficient_jets(p, 2);
  std::vector<double> N(static_cast<std::size_t>(n * n));
  std::vector<double> gval(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    gval[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)].value();
    for (int j = 0; j < n; ++j) {
      N[static_cast<std::size_t>(i * n + j)] = g[static_cast<std::size_t>(i)].partial1(n + j);
    }
  }
  CurvatureData out;
  out.n = n;
  out.Phi.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // S(N^i_j) = y^k d2G^i/dx^k dy^j - 2 G^k d2G^i/dy^k dy^j
      double sn = 0.0;
      for (int k = 0; k < n; ++k) {
        sn += p.y[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(i)].partial2(k, n + j);
        sn -= 2.0 * gval[static_cast<std::size_t>(k)] *
              g[static_cast<std::size_t>(i)].partial2(n + k, n + j);
      }
      double nn = 0.0;
      for (int k = 0; k < n; ++k) {
        nn += N[static_cast<std::size_t>(i * n + k)] * N[static_cast<std::size_t>(k * n + j)];
      }
      out.Phi[static_cast<std::size_t>(i * n + j)] =
          2.0 * g[static_cast<std::size_t>(i)].partial1(j) - sn - nn;
    }
  }
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += out.Phi[static_cast<std::size_t>(i * n + i)];
  out.rho = tr / (n - 1);
  return out;
}

IsotropyData isotropy(const Spray& s, const PhasePoint& p, double tol) {
  int n = s.dimension();
  CurvatureData cd = jacobi(s, p);
  IsotropyData iso;
  iso.rho = cd.rho;
  iso.alpha = solve_alpha(n, cd.Phi, cd.rho, p.y);
  iso.phi_norm = frobenius(cd.Phi);
  iso.scale = std::max({iso.phi_norm, std::abs(cd.rho) * std::sqrt(static_cast<double>(n)), 1e-300});
  double err2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double e = cd.Phi[static_cast<std::size_t>(i * n + j)] - (i == j ? cd.rho : 0.0) +
                 iso.alpha[static_cast<std::size_t>(j)] * p.y[static_cast<std::size_t>(i)];
      err2 += e * e;
    }
  }
  iso.residual = std::sqrt(err2) / iso.scale;
  iso.isotropic = iso.residual <= tol;
  return iso;
}

GeometryJets geometry_jets(const Spray& s, const PhasePoint& p, int g_order, bool want_sigma) {
  if (g_order < 2) throw Error("geometry_jets needs G jets of order >= 2");
  int n = s.dimension();
  GeometryJets gj;
  gj.n = n;
  gj.point = p;
  gj.G = s.coefficient_jets(p, g_order);
  const JetLayout* layout = gj.G.front().layout();

  gj.N.reserve(static_cast<std::size_t>(n * n));
  gj.dGdx.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gj.N.push_back(gj.G[static_cast<std::size_t>(i)].derivative(n + j));
      gj.dGdx.push_back(gj.G[static_cast<std::size_t>(i)].derivative(j));
    }
  }

  // Seeds for y^k and the G^k themselves enter S(N^i_j); products align
  // to the lowest order automatically.
  std::vector<Jet> yjet;
  yjet.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    yjet.push_back(Jet::variable(layout, n + k, p.y[static_cast<std::size_t>(k)]));
  }

  gj.Phi.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Jet& nij = gj.N[static_cast<std::size_t>(i * n + j)];
      Jet sn = yjet[0] * nij.derivative(0);
      for (int k = 1; k < n; ++k) sn = sn + yjet[static_cast<std::size_t>(k)] * nij.derivative(k);
      for (int k = 0; k < n; ++k) {
        sn = sn - 2.0 * gj.G[static_cast<std::size_t>(k)] * nij.derivative(n + k);
      }
      Jet nn = gj.N[static_cast<std::size_t>(i * n)] * gj.N[static_cast<std::size_t>(j)];
      for (int k = 1; k < n; ++k) {
        nn = nn + gj.N[static_cast<std::size_t>(i * n + k)] * gj.N[static_cast<std::size_t>(k * n + j)];
      }
      gj.Phi.push_back(2.0 * gj.dGdx[static_cast<std::size_t>(i * n + j)] - sn - nn);
    }
  }

  gj.rho = gj.Phi[0];
  for (int i = 1; i < n; ++i) gj.rho = gj.rho + gj.Phi[static_cast<std::size_t>(i * n + i)];
  gj.rho = gj.rho / static_cast<double>(n - 1);

  // alpha_j = sum_i y^i (rho d^i_j - Phi^i_j) / |y|^2 in jet arithmetic.
  Jet yy = yjet[0] * yjet[0];
  for (int k = 1; k < n; ++k) yy = yy + yjet[static_cast<std::size_t>(k)] * yjet[static_cast<std::size_t>(k)];
  gj.alpha.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Jet acc = (j == 0 ? gj.rho - gj.Phi[0] : -gj.Phi[static_cast<std::size_t>(j)]) * yjet[0];
    for (int i = 1; i < n; ++i) {
      Jet target = (i == j) ? gj.rho - gj.Phi[static_cast<std::size_t>(i * n + j)]
                            : -gj.Phi[static_cast<std::size_t>(i * n + j)];
      acc = acc + target * yjet[static_cast<std::size_t>(i)];
    }
    gj.alpha.push_back(acc / yy);
  }

  // Value-level isotropy evidence.
  double phi2 = 0.0;
  for (const Jet& ph : gj.Phi) phi2 += ph.value() * ph.value();
  gj.phi_frob = std::sqrt(phi2);
  double rho_v = gj.rho.value();
  gj.iso_scale = std::max({gj.phi_frob, std::abs(rho_v) * std::sqrt(static_cast<double>(n)), 1e-300});
  double err2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double e = gj.Phi[static_cast<std::size_t>(i * n + j)].value() - (i == j ? rho_v : 0.0) +
                 gj.alpha[static_cast<std::size_t>(j)].value() * p.y[static_cast<std::size_t>(i)];
      err2 += e * e;
    }
  }
  gj.iso_residual = std::sqrt(err2) / gj.iso_scale;

  if (want_sigma && rho_v != 0.0) {
    gj.sigma.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) gj.sigma.push_back(gj.alpha[static_cast<std::size_t>(j)] / gj.rho);
  }
  return gj;
}

}  // namespace spraymet
