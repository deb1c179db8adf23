#include "spraymet/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "spraymet/geometry.hpp"
#include "spraymet/linalg.hpp"

namespace spraymet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> scaled(const std::vector<double>& v, double c) {
  std::vector<double> out = v;
  for (double& a : out) a *= c;
  return out;
}

// One parametric path leg on [0, 1] with an analytic velocity.
struct PathLeg {
  enum class Kind { kStraight, kArc } kind = Kind::kStraight;
  std::vector<double> a, b;  // endpoints (straight) or unit endpoints (arc)
  double theta = 0.0;        // arc angle
  bool carries_endpoint = false;

  double length() const {
    if (kind == Kind::kArc) return theta;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
    return std::sqrt(s);
  }

  void eval(double t, std::vector<double>& pos, std::vector<double>& vel) const {
    std::size_t n = a.size();
    pos.resize(n);
    vel.resize(n);
    if (kind == Kind::kStraight) {
      for (std::size_t i = 0; i < n; ++i) {
        pos[i] = a[i] + t * (b[i] - a[i]);
        vel[i] = b[i] - a[i];
      }
      return;
    }
    double st = std::sin(theta);
    double c0 = std::sin((1.0 - t) * theta) / st;
    double c1 = std::sin(t * theta) / st;
    double d0 = -theta * std::cos((1.0 - t) * theta) / st;
    double d1 = theta * std::cos(t * theta) / st;
    for (std::size_t i = 0; i < n; ++i) {
      pos[i] = c0 * a[i] + c1 * b[i];
      vel[i] = d0 * a[i] + d1 * b[i];
    }
  }
};

std::vector<PathLeg> arc_legs(const std::vector<double>& u, const std::vector<double>& v) {
  double c = std::clamp(dot(u, v), -1.0, 1.0);
  double theta = std::acos(c);
  if (theta < 1e-12) return {};
  if (std::sin(theta) > 1e-9) {
    PathLeg leg;
    leg.kind = PathLeg::Kind::kArc;
    leg.a = u;
    leg.b = v;
    leg.theta = theta;
    return {leg};
  }
  // Nearly antipodal: route through a deterministic orthogonal midpoint.
  std::size_t k = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (std::abs(u[i]) < std::abs(u[k])) k = i;
  }
  std::vector<double> w(u.size(), 0.0);
  w[k] = 1.0;
  double proj = dot(w, u);
  for (std::size_t i = 0; i < u.size(); ++i) w[i] -= proj * u[i];
  double wn = norm(w);
  if (wn < 1e-12) throw Error("cannot construct an arc waypoint");
  for (double& a : w) a /= wn;
  auto first = arc_legs(u, w);
  auto second = arc_legs(w, v);
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  if (order < 2 || order > 64) throw Error("gauss order out of range");
  static std::mutex mutex;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> nw;
  int n = order;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P_n'(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nw.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
  }
  std::sort(nw.begin(), nw.end());
  return cache.emplace(order, std::move(nw)).first->second;
}

struct Reconstruction::SigmaSample {
  int n = 0;
  std::vector<double> sigma;  // n
  std::vector<double> dsx;    // n*n, [i*n + j] = d sigma_i/dx^j
  std::vector<double> dsy;    // n*n
  std::vector<double> N;      // n*n
  std::vector<double> dNdx;   // n*n*n, [(i*n + j)*n + k] = d N^i_j/dx^k
  double rho = 0.0;
};

Reconstruction::SigmaSample Reconstruction::sigma_sample(const std::vector<double>& x,
                                                         const std::vector<double>& y) const {
  PhasePoint p(x, y);
  if (!spray_.admitted(p)) throw PathDomainError("point outside the admitted domain");
  GeometryJets gj = geometry_jets(spray_, p, 3, true);
  if (gj.iso_residual > tests_.tol_iso) {
    throw Error("reconstruction: spray is not isotropic along the path");
  }
  if (std::abs(gj.rho.value()) < tests_.min_rho * gj.iso_scale || gj.sigma.empty()) {
    throw RicciDegenerateError("reconstruction: Ricci scalar vanishes along the path");
  }
  int n = gj.n;
  SigmaSample s;
  s.n = n;
  s.rho = gj.rho.value();
  s.sigma.resize(static_cast<std::size_t>(n));
  s.dsx.resize(static_cast<std::size_t>(n * n));
  s.dsy.resize(static_cast<std::size_t>(n * n));
  s.N.resize(static_cast<std::size_t>(n * n));
  s.dNdx.resize(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    const Jet& si = gj.sigma[static_cast<std::size_t>(i)];
    s.sigma[static_cast<std::size_t>(i)] = si.value();
    for (int j = 0; j < n; ++j) {
      s.dsx[static_cast<std::size_t>(i * n + j)] = si.partial1(gj.x_slot(j));
      s.dsy[static_cast<std::size_t>(i * n + j)] = si.partial1(gj.y_slot(j));
      s.N[static_cast<std::size_t>(i * n + j)] = gj.N[static_cast<std::size_t>(i * n + j)].value();
      for (int k = 0; k < n; ++k) {
        s.dNdx[static_cast<std::size_t>((i * n + j) * n + k)] =
            gj.N[static_cast<std::size_t>(i * n + j)].partial1(gj.x_slot(k));
      }
    }
  }
  return s;
}

Reconstruction::Reconstruction(Spray spray, TestConfig tests, QuadratureConfig quad)
    : spray_(std::move(spray)), tests_(std::move(tests)), quad_(std::move(quad)) {
  int n = spray_.dimension();
  if (static_cast<int>(quad_.y_ref.size()) != n || static_cast<int>(quad_.x_ref.size()) != n) {
    throw Error("reconstruction: x_ref/y_ref must have the spray dimension");
  }
  if (!spray_.admitted(PhasePoint(quad_.x_ref, quad_.y_ref))) {
    throw Error("reconstruction: (x_ref, y_ref) is not admitted");
  }
  for (const auto& w : quad_.waypoints) {
    if (static_cast<int>(w.size()) != n) throw Error("reconstruction: waypoint dimension mismatch");
  }
}

FiberPotential Reconstruction::integrate_fiber(const std::vector<double>& x,
                                               const std::vector<double>& y) const {
  int n = spray_.dimension();
  FiberPotential out;
  out.grad_x.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<PathLeg> legs;
  bool split = quad_.homogeneity_split;
  if (split) {
    double ry = norm(y), rr = norm(quad_.y_ref);
    out.f0 = std::log(ry / rr);
    legs = arc_legs(scaled(quad_.y_ref, 1.0 / rr), scaled(y, 1.0 / ry));
  } else {
    out.grad_y.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> pts;
    pts.push_back(quad_.y_ref);
    for (const auto& w : quad_.waypoints) pts.push_back(w);
    pts.push_back(y);
    for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
      PathLeg leg;
      leg.a = pts[q];
      leg.b = pts[q + 1];
      leg.carries_endpoint = (q + 2 == pts.size());
      if (leg.length() > 0.0) legs.push_back(std::move(leg));
    }
  }

  const auto& nodes = gauss_legendre(quad_.gauss_order);
  std::vector<double> pos, vel;

  for (const PathLeg& leg : legs) {
    int panels = std::max(1, static_cast<int>(std::ceil(leg.length() * quad_.panels_per_unit_length)));
    double prev_value = 0.0;
    bool have_prev = false;
    for (int refine = 0; refine <= quad_.max_refinements; ++refine) {
      double value = 0.0;
      std::vector<double> gx(static_cast<std::size_t>(n), 0.0);
      std::vector<double> gy(static_cast<std::size_t>(n), 0.0);
      for (int q = 0; q < panels; ++q) {
        for (const auto& [xi, wi] : nodes) {
          double t = (q + 0.5 + 0.5 * xi) / panels;
          double w = 0.5 * wi / panels;
          leg.eval(t, pos, vel);
          SigmaSample s = sigma_sample(x, pos);
          double sv = 0.0;
          for (int i = 0; i < n; ++i) sv += s.sigma[static_cast<std::size_t>(i)] * vel[static_cast<std::size_t>(i)];
          value += w * sv;
          for (int j = 0; j < n; ++j) {
            double gj = 0.0;
            for (int i = 0; i < n; ++i) {
              gj += s.dsx[static_cast<std::size_t>(i * n + j)] * vel[static_cast<std::size_t>(i)];
            }
            gx[static_cast<std::size_t>(j)] += w * gj;
          }
          if (!split && leg.carries_endpoint) {
            for (int m = 0; m < n; ++m) {
              double gm = s.sigma[static_cast<std::size_t>(m)];
              for (int i = 0; i < n; ++i) {
                gm += t * s.dsy[static_cast<std::size_t>(i * n + m)] * vel[static_cast<std::size_t>(i)];
              }
              gy[static_cast<std::size_t>(m)] += w * gm;
            }
          }
        }
      }
      bool converged = have_prev && std::abs(value - prev_value) <= 0.5 * quad_.target_abs_tol;
      if (converged || refine == quad_.max_refinements) {
        if (!converged && have_prev) {
          throw ToleranceError("fiber quadrature did not reach the target tolerance");
        }
        out.f0 += value;
        for (int j = 0; j < n; ++j) out.grad_x[static_cast<std::size_t>(j)] += gx[static_cast<std::size_t>(j)];
        if (!split && leg.carries_endpoint) {
          for (int m = 0; m < n; ++m) out.grad_y[static_cast<std::size_t>(m)] += gy[static_cast<std::size_t>(m)];
        }
        break;
      }
      prev_value = value;
      have_prev = true;
      panels *= 2;
    }
  }
  return out;
}

FiberPotential Reconstruction::fiber_potential(const std::vector<double>& x,
                                               const std::vector<double>& y) const {
  return integrate_fiber(x, y);
}

std::vector<double> Reconstruction::omega_ref_slice(const std::vector<double>& x) const {
  // f0(x, y_ref) = 0 for every x, so the quadrature term drops out and
  // omega_i(x, y_ref) = -N^j_i sigma_j evaluated on the slice.
  int n = spray_.dimension();
  SigmaSample s = sigma_sample(x, quad_.y_ref);
  std::vector<double> omega(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += s.N[static_cast<std::size_t>(j * n + i)] * s.sigma[static_cast<std::size_t>(j)];
    }
    omega[static_cast<std::size_t>(i)] = -acc;
  }
  return omega;
}

HorizontalForm Reconstruction::horizontal_form(const std::vector<double>& x,
                                               const std::vector<double>& y) const {
  int n = spray_.dimension();
  HorizontalForm out;

  auto omega_at = [&](const std::vector<double>& yy) {
    FiberPotential fp = integrate_fiber(x, yy);
    SigmaSample s = sigma_sample(x, yy);
    std::vector<double> omega(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = fp.grad_x[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        acc -= s.N[static_cast<std::size_t>(j * n + i)] * s.sigma[static_cast<std::size_t>(j)];
      }
      omega[static_cast<std::size_t>(i)] = acc;
    }
    return omega;
  };

  out.omega = omega_at(y);
  out.omega_ref = omega_ref_slice(x);

  // Probe a few admitted fiber points; omega should not depend on y.
  std::vector<std::vector<double>> probes;
  probes.push_back(y);
  std::vector<double> mid(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) mid[i] = 0.5 * (y[i] + quad_.y_ref[i]);
  probes.push_back(std::move(mid));
  probes.push_back(scaled(quad_.y_ref, 1.25));
  probes.push_back(scaled(y, 0.85));

  std::vector<std::vector<double>> values;
  values.push_back(out.omega_ref);
  for (const auto& probe : probes) {
    PhasePoint p(x, probe);
    if (!spray_.admitted(p)) continue;
    values.push_back(omega_at(probe));
  }
  double spread = 0.0, magnitude = 0.0;
  for (int i = 0; i < n; ++i) {
    double lo = values[0][static_cast<std::size_t>(i)], hi = lo;
    for (const auto& v : values) {
      lo = std::min(lo, v[static_cast<std::size_t>(i)]);
      hi = std::max(hi, v[static_cast<std::size_t>(i)]);
      magnitude = std::max(magnitude, std::abs(v[static_cast<std::size_t>(i)]));
    }
    spread = std::max(spread, hi - lo);
  }
  out.basic_residual = spread / (1.0 + magnitude);

  // Closedness of the y_ref slice: d omega_i/dx^k antisymmetrized, with
  // omega_i = -N^j_i sigma_j differentiated through the jets.
  SigmaSample s = sigma_sample(x, quad_.y_ref);
  std::vector<double> domega(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += s.dNdx[static_cast<std::size_t>((j * n + i) * n + k)] * s.sigma[static_cast<std::size_t>(j)] +
               s.N[static_cast<std::size_t>(j * n + i)] * s.dsx[static_cast<std::size_t>(j * n + k)];
      }
      domega[static_cast<std::size_t>(i * n + k)] = -acc;
    }
  }
  double defect = 0.0, dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      defect = std::max(defect, std::abs(domega[static_cast<std::size_t>(i * n + k)] -
                                         domega[static_cast<std::size_t>(k * n + i)]));
    }
  }
  for (double v : domega) dmax = std::max(dmax, std::abs(v));
  out.closed_residual = defect / (1.0 + dmax);
  return out;
}

double Reconstruction::base_potential(const std::vector<double>& x) const {
  {
    std::lock_guard<std::mutex> lock(b_mutex_);
    auto it = b_cache_.find(x);
    if (it != b_cache_.end()) return it->second;
  }
  int n = spray_.dimension();
  PathLeg leg;
  leg.a = quad_.x_ref;
  leg.b = x;
  double b = 0.0;
  if (leg.length() > 0.0) {
    const auto& nodes = gauss_legendre(quad_.gauss_order);
    int panels = std::max(1, static_cast<int>(std::ceil(leg.length() * quad_.panels_per_unit_length)));
    double prev = 0.0;
    bool have_prev = false;
    std::vector<double> pos, vel;
    for (int refine = 0; refine <= quad_.max_refinements; ++refine) {
      double value = 0.0;
      for (int q = 0; q < panels; ++q) {
        for (const auto& [xi, wi] : nodes) {
          double t = (q + 0.5 + 0.5 * xi) / panels;
          double w = 0.5 * wi / panels;
          leg.eval(t, pos, vel);
          std::vector<double> omega = omega_ref_slice(pos);
          double sv = 0.0;
          for (int i = 0; i < n; ++i) sv += omega[static_cast<std::size_t>(i)] * vel[static_cast<std::size_t>(i)];
          value += w * sv;
        }
      }
      bool converged = have_prev && std::abs(value - prev) <= 0.5 * quad_.target_abs_tol;
      if (converged || refine == quad_.max_refinements) {
        if (!converged && have_prev) {
          throw ToleranceError("base quadrature did not reach the target tolerance");
        }
        b = value;
        break;
      }
      prev = value;
      have_prev = true;
      panels *= 2;
    }
  }
  std::lock_guard<std::mutex> lock(b_mutex_);
  return b_cache_.emplace(x, b).first->second;
}

FinslerValue Reconstruction::finsler_value(const std::vector<double>& x,
                                           const std::vector<double>& y) const {
  FinslerValue out;
  out.f0 = integrate_fiber(x, y).f0;
  out.b = base_potential(x);
  out.F = std::exp(out.f0 - out.b);
  CurvatureData cd = jacobi(spray_, PhasePoint(x, y));
  out.kappa = cd.rho / (out.F * out.F);
  return out;
}

std::vector<double> Reconstruction::energy_hessian(const std::vector<double>& x,
                                                   const std::vector<double>& y) const {
  int n = spray_.dimension();
  SigmaSample s = sigma_sample(x, y);
  FinslerValue fv = finsler_value(x, y);
  double f2 = fv.F * fv.F;
  std::vector<double> g(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g[static_cast<std::size_t>(i * n + j)] =
          f2 * (s.dsy[static_cast<std::size_t>(i * n + j)] +
                2.0 * s.sigma[static_cast<std::size_t>(i)] * s.sigma[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

VerificationRecord Reconstruction::verify(const std::vector<PhasePoint>& points) const {
  int n = spray_.dimension();
  VerificationRecord rec;
  rec.hessian_rank_min = n;
  rec.hessian_rank_max = 0;
  bool first = true;

  for (const PhasePoint& p : points) {
    SigmaSample s = sigma_sample(p.x, p.y);
    FiberPotential fp = integrate_fiber(p.x, p.y);
    double b = base_potential(p.x);
    std::vector<double> omega_ref = omega_ref_slice(p.x);
    double F = std::exp(fp.f0 - b);
    double f2 = F * F;

    std::vector<double> gcoef(static_cast<std::size_t>(n));
    {
      std::vector<Jet> gj = spray_.coefficient_jets(p, 0);
      for (int i = 0; i < n; ++i) gcoef[static_cast<std::size_t>(i)] = gj[static_cast<std::size_t>(i)].value();
    }

    // d_h F residual: F * (omega(x, y) - omega(x, y_ref)).
    double nfrob = 0.0;
    for (double v : s.N) nfrob += v * v;
    nfrob = std::sqrt(nfrob);
    double dh = 0.0;
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double omega_i = fp.grad_x[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        omega_i -= s.N[static_cast<std::size_t>(j * n + i)] * s.sigma[static_cast<std::size_t>(j)];
      }
      w[static_cast<std::size_t>(i)] =
          fp.grad_x[static_cast<std::size_t>(i)] - omega_ref[static_cast<std::size_t>(i)];
      dh = std::max(dh, std::abs(F * (omega_i - omega_ref[static_cast<std::size_t>(i)])));
    }
    rec.max_dh_residual = std::max(rec.max_dh_residual, dh / (F * (1.0 + nfrob)));

    // Euler-Lagrange form i_S dd_J F^2 + d F^2 with E = F^2:
    //   dE/dx^i = 2 E w_i, dE/dy^i = 2 E sigma_i,
    //   A_ji = d2E/dx^j dy^i = 2E (2 w_j sigma_i + d sigma_i/dx^j),
    //   B_ji = d2E/dy^j dy^i = 2E (2 sigma_j sigma_i + d sigma_i/dy^j).
    std::vector<double> A(static_cast<std::size_t>(n * n)), B(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        A[static_cast<std::size_t>(j * n + i)] =
            2.0 * f2 * (2.0 * w[static_cast<std::size_t>(j)] * s.sigma[static_cast<std::size_t>(i)] +
                        s.dsx[static_cast<std::size_t>(i * n + j)]);
        B[static_cast<std::size_t>(j * n + i)] =
            2.0 * f2 * (2.0 * s.sigma[static_cast<std::size_t>(j)] * s.sigma[static_cast<std::size_t>(i)] +
                        s.dsy[static_cast<std::size_t>(i * n + j)]);
      }
    }
    double el = 0.0, el_scale = 1.0;
    for (int i = 0; i < n; ++i) {
      el_scale = std::max({el_scale, 2.0 * f2 * std::abs(w[static_cast<std::size_t>(i)]),
                           2.0 * f2 * std::abs(s.sigma[static_cast<std::size_t>(i)])});
    }
    for (int i = 0; i < n; ++i) {
      double dx_comp = 2.0 * f2 * w[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        dx_comp += (A[static_cast<std::size_t>(j * n + i)] - A[static_cast<std::size_t>(i * n + j)]) *
                   p.y[static_cast<std::size_t>(j)];
        dx_comp -= 2.0 * gcoef[static_cast<std::size_t>(j)] * B[static_cast<std::size_t>(j * n + i)];
      }
      double dy_comp = 2.0 * f2 * s.sigma[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        dy_comp -= B[static_cast<std::size_t>(i * n + j)] * p.y[static_cast<std::size_t>(j)];
      }
      el = std::max({el, std::abs(dx_comp), std::abs(dy_comp)});
    }
    rec.max_el_residual = std::max(rec.max_el_residual, el / el_scale);

    // Energy Hessian rank.
    std::vector<double> g(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        g[static_cast<std::size_t>(i * n + j)] =
            f2 * (s.dsy[static_cast<std::size_t>(i * n + j)] +
                  2.0 * s.sigma[static_cast<std::size_t>(i)] * s.sigma[static_cast<std::size_t>(j)]);
      }
    }
    int rank = svd_rank(g, n, n, tests_.rank_rtol).rank;
    if (first) {
      rec.hessian_rank_min = rank;
      rec.hessian_rank_max = rank;
      first = false;
    } else {
      rec.hessian_rank_min = std::min(rec.hessian_rank_min, rank);
      rec.hessian_rank_max = std::max(rec.hessian_rank_max, rank);
    }
  }
  rec.regular = !first && rec.hessian_rank_min == n;
  return rec;
}

FiberPotential fiber_potential(const Spray& s, const std::vector<double>& x,
                               const std::vector<double>& y, const TestConfig& tests,
                               const QuadratureConfig& quad) {
  return Reconstruction(s, tests, quad).fiber_potential(x, y);
}

HorizontalForm horizontal_form(const Spray& s, const std::vector<double>& x,
                               const std::vector<double>& y, const TestConfig& tests,
                               const QuadratureConfig& quad) {
  return Reconstruction(s, tests, quad).horizontal_form(x, y);
}

double base_potential(const Spray& s, const std::vector<double>& x, const TestConfig& tests,
                      const QuadratureConfig& quad) {
  return Reconstruction(s, tests, quad).base_potential(x);
}

FinslerValue finsler_value(const Spray& s, const std::vector<double>& x,
                           const std::vector<double>& y, const TestConfig& tests,
                           const QuadratureConfig& quad) {
  return Reconstruction(s, tests, quad).finsler_value(x, y);
}

}  // namespace spraymet
