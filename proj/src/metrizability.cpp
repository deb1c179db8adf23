#include "spraymet/metrizability.hpp"

#include <algorithm>
#include <cmath>

#include "spraymet/linalg.hpp"

namespace spraymet {

namespace {

double frob(const std::vector<double>& m) {
  double s = 0.0;
  for (double v : m) s += v * v;
  return std::sqrt(s);
}

SemiBasicForm form_from_jets(const GeometryJets& gj) {
  int n = gj.n;
  SemiBasicForm f;
  f.point = gj.point;
  f.rho = gj.rho.value();
  f.sigma.resize(static_cast<std::size_t>(n));
  f.dsigma_dx.resize(static_cast<std::size_t>(n * n));
  f.dsigma_dy.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const Jet& si = gj.sigma[static_cast<std::size_t>(i)];
    f.sigma[static_cast<std::size_t>(i)] = si.value();
    for (int j = 0; j < n; ++j) {
      f.dsigma_dx[static_cast<std::size_t>(i * n + j)] = si.partial1(gj.x_slot(j));
      f.dsigma_dy[static_cast<std::size_t>(i * n + j)] = si.partial1(gj.y_slot(j));
    }
  }
  double unit = 0.0;
  for (int i = 0; i < n; ++i) {
    unit += f.sigma[static_cast<std::size_t>(i)] * gj.point.y[static_cast<std::size_t>(i)];
  }
  f.unit_residual = std::abs(unit - 1.0);
  return f;
}

// Connection values extracted from already-computed geometry jets.
void connection_values(const GeometryJets& gj, std::vector<double>& N, std::vector<double>& Gamma) {
  int n = gj.n;
  N.resize(static_cast<std::size_t>(n * n));
  Gamma.resize(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      N[static_cast<std::size_t>(i * n + j)] = gj.N[static_cast<std::size_t>(i * n + j)].value();
      for (int k = 0; k < n; ++k) {
        Gamma[static_cast<std::size_t>((i * n + j) * n + k)] =
            gj.N[static_cast<std::size_t>(i * n + j)].partial1(gj.y_slot(k));
      }
    }
  }
}

struct RegularityInput {
  const SemiBasicForm& f;
  const std::vector<double>& N;  // n*n values
};

RankResult regularity_rank_impl(const RegularityInput& in, double rtol) {
  const SemiBasicForm& f = in.f;
  int n = f.n();
  std::vector<double> V(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      V[static_cast<std::size_t>(j * n + i)] =
          f.dsigma_dy[static_cast<std::size_t>(i * n + j)] +
          2.0 * f.sigma[static_cast<std::size_t>(j)] * f.sigma[static_cast<std::size_t>(i)];
    }
  }
  std::vector<double> tau(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      tau[static_cast<std::size_t>(j)] +=
          f.sigma[static_cast<std::size_t>(m)] * in.N[static_cast<std::size_t>(m * n + j)];
    }
  }
  int nn = 2 * n;
  std::vector<double> M(static_cast<std::size_t>(nn * nn), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double h = f.dsigma_dx[static_cast<std::size_t>(i * n + j)] -
                 f.dsigma_dx[static_cast<std::size_t>(j * n + i)] +
                 2.0 * (tau[static_cast<std::size_t>(j)] * f.sigma[static_cast<std::size_t>(i)] -
                        tau[static_cast<std::size_t>(i)] * f.sigma[static_cast<std::size_t>(j)]);
      M[static_cast<std::size_t>(j * nn + i)] = h;
      M[static_cast<std::size_t>(j * nn + (n + i))] = -V[static_cast<std::size_t>(i * n + j)];
      M[static_cast<std::size_t>((n + j) * nn + i)] = V[static_cast<std::size_t>(j * n + i)];
    }
  }
  RankInfo info = svd_rank(M, nn, nn, rtol);
  RankResult out;
  out.rank = info.rank;
  out.singular_values = std::move(info.singular_values);
  out.det_v = determinant(V, n);
  return out;
}

struct PointEvidence {
  PhasePoint p;
  double hom = 0.0;
  double iso = 0.0;
  double rho = 0.0;
  double phi_frob = 0.0;
  double iso_scale = 0.0;
  double phi_reference = 1.0;  // scale for "Phi is essentially zero" notes
  double phiy = 0.0;           // |Phi^i_j y^j| / (scale * |y|)
  bool rho_ok = false;
  bool sigma_valid = false;
  double unit = 0.0;
  double ii = 0.0;
  double iii = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  int c3_rank = 0;
  int reg_rank = 0;
  double det_v = 0.0;
};

double homogeneity_from_jets(const GeometryJets& gj) {
  int n = gj.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double euler = 0.0;
    for (int j = 0; j < n; ++j) {
      euler += gj.point.y[static_cast<std::size_t>(j)] * gj.N[static_cast<std::size_t>(i * n + j)].value();
    }
    double gi = gj.G[static_cast<std::size_t>(i)].value();
    worst = std::max(worst, std::abs(euler - 2.0 * gi) / (1.0 + std::abs(gi)));
  }
  return worst;
}

double condition_ii_from_form(const SemiBasicForm& f) {
  int n = f.n();
  double ynorm = f.point.y_norm();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double defect = std::abs(f.dsigma_dy[static_cast<std::size_t>(i * n + j)] -
                               f.dsigma_dy[static_cast<std::size_t>(j * n + i)]);
      worst = std::max(worst, defect);
    }
  }
  return worst * ynorm;
}

double condition_iii_from_values(const SemiBasicForm& f, const std::vector<double>& N,
                                 const std::vector<double>& Gamma) {
  int n = f.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double delta = f.dsigma_dx[static_cast<std::size_t>(i * n + k)];
      for (int j = 0; j < n; ++j) {
        delta -= N[static_cast<std::size_t>(j * n + k)] *
                 f.dsigma_dy[static_cast<std::size_t>(i * n + j)];
      }
      double berwald = 0.0;
      for (int m = 0; m < n; ++m) {
        berwald += f.sigma[static_cast<std::size_t>(m)] *
                   Gamma[static_cast<std::size_t>((m * n + k) * n + i)];
      }
      worst = std::max(worst, std::abs(delta - berwald));
    }
  }
  return worst / (1.0 + frob(N));
}

ConstantCurvatureResult constant_curvature_from_jets(const GeometryJets& gj, double rank_rtol) {
  int n = gj.n;
  ConstantCurvatureResult out;

  // C1: d_J alpha = 0, i.e. d alpha_i/d y^j symmetric.
  double defect = 0.0, amax = 0.0;
  std::vector<double> A(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      A[static_cast<std::size_t>(i * n + j)] =
          gj.alpha[static_cast<std::size_t>(i)].partial1(gj.y_slot(j));
      amax = std::max(amax, std::abs(A[static_cast<std::size_t>(i * n + j)]));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      defect = std::max(defect, std::abs(A[static_cast<std::size_t>(i * n + j)] -
                                         A[static_cast<std::size_t>(j * n + i)]));
    }
  }
  out.res_c1 = defect / (1e-300 + std::max(1e-14, amax));

  // C2: d_h rho = 0 with components d rho/dx^i - N^j_i d rho/dy^j.
  std::vector<double> Nv(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Nv[static_cast<std::size_t>(i * n + j)] = gj.N[static_cast<std::size_t>(i * n + j)].value();
    }
  }
  double dx_max = 0.0, dy_max = 0.0, c2 = 0.0;
  std::vector<double> drx(static_cast<std::size_t>(n)), dry(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    drx[static_cast<std::size_t>(i)] = gj.rho.partial1(gj.x_slot(i));
    dry[static_cast<std::size_t>(i)] = gj.rho.partial1(gj.y_slot(i));
    dx_max = std::max(dx_max, std::abs(drx[static_cast<std::size_t>(i)]));
    dy_max = std::max(dy_max, std::abs(dry[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < n; ++i) {
    double v = drx[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      v -= Nv[static_cast<std::size_t>(j * n + i)] * dry[static_cast<std::size_t>(j)];
    }
    c2 = std::max(c2, std::abs(v));
  }
  out.res_c2 = c2 / (1.0 + dx_max + frob(Nv) * dy_max);

  // C3: rank of dd_J rho assembled as [[H', -V'^T], [V', 0]] with
  // V'_{ji} = d2 rho/dy^j dy^i, H'_{ji} = d2 rho/dx^j dy^i - d2 rho/dx^i dy^j.
  int nn = 2 * n;
  std::vector<double> M(static_cast<std::size_t>(nn * nn), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double vji = gj.rho.partial2(gj.y_slot(j), gj.y_slot(i));
      double hji = gj.rho.partial2(gj.x_slot(j), gj.y_slot(i)) -
                   gj.rho.partial2(gj.x_slot(i), gj.y_slot(j));
      M[static_cast<std::size_t>(j * nn + i)] = hji;
      M[static_cast<std::size_t>(j * nn + (n + i))] = -vji;  // (-V'^T)_{ji} = -V'_{ij}; V' symmetric
      M[static_cast<std::size_t>((n + j) * nn + i)] = vji;
    }
  }
  out.rank_c3 = svd_rank(M, nn, nn, rank_rtol).rank;
  return out;
}

}  // namespace

SemiBasicForm sigma_at(const Spray& s, const PhasePoint& p, const TestConfig& cfg) {
  GeometryJets gj = geometry_jets(s, p, 3, true);
  if (gj.iso_residual > cfg.tol_iso) {
    throw Error("sigma_at: spray is not isotropic at the requested point");
  }
  if (std::abs(gj.rho.value()) < cfg.min_rho * gj.iso_scale || gj.sigma.empty()) {
    throw RicciDegenerateError("sigma_at: Ricci scalar vanishes at the requested point");
  }
  return form_from_jets(gj);
}

double condition_ii_residual(const SemiBasicForm& f) { return condition_ii_from_form(f); }

double condition_iii_residual(const Spray& s, const PhasePoint& p, const SemiBasicForm& f) {
  ConnectionData cd = connection(s, p);
  return condition_iii_from_values(f, cd.N, cd.Gamma);
}

RankResult regularity_rank(const Spray& s, const PhasePoint& p, const SemiBasicForm& f,
                           const TestConfig& cfg) {
  ConnectionData cd = connection(s, p);
  return regularity_rank_impl({f, cd.N}, cfg.rank_rtol);
}

ConstantCurvatureResult constant_curvature_tests(const Spray& s, const PhasePoint& p,
                                                 const TestConfig& cfg) {
  GeometryJets gj = geometry_jets(s, p, 4, false);
  return constant_curvature_from_jets(gj, cfg.rank_rtol);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kNotHomogeneous: return "NotHomogeneous";
    case Verdict::kNonIsotropic: return "NonIsotropic";
    case Verdict::kRicciDegenerate: return "RicciDegenerate";
    case Verdict::kFailsConditionII: return "FailsConditionII";
    case Verdict::kFailsConditionIII: return "FailsConditionIII";
    case Verdict::kMetrizableConstant: return "MetrizableConstant";
    case Verdict::kMetrizableScalar: return "MetrizableScalar";
    case Verdict::kRankDeficientCandidate: return "RankDeficientCandidate";
  }
  return "Unknown";
}

Verdict verdict_from_string(const std::string& name) {
  for (Verdict v : {Verdict::kNotHomogeneous, Verdict::kNonIsotropic, Verdict::kRicciDegenerate,
                    Verdict::kFailsConditionII, Verdict::kFailsConditionIII,
                    Verdict::kMetrizableConstant, Verdict::kMetrizableScalar,
                    Verdict::kRankDeficientCandidate}) {
    if (to_string(v) == name) return v;
  }
  throw Error("unknown verdict name: " + name);
}

ClassificationReport classify(const Spray& s, const TestConfig& cfg) {
  if (cfg.samples.empty()) throw Error("classify: no sample points configured");
  int n = s.dimension();
  ClassificationReport report;
  report.full_rank = 2 * n;

  std::vector<PointEvidence> evidence;
  evidence.reserve(cfg.samples.size());

  for (const PhasePoint& p : cfg.samples) {
    if (!s.admitted(p)) throw Error("classify: sample point outside the admitted domain");
    PointEvidence ev;
    ev.p = p;

    GeometryJets g3 = geometry_jets(s, p, 3, true);
    ev.hom = homogeneity_from_jets(g3);
    ev.iso = g3.iso_residual;
    ev.rho = g3.rho.value();
    ev.phi_frob = g3.phi_frob;
    ev.iso_scale = g3.iso_scale;
    ev.rho_ok = std::abs(ev.rho) >= cfg.min_rho * ev.iso_scale;

    double nfrob = 0.0;
    double dgdx_max = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double nv = g3.N[static_cast<std::size_t>(i * n + j)].value();
        nfrob += nv * nv;
        dgdx_max = std::max(dgdx_max, std::abs(g3.dGdx[static_cast<std::size_t>(i * n + j)].value()));
      }
    }
    ev.phi_reference = 1.0 + nfrob + dgdx_max;

    // Phi annihilates the Liouville direction for honest sprays; tested
    // empirically and reported as a warning only.
    double phiy = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += g3.Phi[static_cast<std::size_t>(i * n + j)].value() * p.y[static_cast<std::size_t>(j)];
      }
      phiy = std::max(phiy, std::abs(acc));
    }
    ev.phiy = phiy / (ev.iso_scale * p.y_norm());

    if (ev.rho_ok && !g3.sigma.empty() && ev.iso <= cfg.tol_iso) {
      ev.sigma_valid = true;
      SemiBasicForm f = form_from_jets(g3);
      ev.unit = f.unit_residual;
      ev.ii = condition_ii_from_form(f);

      std::vector<double> N, Gamma;
      connection_values(g3, N, Gamma);
      ev.iii = condition_iii_from_values(f, N, Gamma);

      RankResult rr = regularity_rank_impl({f, N}, cfg.rank_rtol);
      ev.reg_rank = rr.rank;
      ev.det_v = rr.det_v;

      GeometryJets g4 = geometry_jets(s, p, 4, false);
      ConstantCurvatureResult cc = constant_curvature_from_jets(g4, cfg.rank_rtol);
      ev.c1 = cc.res_c1;
      ev.c2 = cc.res_c2;
      ev.c3_rank = cc.rank_c3;
    }
    evidence.push_back(std::move(ev));
  }

  auto& res = report.residuals;
  for (const PointEvidence& ev : evidence) {
    res["homogeneity"].add(ev.hom, ev.p);
    res["isotropy"].add(ev.iso, ev.p);
    res["ricci_scale"].add(std::abs(ev.rho) / ev.iso_scale, ev.p);
    if (ev.sigma_valid) {
      res["unit"].add(ev.unit, ev.p);
      res["condition_ii"].add(ev.ii, ev.p);
      res["condition_iii"].add(ev.iii, ev.p);
      res["c1"].add(ev.c1, ev.p);
      res["c2"].add(ev.c2, ev.p);
      report.regularity_ranks.push_back(ev.reg_rank);
      report.regularity_det_v.push_back(ev.det_v);
      report.ddjrho_ranks.push_back(ev.c3_rank);
    }
  }

  double phiy_max = 0.0;
  for (const PointEvidence& ev : evidence) phiy_max = std::max(phiy_max, ev.phiy);
  if (phiy_max > 1e-8) {
    report.notes.push_back("warning: Phi does not annihilate the Liouville vector (max scaled " +
                           std::to_string(phiy_max) + ")");
  }

  // Stage 1: homogeneity.
  if (res["homogeneity"].max > cfg.tol_iso) {
    report.verdict = Verdict::kNotHomogeneous;
    return report;
  }
  // Stage 2: isotropy.
  if (res["isotropy"].max > cfg.tol_iso) {
    report.verdict = Verdict::kNonIsotropic;
    return report;
  }
  // Stage 3: non-vanishing Ricci scalar.
  bool any_rho_low = false;
  double phi_rel_max = 0.0;
  for (const PointEvidence& ev : evidence) {
    if (!ev.rho_ok) any_rho_low = true;
    phi_rel_max = std::max(phi_rel_max, ev.phi_frob / ev.phi_reference);
  }
  if (any_rho_low) {
    report.verdict = Verdict::kRicciDegenerate;
    if (phi_rel_max <= 1e-9) {
      report.notes.push_back("flat: Phi ~ 0 and rho ~ 0 (vacuously metrizable)");
    } else {
      report.notes.push_back("rho~0, |Phi|>0: Ricci-flat but curved, not Finsler metrizable");
    }
    return report;
  }
  // Stage 4: d_J(alpha/rho) = 0.
  if (res["condition_ii"].max > cfg.tol_ii) {
    report.verdict = Verdict::kFailsConditionII;
    return report;
  }
  // Stage 5: D_hX(alpha/rho) = 0.
  if (res["condition_iii"].max > cfg.tol_iii) {
    report.verdict = Verdict::kFailsConditionIII;
    return report;
  }
  if (res["unit"].max > cfg.tol_unit) {
    report.notes.push_back("warning: i_S sigma deviates from 1 beyond tol_unit");
  }
  // Stage 6: constant flag curvature.
  bool constant_ok = res["c1"].max <= cfg.tol_ii && res["c2"].max <= cfg.tol_iii;
  for (int r : report.ddjrho_ranks) {
    if (r != report.full_rank) constant_ok = false;
  }
  if (constant_ok) {
    report.verdict = Verdict::kMetrizableConstant;
    return report;
  }
  // Stage 7: scalar flag curvature via the regularity rank.
  int min_rank = report.full_rank;
  for (int r : report.regularity_ranks) min_rank = std::min(min_rank, r);
  if (min_rank == report.full_rank) {
    report.verdict = Verdict::kMetrizableScalar;
  } else {
    report.verdict = Verdict::kRankDeficientCandidate;
    if (min_rank == 0) {
      report.notes.push_back("warning: regularity 2-form vanished at some sample");
    }
  }
  return report;
}

}  // namespace spraymet
