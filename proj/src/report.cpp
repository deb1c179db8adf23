#include "spraymet/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spraymet/registry.hpp"

namespace spraymet {

const char* const kToolVersion = "spraymet 0.1.0";

namespace {

double eval_expr(const Expression& e, const std::vector<double>& x, const std::vector<double>& y) {
  return e.evaluate<double>(std::span<const double>(x), std::span<const double>(y));
}

bool wants_reconstruction(Verdict v) {
  return v == Verdict::kMetrizableConstant || v == Verdict::kMetrizableScalar ||
         v == Verdict::kRankDeficientCandidate;
}

nlohmann::ordered_json stats_json(const ResidualStats& st) {
  nlohmann::ordered_json j;
  j["max"] = st.max;
  j["mean"] = st.mean;
  j["argmax"] = {{"x", st.argmax.x}, {"y", st.argmax.y}};
  j["count"] = st.count;
  return j;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

bool RunReport::matches_expected() const {
  if (has_expected_verdict && !verdict_match) return false;
  if (comparison.compared && (!comparison.f_ok || !comparison.kappa_ok)) return false;
  return true;
}

int RunReport::exit_code() const { return matches_expected() ? 0 : 1; }

RunReport run(const Scenario& sc) {
  RunReport report;
  report.scenario = sc;

  Spray spray = sc.build_spray();
  TestConfig cfg = sc.tolerances;
  cfg.samples = sample_points(sc);

  auto t0 = std::chrono::steady_clock::now();
  report.classification = classify(spray, cfg);
  auto t1 = std::chrono::steady_clock::now();
  report.seconds_classify = std::chrono::duration<double>(t1 - t0).count();

  report.has_expected_verdict = sc.has_expected_verdict();
  if (report.has_expected_verdict) {
    report.verdict_match = to_string(report.classification.verdict) == sc.expected.verdict;
  }

  if (wants_reconstruction(report.classification.verdict)) {
    Reconstruction rec(spray, cfg, sc.quadrature);
    // Held-out points, disjoint from the classification stream by seed.
    std::vector<PhasePoint> holdout = sample_points(sc, sc.holdout_count, sc.seed ^ 0x9e3779b97f4a7c15ull);

    report.verification = rec.verify(holdout);
    report.reconstructed = true;

    if (!sc.expected.F.empty()) {
      Expression f_expr = parse(sc.expected.F, sc.n);
      Expression k_expr = sc.expected.kappa.empty() ? Expression() : parse(sc.expected.kappa, sc.n);

      double f_anchor_expected = eval_expr(f_expr, sc.anchor_x, sc.anchor_y);
      FinslerValue anchor = rec.finsler_value(sc.anchor_x, sc.anchor_y);
      double c = f_anchor_expected / anchor.F;
      report.comparison.compared = true;
      report.comparison.gauge_constant = c;
      report.comparison.points = static_cast<int>(holdout.size());

      double f_err = 0.0, k_err = 0.0;
      for (const PhasePoint& p : holdout) {
        FinslerValue fv = rec.finsler_value(p.x, p.y);
        double fe = eval_expr(f_expr, p.x, p.y);
        f_err = std::max(f_err, std::abs(c * fv.F - fe) / std::max(1e-300, std::abs(fe)));
        if (!k_expr.empty()) {
          double ke = eval_expr(k_expr, p.x, p.y);
          double kg = fv.kappa / (c * c);
          k_err = std::max(k_err, std::abs(kg - ke) / std::max(1e-300, std::abs(ke)));
        }
      }
      report.comparison.f_max_rel_err = f_err;
      report.comparison.kappa_max_rel_err = k_err;
      report.comparison.f_ok = f_err <= sc.expected.f_rtol;
      report.comparison.kappa_ok = k_expr.empty() || k_err <= sc.expected.kappa_rtol;
    }
    auto t2 = std::chrono::steady_clock::now();
    report.seconds_reconstruct = std::chrono::duration<double>(t2 - t1).count();
  }
  return report;
}

RunReport run_example(const std::string& key) { return run(registry_scenario(key)); }

nlohmann::ordered_json report_to_json(const RunReport& report, bool include_timings) {
  nlohmann::ordered_json j;
  j["tool"] = kToolVersion;
  j["scenario"] = scenario_to_json(report.scenario);
  j["verdict"] = to_string(report.classification.verdict);
  j["notes"] = report.classification.notes;

  nlohmann::ordered_json conditions;
  for (const auto& [name, st] : report.classification.residuals) {
    conditions[name] = stats_json(st);
  }
  j["conditions"] = conditions;

  nlohmann::ordered_json ranks;
  ranks["full"] = report.classification.full_rank;
  ranks["regularity"] = report.classification.regularity_ranks;
  ranks["regularity_det_v"] = report.classification.regularity_det_v;
  ranks["ddj_rho"] = report.classification.ddjrho_ranks;
  j["ranks"] = ranks;

  if (report.has_expected_verdict) {
    j["expected_verdict"] = report.scenario.expected.verdict;
    j["verdict_match"] = report.verdict_match;
  }

  if (report.reconstructed) {
    nlohmann::ordered_json rec;
    rec["verification"] = {{"max_dh_residual", report.verification.max_dh_residual},
                           {"max_el_residual", report.verification.max_el_residual},
                           {"hessian_rank_min", report.verification.hessian_rank_min},
                           {"hessian_rank_max", report.verification.hessian_rank_max},
                           {"regular", report.verification.regular}};
    if (report.comparison.compared) {
      rec["comparison"] = {{"gauge_constant", report.comparison.gauge_constant},
                           {"F_max_rel_err", report.comparison.f_max_rel_err},
                           {"kappa_max_rel_err", report.comparison.kappa_max_rel_err},
                           {"points", report.comparison.points},
                           {"F_ok", report.comparison.f_ok},
                           {"kappa_ok", report.comparison.kappa_ok}};
    }
    j["reconstruction"] = rec;
  }

  if (include_timings) {
    j["timings"] = {{"classify_seconds", report.seconds_classify},
                    {"reconstruct_seconds", report.seconds_reconstruct}};
  }
  return j;
}

std::string list_examples() {
  std::ostringstream out;
  out << "name              variants             expected             description\n";
  for (const RegistryEntry& e : registry_entries()) {
    Scenario sc = registry_scenario(e.name);
    std::string variants;
    for (std::size_t i = 0; i < e.variants.size(); ++i) {
      if (i) variants += "|";
      variants += e.variants[i];
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%-17s %-20s %-20s %s\n", e.name.c_str(), variants.c_str(),
                  sc.expected.verdict.empty() ? "-" : sc.expected.verdict.c_str(),
                  e.description.c_str());
    out << line;
  }
  return out.str();
}

std::string grid_dump(const Scenario& sc, const GridSpec& grid) {
  int n = sc.n;
  Spray spray = sc.build_spray();
  TestConfig cfg = sc.tolerances;

  // Reconstruction is attempted lazily; grids over non-metrizable sprays
  // still carry the residual columns.
  std::unique_ptr<Reconstruction> rec;
  try {
    rec = std::make_unique<Reconstruction>(spray, cfg, sc.quadrature);
  } catch (const Error&) {
    rec.reset();
  }

  std::ostringstream out;
  for (int i = 1; i <= n; ++i) out << "x" << i << ",";
  for (int i = 1; i <= n; ++i) out << "y" << i << ",";
  out << "rho,F,kappa,res_ii,res_iii,detV\n";

  std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
  const std::vector<int>& counts = grid.counts;
  auto coord = [&](int slot) {
    double lo, hi;
    if (slot < n) {
      lo = sc.domain.x_box[static_cast<std::size_t>(slot)][0];
      hi = sc.domain.x_box[static_cast<std::size_t>(slot)][1];
    } else {
      lo = sc.domain.y_box[static_cast<std::size_t>(slot - n)][0];
      hi = sc.domain.y_box[static_cast<std::size_t>(slot - n)][1];
    }
    int c = counts[static_cast<std::size_t>(slot)];
    return c == 1 ? 0.5 * (lo + hi)
                  : lo + (hi - lo) * idx[static_cast<std::size_t>(slot)] / (c - 1.0);
  };

  while (true) {
    PhasePoint p;
    p.x.resize(static_cast<std::size_t>(n));
    p.y.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      p.x[static_cast<std::size_t>(i)] = coord(i);
      p.y[static_cast<std::size_t>(i)] = coord(n + i);
    }
    if (spray.admitted(p)) {
      double rho = std::nan(""), F = std::nan(""), kappa = std::nan("");
      double res_ii = std::nan(""), res_iii = std::nan(""), det_v = std::nan("");
      try {
        CurvatureData cd = jacobi(spray, p);
        rho = cd.rho;
      } catch (const Error&) {
      }
      try {
        SemiBasicForm f = sigma_at(spray, p, cfg);
        res_ii = condition_ii_residual(f);
        res_iii = condition_iii_residual(spray, p, f);
        det_v = regularity_rank(spray, p, f, cfg).det_v;
      } catch (const Error&) {
      }
      if (rec) {
        try {
          FinslerValue fv = rec->finsler_value(p.x, p.y);
          F = fv.F;
          kappa = fv.kappa;
        } catch (const Error&) {
        }
      }
      for (int i = 0; i < n; ++i) out << csv_number(p.x[static_cast<std::size_t>(i)]) << ",";
      for (int i = 0; i < n; ++i) out << csv_number(p.y[static_cast<std::size_t>(i)]) << ",";
      out << csv_number(rho) << "," << csv_number(F) << "," << csv_number(kappa) << ","
          << csv_number(res_ii) << "," << csv_number(res_iii) << "," << csv_number(det_v) << "\n";
    }
    int slot = 2 * n - 1;
    while (slot >= 0) {
      if (++idx[static_cast<std::size_t>(slot)] < counts[static_cast<std::size_t>(slot)]) break;
      idx[static_cast<std::size_t>(slot)] = 0;
      --slot;
    }
    if (slot < 0) break;
  }
  return out.str();
}

}  // namespace spraymet
