#include "spraymet/scenario.hpp"

#include <fstream>
#include <random>

#include "spraymet/hilbert.hpp"

namespace spraymet {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> require_vector(const json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw SchemaError(path, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(require_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::array<double, 2>> require_box(const json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw SchemaError(path, "expected " + std::to_string(n) + " [lo, hi] pairs");
  }
  std::vector<std::array<double, 2>> box;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string ipath = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw SchemaError(ipath, "expected [lo, hi]");
    double lo = require_number(j[i][0], ipath);
    double hi = require_number(j[i][1], ipath);
    if (!(hi > lo)) throw SchemaError(ipath, "box interval is degenerate");
    box.push_back({lo, hi});
  }
  return box;
}

// Uniform double in [0, 1) built directly from engine output so sampling
// is identical across platforms.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Spray Scenario::build_spray() const {
  std::vector<Expression> preds;
  for (const std::string& text : domain.predicates) preds.push_back(parse(text, n));

  if (mode == "spray") {
    std::vector<Expression> gs;
    for (const std::string& text : G) gs.push_back(parse(text, n));
    return Spray::from_expressions(std::move(gs), std::move(preds));
  }
  if (mode == "projective") {
    return deform_flat(ProjectiveFactor{parse(P, n)}, std::move(preds));
  }
  if (mode == "generator") {
    GeneratorFunction gf{parse(g, n), generator_kind == "zero_homogeneous"
                                          ? GeneratorFunction::Kind::kZeroHomogeneous
                                          : GeneratorFunction::Kind::kBasic};
    return deform_generator(gf, std::move(preds));
  }
  throw SchemaError("mode", "must be one of spray/projective/generator");
}

Scenario scenario_from_json(const json& j, const std::string& origin) {
  if (!j.is_object()) throw SchemaError(origin, "scenario must be a JSON object");
  Scenario sc;
  sc.name = origin;
  if (j.contains("name")) sc.name = require_string(j.at("name"), "name");

  if (!j.contains("n")) throw SchemaError("n");
  sc.n = require_int(j.at("n"), "n");
  if (sc.n < 2 || 2 * sc.n > kMaxJetVars) throw SchemaError("n", "dimension out of range");

  if (!j.contains("mode")) throw SchemaError("mode");
  sc.mode = require_string(j.at("mode"), "mode");

  if (sc.mode == "spray") {
    if (!j.contains("G") || !j.at("G").is_array()) throw SchemaError("G");
    if (static_cast<int>(j.at("G").size()) != sc.n) {
      throw SchemaError("G", "need exactly n coefficient expressions");
    }
    for (std::size_t i = 0; i < j.at("G").size(); ++i) {
      sc.G.push_back(require_string(j.at("G")[i], "G[" + std::to_string(i) + "]"));
    }
  } else if (sc.mode == "projective") {
    if (!j.contains("P")) throw SchemaError("P");
    sc.P = require_string(j.at("P"), "P");
  } else if (sc.mode == "generator") {
    if (!j.contains("g")) throw SchemaError("g");
    sc.g = require_string(j.at("g"), "g");
    if (j.contains("generator_kind")) {
      sc.generator_kind = require_string(j.at("generator_kind"), "generator_kind");
      if (sc.generator_kind != "basic" && sc.generator_kind != "zero_homogeneous") {
        throw SchemaError("generator_kind", "must be basic or zero_homogeneous");
      }
    }
  } else {
    throw SchemaError("mode", "must be one of spray/projective/generator");
  }

  if (!j.contains("domain") || !j.at("domain").is_object()) throw SchemaError("domain");
  const json& dom = j.at("domain");
  if (!dom.contains("x_box")) throw SchemaError("domain.x_box");
  if (!dom.contains("y_box")) throw SchemaError("domain.y_box");
  sc.domain.x_box = require_box(dom.at("x_box"), "domain.x_box", sc.n);
  sc.domain.y_box = require_box(dom.at("y_box"), "domain.y_box", sc.n);
  if (dom.contains("predicates")) {
    if (!dom.at("predicates").is_array()) throw SchemaError("domain.predicates");
    for (std::size_t i = 0; i < dom.at("predicates").size(); ++i) {
      sc.domain.predicates.push_back(
          require_string(dom.at("predicates")[i], "domain.predicates[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("samples")) {
    const json& s = j.at("samples");
    if (!s.is_object()) throw SchemaError("samples");
    if (s.contains("count")) sc.sample_count = require_int(s.at("count"), "samples.count");
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer()) {
        throw SchemaError("samples.seed");
      }
      sc.seed = s.at("seed").get<std::uint64_t>();
    }
  }
  if (sc.sample_count < 1) throw SchemaError("samples.count", "must be >= 1");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw SchemaError("tolerances");
    auto field = [&](const char* key, double& slot) {
      if (t.contains(key)) {
        slot = require_number(t.at(key), std::string("tolerances.") + key);
        if (!(slot > 0.0)) throw SchemaError(std::string("tolerances.") + key, "must be > 0");
      }
    };
    field("tol_iso", sc.tolerances.tol_iso);
    field("tol_ii", sc.tolerances.tol_ii);
    field("tol_iii", sc.tolerances.tol_iii);
    field("tol_unit", sc.tolerances.tol_unit);
    field("min_rho", sc.tolerances.min_rho);
    field("rank_rtol", sc.tolerances.rank_rtol);
  }

  // Reconstruction defaults: fiber/base references at the sample-box centre.
  sc.quadrature.x_ref.assign(static_cast<std::size_t>(sc.n), 0.0);
  sc.quadrature.y_ref.assign(static_cast<std::size_t>(sc.n), 0.0);
  for (int i = 0; i < sc.n; ++i) {
    sc.quadrature.x_ref[static_cast<std::size_t>(i)] =
        0.5 * (sc.domain.x_box[static_cast<std::size_t>(i)][0] + sc.domain.x_box[static_cast<std::size_t>(i)][1]);
    sc.quadrature.y_ref[static_cast<std::size_t>(i)] =
        0.5 * (sc.domain.y_box[static_cast<std::size_t>(i)][0] + sc.domain.y_box[static_cast<std::size_t>(i)][1]);
  }
  sc.anchor_x = sc.quadrature.x_ref;
  sc.anchor_y = sc.quadrature.y_ref;

  if (j.contains("reconstruction")) {
    const json& r = j.at("reconstruction");
    if (!r.is_object()) throw SchemaError("reconstruction");
    if (r.contains("gauss_order")) sc.quadrature.gauss_order = require_int(r.at("gauss_order"), "reconstruction.gauss_order");
    if (r.contains("panels_per_unit_length")) {
      sc.quadrature.panels_per_unit_length =
          require_number(r.at("panels_per_unit_length"), "reconstruction.panels_per_unit_length");
    }
    if (r.contains("target_abs_tol")) {
      sc.quadrature.target_abs_tol = require_number(r.at("target_abs_tol"), "reconstruction.target_abs_tol");
    }
    if (r.contains("y_ref")) sc.quadrature.y_ref = require_vector(r.at("y_ref"), "reconstruction.y_ref", sc.n);
    if (r.contains("x_ref")) sc.quadrature.x_ref = require_vector(r.at("x_ref"), "reconstruction.x_ref", sc.n);
    if (r.contains("homogeneity_split")) {
      if (!r.at("homogeneity_split").is_boolean()) throw SchemaError("reconstruction.homogeneity_split");
      sc.quadrature.homogeneity_split = r.at("homogeneity_split").get<bool>();
    }
    if (r.contains("waypoints")) {
      if (!r.at("waypoints").is_array()) throw SchemaError("reconstruction.waypoints");
      for (std::size_t i = 0; i < r.at("waypoints").size(); ++i) {
        sc.quadrature.waypoints.push_back(
            require_vector(r.at("waypoints")[i], "reconstruction.waypoints[" + std::to_string(i) + "]", sc.n));
      }
    }
    if (r.contains("anchor")) {
      const json& a = r.at("anchor");
      if (!a.is_object() || !a.contains("x") || !a.contains("y")) {
        throw SchemaError("reconstruction.anchor", "expected {\"x\": [...], \"y\": [...]}");
      }
      sc.anchor_x = require_vector(a.at("x"), "reconstruction.anchor.x", sc.n);
      sc.anchor_y = require_vector(a.at("y"), "reconstruction.anchor.y", sc.n);
    } else {
      sc.anchor_x = sc.quadrature.x_ref;
      sc.anchor_y = sc.quadrature.y_ref;
    }
    if (r.contains("holdout")) sc.holdout_count = require_int(r.at("holdout"), "reconstruction.holdout");
  }

  if (j.contains("expected")) {
    const json& e = j.at("expected");
    if (!e.is_object()) throw SchemaError("expected");
    if (e.contains("verdict")) {
      sc.expected.verdict = require_string(e.at("verdict"), "expected.verdict");
      verdict_from_string(sc.expected.verdict);  // validates
    }
    if (e.contains("F")) sc.expected.F = require_string(e.at("F"), "expected.F");
    if (e.contains("kappa")) sc.expected.kappa = require_string(e.at("kappa"), "expected.kappa");
    if (e.contains("f_rtol")) sc.expected.f_rtol = require_number(e.at("f_rtol"), "expected.f_rtol");
    if (e.contains("kappa_rtol")) {
      sc.expected.kappa_rtol = require_number(e.at("kappa_rtol"), "expected.kappa_rtol");
    }
  }

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (!o.is_object()) throw SchemaError("outputs");
    if (o.contains("report")) sc.report_path = require_string(o.at("report"), "outputs.report");
    if (o.contains("grid")) {
      const json& gr = o.at("grid");
      if (!gr.is_object() || !gr.contains("counts")) throw SchemaError("outputs.grid.counts");
      GridSpec spec;
      const json& counts = gr.at("counts");
      if (!counts.is_array() || static_cast<int>(counts.size()) != 2 * sc.n) {
        throw SchemaError("outputs.grid.counts", "expected 2n integers");
      }
      for (std::size_t i = 0; i < counts.size(); ++i) {
        int c = require_int(counts[i], "outputs.grid.counts[" + std::to_string(i) + "]");
        if (c < 1) throw SchemaError("outputs.grid.counts", "counts must be >= 1");
        spec.counts.push_back(c);
      }
      sc.grid = spec;
    }
  }

  // Validate expressions eagerly so errors surface with file context.
  (void)sc.build_spray();
  if (!sc.expected.F.empty()) (void)parse(sc.expected.F, sc.n);
  if (!sc.expected.kappa.empty()) (void)parse(sc.expected.kappa, sc.n);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw SchemaError(path, "cannot open scenario file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  std::string origin = path;
  std::size_t slash = origin.find_last_of('/');
  if (slash != std::string::npos) origin = origin.substr(slash + 1);
  std::size_t dot = origin.find_last_of('.');
  if (dot != std::string::npos) origin = origin.substr(0, dot);
  return scenario_from_json(j, origin);
}

nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["name"] = sc.name;
  j["n"] = sc.n;
  j["mode"] = sc.mode;
  if (sc.mode == "spray") j["G"] = sc.G;
  if (sc.mode == "projective") j["P"] = sc.P;
  if (sc.mode == "generator") {
    j["g"] = sc.g;
    j["generator_kind"] = sc.generator_kind;
  }
  nlohmann::ordered_json dom;
  dom["x_box"] = sc.domain.x_box;
  dom["y_box"] = sc.domain.y_box;
  dom["predicates"] = sc.domain.predicates;
  j["domain"] = dom;
  j["samples"] = {{"count", sc.sample_count}, {"seed", sc.seed}};
  j["tolerances"] = {{"tol_iso", sc.tolerances.tol_iso}, {"tol_ii", sc.tolerances.tol_ii},
                     {"tol_iii", sc.tolerances.tol_iii}, {"tol_unit", sc.tolerances.tol_unit},
                     {"min_rho", sc.tolerances.min_rho}, {"rank_rtol", sc.tolerances.rank_rtol}};
  nlohmann::ordered_json rec;
  rec["gauss_order"] = sc.quadrature.gauss_order;
  rec["panels_per_unit_length"] = sc.quadrature.panels_per_unit_length;
  rec["target_abs_tol"] = sc.quadrature.target_abs_tol;
  rec["y_ref"] = sc.quadrature.y_ref;
  rec["x_ref"] = sc.quadrature.x_ref;
  rec["homogeneity_split"] = sc.quadrature.homogeneity_split;
  if (!sc.quadrature.waypoints.empty()) rec["waypoints"] = sc.quadrature.waypoints;
  rec["anchor"] = {{"x", sc.anchor_x}, {"y", sc.anchor_y}};
  rec["holdout"] = sc.holdout_count;
  j["reconstruction"] = rec;
  if (!sc.expected.verdict.empty() || !sc.expected.F.empty() || !sc.expected.kappa.empty()) {
    nlohmann::ordered_json e;
    if (!sc.expected.verdict.empty()) e["verdict"] = sc.expected.verdict;
    if (!sc.expected.F.empty()) e["F"] = sc.expected.F;
    if (!sc.expected.kappa.empty()) e["kappa"] = sc.expected.kappa;
    e["f_rtol"] = sc.expected.f_rtol;
    e["kappa_rtol"] = sc.expected.kappa_rtol;
    j["expected"] = e;
  }
  return j;
}

std::vector<PhasePoint> sample_points(const Scenario& sc) {
  return sample_points(sc, sc.sample_count, sc.seed);
}

std::vector<PhasePoint> sample_points(const Scenario& sc, int count, std::uint64_t seed) {
  Spray s = sc.build_spray();
  std::mt19937_64 rng(seed);
  std::vector<PhasePoint> points;
  points.reserve(static_cast<std::size_t>(count));
  long draws = 0;
  const long probe_draws = 100000;
  while (static_cast<int>(points.size()) < count) {
    ++draws;
    PhasePoint p;
    p.x.resize(static_cast<std::size_t>(sc.n));
    p.y.resize(static_cast<std::size_t>(sc.n));
    for (int i = 0; i < sc.n; ++i) {
      const auto& bx = sc.domain.x_box[static_cast<std::size_t>(i)];
      p.x[static_cast<std::size_t>(i)] = bx[0] + (bx[1] - bx[0]) * unit_double(rng);
    }
    for (int i = 0; i < sc.n; ++i) {
      const auto& by = sc.domain.y_box[static_cast<std::size_t>(i)];
      p.y[static_cast<std::size_t>(i)] = by[0] + (by[1] - by[0]) * unit_double(rng);
    }
    if (s.admitted(p)) points.push_back(std::move(p));
    if (draws >= probe_draws && static_cast<double>(points.size()) < 0.01 * static_cast<double>(draws)) {
      throw SamplingExhausted("acceptance below 1% after " + std::to_string(draws) + " draws");
    }
    if (draws > probe_draws * 100) {
      throw SamplingExhausted("sampling budget exhausted after " + std::to_string(draws) + " draws");
    }
  }
  return points;
}

}  // namespace spraymet
