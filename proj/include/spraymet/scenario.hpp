#ifndef SPRAYMET_SCENARIO_HPP
#define SPRAYMET_SCENARIO_HPP

// Scenario files describe one spray under test: the coefficients (direct,
// projective or generator form), the sampling domain, tolerances, the
// reconstruction setup and optional expected outcomes.  JSON schema is
// documented in the README.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spraymet/metrizability.hpp"
#include "spraymet/reconstruction.hpp"
#include "spraymet/spray.hpp"

namespace spraymet {

struct ScenarioDomain {
  std::vector<std::array<double, 2>> x_box;  // n intervals
  std::vector<std::array<double, 2>> y_box;
  std::vector<std::string> predicates;  // each interpreted as "> 0"
};

struct ScenarioExpected {
  std::string verdict;  // empty = no expectation
  std::string F;        // expression text, empty = no comparison
  std::string kappa;
  double f_rtol = 1e-6;
  double kappa_rtol = 1e-6;
};

struct GridSpec {
  std::vector<int> counts;  // 2n per-coordinate sample counts
};

struct Scenario {
  std::string name = "scenario";
  int n = 0;
  std::string mode;  // "spray" | "projective" | "generator"
  std::vector<std::string> G;
  std::string P;
  std::string g;
  std::string generator_kind = "basic";  // or "zero_homogeneous"
  ScenarioDomain domain;
  int sample_count = 200;
  std::uint64_t seed = 20240601;
  TestConfig tolerances;  // sample list left empty; filled by the runner
  QuadratureConfig quadrature;
  std::vector<double> anchor_x, anchor_y;
  int holdout_count = 100;
  ScenarioExpected expected;
  std::string report_path;
  std::optional<GridSpec> grid;

  Spray build_spray() const;
  bool has_expected_verdict() const { return !expected.verdict.empty(); }
};

Scenario scenario_from_json(const nlohmann::json& j, const std::string& origin);
Scenario load_scenario(const std::string& path);
nlohmann::ordered_json scenario_to_json(const Scenario& sc);

// Deterministic rejection sampling from the scenario boxes; throws
// SamplingExhausted when the acceptance rate is below 1% after 1e5 draws.
std::vector<PhasePoint> sample_points(const Scenario& sc);
std::vector<PhasePoint> sample_points(const Scenario& sc, int count, std::uint64_t seed);

}  // namespace spraymet

#endif  // SPRAYMET_SCENARIO_HPP
