#ifndef SPRAYMET_REPORT_HPP
#define SPRAYMET_REPORT_HPP

// Run orchestration: classify, then reconstruct and compare against the
// expected closed forms (after solving the one-constant gauge at the
// scenario anchor).  Reports serialize to JSON deterministically; wall
// times are collected but only serialized on request so identical inputs
// give byte-identical reports.

#include <string>

#include <nlohmann/json.hpp>

#include "spraymet/metrizability.hpp"
#include "spraymet/reconstruction.hpp"
#include "spraymet/scenario.hpp"

namespace spraymet {

extern const char* const kToolVersion;

struct ComparisonResult {
  bool compared = false;
  double gauge_constant = 1.0;   // c with F_expected = c * F_reconstructed
  double f_max_rel_err = 0.0;
  double kappa_max_rel_err = 0.0;
  int points = 0;
  bool f_ok = true;
  bool kappa_ok = true;
};

struct RunReport {
  Scenario scenario;
  ClassificationReport classification;
  bool reconstructed = false;
  ComparisonResult comparison;
  VerificationRecord verification;
  bool has_expected_verdict = false;
  bool verdict_match = true;
  double seconds_classify = 0.0;
  double seconds_reconstruct = 0.0;

  // 0 = OK and expectations met, 1 = expectation mismatch.
  int exit_code() const;
  bool matches_expected() const;
};

RunReport run(const Scenario& sc);
RunReport run_example(const std::string& key);

nlohmann::ordered_json report_to_json(const RunReport& report, bool include_timings = false);

// One row per example (name, variants, description, expected verdict).
std::string list_examples();

// CSV grid over the scenario boxes with columns
// x1..xn,y1..yn,rho,F,kappa,res_ii,res_iii,detV.
std::string grid_dump(const Scenario& sc, const GridSpec& grid);

}  // namespace spraymet

#endif  // SPRAYMET_REPORT_HPP
