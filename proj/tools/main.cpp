// spraymet: decides whether a spray is metrizable by a Finsler function of
// scalar or constant flag curvature and, when it is, rebuilds the Finsler
// function numerically.
//
// Exit codes: 0 = run OK (and expectations met), 1 = expectation mismatch,
// 2 = input error, 3 = numeric/domain failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spraymet/report.hpp"

namespace {

using namespace spraymet;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol;
  std::string out;
  bool timings = false;
};

void apply_overrides(Scenario& sc, const CommonOptions& opt) {
  if (opt.seed) sc.seed = *opt.seed;
  if (opt.samples) sc.sample_count = *opt.samples;
  if (opt.tol) {
    sc.tolerances.tol_iso = *opt.tol;
    sc.tolerances.tol_ii = *opt.tol;
    sc.tolerances.tol_iii = *opt.tol;
    sc.tolerances.tol_unit = *opt.tol;
  }
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out.is_open()) throw Error("cannot open output file: " + path);
  out << payload;
}

int emit_report(const RunReport& report, const CommonOptions& opt) {
  std::string payload = report_to_json(report, opt.timings).dump(2);
  payload += "\n";
  write_output(opt.out, payload);
  if (!opt.out.empty() && opt.out != "-") {
    std::cerr << report.scenario.name << ": " << to_string(report.classification.verdict);
    if (report.has_expected_verdict) {
      std::cerr << (report.matches_expected() ? " (as expected)" : " (MISMATCH)");
    }
    std::cerr << "\n";
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spray metrizability tests and Finsler reconstruction"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string scenario_path;
  std::string example_name;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "override the sampling seed");
    cmd->add_option("--samples", opt.samples, "override the sample count");
    cmd->add_option("--tol", opt.tol, "override tol_iso/tol_ii/tol_iii/tol_unit");
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_flag("--timings", opt.timings, "include wall times in the report");
  };

  CLI::App* check = app.add_subcommand("check", "classify a scenario");
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(check);

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "classify, rebuild F and compare against expectations");
  reconstruct->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(reconstruct);

  CLI::App* example = app.add_subcommand("example", "run a built-in example by name");
  example->add_option("name", example_name, "example name (see `examples`)")->required();
  add_common(example);

  app.add_subcommand("examples", "list the built-in examples");

  CLI::App* grid = app.add_subcommand("grid", "dump a CSV grid of pointwise quantities");
  grid->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(grid);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("examples")) {
      std::cout << list_examples();
      return 0;
    }
    if (app.got_subcommand("example")) {
      Scenario sc = registry_scenario(example_name);
      apply_overrides(sc, opt);
      return emit_report(run(sc), opt);
    }
    if (app.got_subcommand("grid")) {
      Scenario sc = load_scenario(scenario_path);
      apply_overrides(sc, opt);
      if (!sc.grid) throw SchemaError("outputs.grid", "scenario has no grid spec");
      write_output(opt.out, grid_dump(sc, *sc.grid));
      return 0;
    }
    Scenario sc = load_scenario(scenario_path);
    apply_overrides(sc, opt);
    if (app.got_subcommand("check")) {
      // Classification only: strip reconstruction expectations.
      sc.expected.F.clear();
      sc.expected.kappa.clear();
    }
    if (opt.out.empty() && !sc.report_path.empty()) opt.out = sc.report_path;
    return emit_report(run(sc), opt);
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const IndexError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
