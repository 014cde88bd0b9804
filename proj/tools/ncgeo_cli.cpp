#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncgeo/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 internal failure, 2 schema violation,
// 3 numerical ambiguity.
constexpr int kExitInternal = 1;
constexpr int kExitSchema = 2;
constexpr int kExitAmbiguous = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivation-based calculus on matrix algebras: scenario runner"};

  std::string scenario_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 0.0;
  int trials = 0;

  app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  app.add_option("--out", out_path, "Output path (stdout when omitted)");
  app.add_option("--format", format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
  auto* tol_opt = app.add_option("--tol", tol, "Override the primary tolerance");
  auto* trials_opt = app.add_option("--trials", trials, "Override the trial count");

  CLI11_PARSE(app, argc, argv);

  try {
    ncgeo::Scenario scenario = ncgeo::Scenario::load(scenario_path);
    if (seed_opt->count() > 0) scenario.seed = seed;
    if (tol_opt->count() > 0) scenario.tol = tol;
    if (trials_opt->count() > 0) {
      if (trials < 1) throw ncgeo::SchemaError("--trials must be positive");
      scenario.trials = trials;
    }

    const ncgeo::Report report = ncgeo::run_scenario(scenario);
    const ncgeo::ReportFormat fmt =
        format == "csv" ? ncgeo::ReportFormat::Csv : ncgeo::ReportFormat::Json;
    if (out_path.empty()) {
      ncgeo::emit_report(report, fmt, std::cout);
    } else {
      ncgeo::emit_report_file(report, fmt, out_path);
    }
    return 0;
  } catch (const ncgeo::SchemaError& err) {
    std::cerr << "schema error: " << err.what() << '\n';
    return kExitSchema;
  } catch (const ncgeo::AmbiguousRankError& err) {
    std::cerr << "numerical ambiguity: " << err.what() << '\n';
    return kExitAmbiguous;
  } catch (const ncgeo::InconsistentConstraints& err) {
    std::cerr << "numerical ambiguity: " << err.what() << '\n';
    return kExitAmbiguous;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInternal;
  }
}
