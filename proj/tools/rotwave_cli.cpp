#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotwave/commands.hpp"
#include "rotwave/errors.hpp"

using namespace rotwave;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

int fail(int code, const std::string& kind, const std::string& message, json extra = json::object()) {
  json e = {{"error", kind}, {"message", message}, {"exit_code", code}};
  e.update(extra);
  std::cerr << e.dump() << "\n";
  return code;
}

json time_field(double t) { return std::isfinite(t) ? json(t) : json(nullptr); }

Family family_from_flag(const std::string& s) {
  if (s == "gbbm" || s == "velocity") return Family::velocity;
  if (s == "rch") return Family::rch;
  if (s == "surface") return Family::surface;
  if (s == "surface-rch") return Family::surface_rch;
  throw ConfigError("unknown family '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating shallow-water models: coefficients, simulations, scaling studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_dir;
  int jobs = 1;
  long seed = 0;

  double omega = 0.0, p = 0.0;
  std::optional<double> theta, lambda;
  std::string family = "rch", surface_form = "printed";
  auto* coeffs = app.add_subcommand("coeffs", "Print a coefficient set and its constraint report as JSON");
  coeffs->add_option("--omega", omega, "Coriolis frequency")->required();
  coeffs->add_option("--p", p, "free parameter p (gbbm and surface families)");
  coeffs->add_option("--theta", theta, "velocity level in [0,1] (gbbm family)");
  coeffs->add_option("--lambda", lambda, "lambda directly (gbbm family)")->excludes("--theta");
  coeffs->add_option("--family", family, "gbbm | rch | surface | surface-rch")->capture_default_str();
  coeffs->add_option("--surface-form", surface_form, "printed | consistent")->capture_default_str();

  std::vector<CLI::App*> runs;
  for (const char* name : {"simulate-rch", "simulate-rgn", "consistency", "converge", "reconstruct"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
    sub->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "reserved; every pipeline is deterministic");
    runs.push_back(sub);
  }
  runs[0]->description("Integrate the scalar model and write the trajectory");
  runs[1]->description("Integrate the rotating Green-Naghdi system and write the trajectory");
  runs[2]->description("Residual scan of a family across the regime");
  runs[3]->description("Matched Green-Naghdi vs scalar-model error study");
  runs[4]->description("Dump reconstructed (eta, u) and time derivatives along a scalar run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kConfig, "usage", e.what());
  }

  try {
    if (coeffs->parsed()) {
      const Family f = family_from_flag(family);
      SurfaceForm form;
      if (surface_form == "printed") form = SurfaceForm::printed;
      else if (surface_form == "consistent") form = SurfaceForm::consistent;
      else throw ConfigError("unknown surface form '" + surface_form + "'");
      const double lam = theta ? lambda_from_theta(*theta) : lambda.value_or(0.0);
      CoefficientSet set;
      switch (f) {
        case Family::velocity: set = gbbm_velocity_family(omega, p, lam); break;
        case Family::rch: set = rch_parameters(omega); break;
        case Family::surface: set = surface_family(omega, p, form); break;
        case Family::surface_rch: set = surface_rch_parameters(omega, form); break;
      }
      std::cout << coefficients_json(set, check_constraints(set)).dump(2) << "\n";
      return kOk;
    }

    ExperimentConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    Report report;
    if (runs[0]->parsed()) report = run_simulate_rch(cfg);
    else if (runs[1]->parsed()) report = run_simulate_rgn(cfg);
    else if (runs[2]->parsed()) report = run_consistency(cfg, jobs);
    else if (runs[3]->parsed()) report = run_converge(cfg, jobs);
    else report = run_reconstruct(cfg);

    const Manifest m = write_outputs(report, cfg.out_dir);
    json files = json::array();
    for (const auto& e : m.files) files.push_back(e.file);
    std::cout << json{{"command", report.command}, {"out", cfg.out_dir}, {"files", files}}.dump() << "\n";

    if (report.command == "simulate-rgn" && report.results.value("termination", "") != "completed")
      return fail(kNumerical, "blow_up", report.results.value("cause", ""),
                  {{"termination", report.results["termination"]},
                   {"time", report.results["end_time"]},
                   {"outputs_written", true}});
    return kOk;
  } catch (const ConfigError& e) {
    return fail(kConfig, "config", e.what(), {{"line", e.line()}});
  } catch (const DomainError& e) {
    return fail(kConfig, "domain", e.what());
  } catch (const EllipticDivergence& e) {
    return fail(kNumerical, "elliptic_divergence", e.what(),
                {{"time", time_field(e.time())}, {"residual", e.residual()}, {"iterations", e.iterations()}});
  } catch (const NumericalError& e) {
    return fail(kNumerical, "numerical", e.what(), {{"time", time_field(e.time())}});
  } catch (const IoError& e) {
    return fail(kIo, "io", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal", e.what());
  }
}
