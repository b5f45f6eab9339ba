#pragma once
// Entry points behind the command-line subcommands. Each returns a Report
// that write_outputs can persist.

#include <json.hpp>

#include "rotwave/coefficients.hpp"
#include "rotwave/config.hpp"
#include "rotwave/consistency.hpp"
#include "rotwave/outputs.hpp"

namespace rotwave {

/// Every field of the set plus its constraint report.
nlohmann::json coefficients_json(const CoefficientSet& set, const ConstraintReport& report);

nlohmann::json config_json(const ExperimentConfig& cfg);

/// Builds the initial profile described by the [initial] block.
InitialProfile make_profile(const InitialData& init);

/// Coefficient set selected by [physics] family, omega, p, lambda.
CoefficientSet config_coefficients(const ExperimentConfig& cfg);

Report run_simulate_rch(const ExperimentConfig& cfg);
Report run_simulate_rgn(const ExperimentConfig& cfg);
Report run_consistency(const ExperimentConfig& cfg, int jobs);
Report run_converge(const ExperimentConfig& cfg, int jobs);
Report run_reconstruct(const ExperimentConfig& cfg);

}  // namespace rotwave
