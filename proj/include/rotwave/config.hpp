#pragma once

#include <string>
#include <vector>

#include "rotwave/coefficients.hpp"
#include "rotwave/reconstruct.hpp"
#include "rotwave/spectral_grid.hpp"

namespace rotwave {

/// Which fields the R-GN simulation starts from.
enum class RgnStart { matched, eta_only };

struct InitialData {
  std::string profile = "sech2";  // sech2 | gaussian | file
  double amplitude = 1.0;
  double width = 2.0;
  double center = 0.0;
  std::string file;  // CSV with columns x,value when profile = file
  RgnStart rgn_start = RgnStart::matched;
  bool operator==(const InitialData&) const = default;
};

struct ExperimentConfig {
  // [physics]
  PhysicalParams params;
  Family family = Family::rch;
  SurfaceForm surface_form = SurfaceForm::printed;
  ThetaConvention theta_convention = ThetaConvention::scaled;

  // [grid]
  GridSpec grid;

  // [initial]
  InitialData initial;

  // [time]
  double t_end = 10.0;
  double dt = 0.01;
  double dt_out = 0.1;

  // [solver]
  double b0 = 0.05;
  double elliptic_tol = 1e-11;
  int elliptic_maxit = 500;
  double cfl = 0.5;

  // [experiment]
  std::vector<double> mu_list{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<double> omega_list{0.0, 0.5};
  double sobolev_s = 1.0;
  std::vector<double> probe_times{0.1, 0.5, 1.0};
  double t_fixed = 10.0;

  // [output]
  std::string out_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses `[section]` / `key = value` text. A `theta` key in [physics] is
/// converted to lambda on the spot. Every problem found is
/// collected; a ConfigError listing all of them (each with its line) is
/// thrown if there is at least one.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& c);

}  // namespace rotwave
