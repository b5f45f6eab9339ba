#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rotwave/coefficients.hpp"
#include "rotwave/reconstruct.hpp"
#include "rotwave/spectral_grid.hpp"

namespace rotwave {

/// Residuals of a candidate (eta, u) in the R-GN system, divided by mu^2.
struct ResidualPair {
  Field r1;
  Field r2;
  double s = 1.0;
  double r1_norm = 0.0;
  double r2_norm = 0.0;
};

ResidualPair rgn_residual(const Field& eta, const Field& eta_t, const Field& u, const Field& u_t,
                          const PhysicalParams& params, double s = 1.0);

/// Least-squares line through (log x, log y).
struct LogFit {
  bool defined = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

using InitialProfile = std::function<double(double)>;

struct ScanSpec {
  Family family = Family::rch;
  double omega = 0.0;
  double p = 0.0;       // velocity / surface families only
  double lambda = 0.0;  // velocity family only
  SurfaceForm surface_form = SurfaceForm::printed;
  ThetaConvention theta = ThetaConvention::scaled;
  std::vector<double> mu_list{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  double M = 1.0;
  double s = 1.0;
  std::vector<double> probe_scaled_times{0.1, 0.5, 1.0};
  GridSpec grid;
  double dt = 0.01;  // upper bound; shrunk to 80% of the CFL limit if needed
  int jobs = 1;
};

struct ScanPoint {
  double mu = 0.0;
  double epsilon = 0.0;
  double t = 0.0;
  double r1_norm = 0.0;  // normalized (divided by mu^2)
  double r2_norm = 0.0;
  double raw = 0.0;      // mu^2 (r1_norm + r2_norm)
};

struct ScanRow {
  double mu = 0.0;
  double epsilon = 0.0;
  bool ok = true;
  std::string error;
  std::vector<ScanPoint> probes;
  double sup_raw = 0.0;         // max over probes
  double sup_normalized = 0.0;  // max over probes of r1_norm + r2_norm
};

struct ScanReport {
  ScanSpec spec;
  std::vector<ScanRow> rows;
  LogFit fit;                    // log sup_raw vs log mu over successful rows
  double normalized_spread = 0;  // max/min of sup_normalized
};

CoefficientSet scan_coefficients(const ScanSpec& spec);

ScanReport regime_scan(const InitialProfile& u0, const ScanSpec& spec);

}  // namespace rotwave
