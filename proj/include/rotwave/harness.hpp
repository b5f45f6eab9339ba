#pragma once

#include <string>
#include <vector>

#include "rotwave/consistency.hpp"
#include "rotwave/rch_solver.hpp"
#include "rotwave/reconstruct.hpp"
#include "rotwave/rgn_solver.hpp"

namespace rotwave {

struct MatchedData {
  Field w0;           // scalar R-CH state
  WaveState rgn0;     // (eta, u) fed to the R-GN solver
};

/// w0 = u0; the R-GN state is the reconstruction of u0 (depth transform,
/// then eta = F(u) with u_t from the scalar right-hand side).
MatchedData matched_initial_data(const Field& u0, const ScalarModel& model,
                                 const ReconstructionSpec& spec);

struct PairSpec {
  PhysicalParams params;  // epsilon, mu, omega used by both models
  GridSpec grid;
  double t_end = 10.0;
  double dt = 0.01;
  double dt_out = 0.1;
  ThetaConvention theta = ThetaConvention::scaled;
  double b0 = 0.05;
  double elliptic_tol = 1e-11;
  int elliptic_maxit = 500;
};

struct PairSample {
  double t = 0.0;
  double err_u = 0.0;    // sup_x |u_GN - u_CH| at t
  double err_eta = 0.0;  // sup_x |eta_GN - F(u_CH)| at t
  double sup_err = 0.0;  // running max over [0, t] of err_u + err_eta
};

struct PairEntry {
  double mu = 0.0;
  double epsilon = 0.0;
  double omega = 0.0;
  std::vector<PairSample> samples;
  bool truncated = false;
  std::string note;
  double c_est = 0.0;  // max over t >= 1 of sup_err / (mu^2 t)

  /// Running-sup error at time t (exact output time required).
  double sup_err_at(double t) const;
  double last_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Integrates matched R-CH and R-GN problems on identical output times.
PairEntry run_pair(const InitialProfile& u0, const PairSpec& spec);

/// Fit of log(sup_err at t_fixed) against log mu; needs >= 3 distinct mu.
LogFit rate_fit(const std::vector<PairEntry>& entries, double t_fixed);

/// Least-squares line through the origin for sup_err(t) on [t_min, t_max]
/// and the extreme ratios of the data to that line.
struct OriginLine {
  double slope = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t points = 0;
};

OriginLine origin_line_fit(const PairEntry& entry, double t_min, double t_max);

/// Separation growth between two R-GN runs whose initial data differ by
/// delta in the X^1 norm.
struct StabilitySample {
  double t = 0.0;
  double separation = 0.0;
};

struct StabilityEntry {
  double epsilon = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  std::vector<StabilitySample> samples;
  double k_fit = 0.0;  // max over scaled times in [tau_min, tau_max] of log(sep/delta)/(eps t)
  bool completed = true;
};

struct StabilitySpec {
  PhysicalParams params;
  GridSpec grid;
  double delta = 1e-6;
  double tau_min = 0.1;  // scaled-time window eps*t
  double tau_max = 1.0;
  double dt = 0.01;
  double dt_out = 0.1;
};

StabilityEntry stability_run(const InitialProfile& eta0, const InitialProfile& u0,
                             const InitialProfile& perturbation, const StabilitySpec& spec);

}  // namespace rotwave
