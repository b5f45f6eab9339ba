#pragma once

#include <string>
#include <vector>

#include "rotwave/coefficient_formulas.hpp"

namespace rotwave {

using formulas::SurfaceForm;

/// Regime triple (epsilon, mu, omega) and the family parameters (p, lambda).
struct PhysicalParams {
  double epsilon = 0.1;
  double mu = 0.01;
  double omega = 0.0;
  double p = 0.0;
  double lambda = 0.0;
  double regime_M = 1.0;
  double regime_mu0 = 0.1;
  bool enforce_regime = false;

  /// Throws DomainError on the first violated invariant.
  void validate() const;
  bool operator==(const PhysicalParams&) const = default;
};

/// lambda = (theta^2 - 1/3)/2 for a depth level theta in [0, 1].
double lambda_from_theta(double theta);

enum class Family { velocity, rch, surface, surface_rch };

const char* to_string(Family f);
const char* to_string(SurfaceForm f);

/// Coefficients of eta = F(u) for the velocity families, plus the depth
/// transform u = w + mu*lambda*w_xx + k*w*w_xx (k = theta_coeff times eps*mu
/// or 1 depending on the convention).
struct EtaMap {
  double inv_c = 1.0;
  double h_star = 0.0;
  double A3 = 0.0;
  double quartic = 0.0;   // 2*Omega*A3 + omega2/4
  double mu_coeff = 0.0;  // 1/3 + beta - alpha/c at lambda = 0
  double A1 = 0.0;
  double A2 = 0.0;
  double lambda = 0.0;
  double theta_coeff = 0.0;  // 2*lambda/c
};

/// u = G(eta) for the surface families; see formulas::Surface.
struct SurfaceMap {
  double c = 1.0;
  double g1 = 0.0, gm = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0, g5 = 0.0;
};

/// Every derived constant of one family member. Fields that do not apply to
/// the family are NaN.
struct CoefficientSet {
  Family family = Family::velocity;
  SurfaceForm surface_form = SurfaceForm::printed;
  std::string family_tag;

  double omega = 0.0;
  double c = 1.0;
  double p = 0.0;
  double lambda = 0.0;

  // generalized BBM form: u_t + c u_x + quad eps u u_x + ... + mu (alpha u_xxx + beta u_xxt)
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
  double quad = 0.0;
  double omega1 = 0.0, omega2 = 0.0;
  double h_star = 0.0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0, A4 = 0.0, A5 = 0.0;

  // R-CH convention (sign-flipped dispersion)
  double alpha_rch = 0.0, beta0 = 0.0, beta_rch = 0.0;

  // surface families
  double B = 0.0, omega1_bar = 0.0, omega2_bar = 0.0;
  double A1_bar = 0.0, A2_bar = 0.0, A3_bar = 0.0, A4_bar = 0.0, A5_bar = 0.0, A6_bar = 0.0;

  EtaMap eta_map;
  SurfaceMap surface_map;

  /// Evolution operator 1 + beta*mu*d_xx is invertible for every mu and k.
  bool evolvable = true;

  bool is_surface() const { return family == Family::surface || family == Family::surface_rch; }
};

/// c = sqrt(1 + Omega^2) - Omega.
double wave_speed(double omega);

CoefficientSet gbbm_velocity_family(double omega, double p, double lambda);
CoefficientSet rch_parameters(double omega);
CoefficientSet surface_family(double omega, double p, SurfaceForm form = SurfaceForm::printed);
CoefficientSet surface_rch_parameters(double omega, SurfaceForm form = SurfaceForm::printed);

/// Constants in the generalized BBM convention
///   w_t + c w_x + quad eps w w_x + omega1 eps^2 w^2 w_x + omega2 eps^3 w^3 w_x
///       + mu (alpha w_xxx + beta w_xxt) = eps mu (gamma w w_xxx + delta w_x w_xx)
struct GbbmConstants {
  double c = 1.0, quad = 0.0, omega1 = 0.0, omega2 = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

/// Same equation written as
///   w_t - beta_rch mu w_xxt + c w_x + 3 alpha_rch eps w w_x - beta0 mu w_xxx + ...
///       = eps mu (gamma w w_xxx + delta w_x w_xx)
struct RchConstants {
  double c = 1.0, alpha_rch = 0.0, omega1 = 0.0, omega2 = 0.0;
  double beta0 = 0.0, beta_rch = 0.0, gamma = 0.0, delta = 0.0;
};

RchConstants to_rch_convention(const GbbmConstants& g);
GbbmConstants to_gbbm_convention(const RchConstants& r);

/// GBBM constants of the scalar equation carried by a set (velocity or surface).
GbbmConstants gbbm_constants(const CoefficientSet& set);

struct Relation {
  std::string name;
  std::string group;  // "closed" (explicit formulas) or "implicit" (derivation balances)
  double residual = 0.0;
  bool ok = true;
};

struct ConstraintReport {
  std::vector<Relation> relations;
  double tolerance = 1e-12;
  double max_residual = 0.0;
  bool all_ok = true;

  /// True when every relation of the given group holds.
  bool group_ok(const std::string& group) const;
  std::vector<std::string> violated() const;
};

ConstraintReport check_constraints(const CoefficientSet& set, double tolerance = 1e-12);

}  // namespace rotwave
