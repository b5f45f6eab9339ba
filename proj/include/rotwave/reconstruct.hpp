#pragma once

#include <string>

#include "rotwave/coefficients.hpp"
#include "rotwave/rch_solver.hpp"
#include "rotwave/spectral_grid.hpp"

namespace rotwave {

/// Scaling of the quadratic term of the depth transform
/// u = w + mu lambda w_xx + k w w_xx:
///   scaled   -> k = eps mu (2 lambda / c)
///   unscaled -> k = 2 lambda / c
enum class ThetaConvention { scaled, unscaled };

const char* to_string(ThetaConvention t);
ThetaConvention theta_convention_from_string(const std::string& s);

struct ReconstructionSpec {
  CoefficientSet coeffs;
  PhysicalParams params;
  ThetaConvention theta = ThetaConvention::scaled;
};

/// Coefficient k of w w_xx in the depth transform.
double theta_quadratic_coeff(const ReconstructionSpec& spec);

/// u = w + mu lambda w_xx + k w w_xx
Field theta_transform(const Field& w, const ReconstructionSpec& spec);
/// d/dt of theta_transform given w_t.
Field theta_transform_rate(const Field& w, const Field& w_t, const ReconstructionSpec& spec);
/// d^2/dt^2 of theta_transform given w_t and w_tt.
Field theta_transform_second_rate(const Field& w, const Field& w_t, const Field& w_tt,
                                  const ReconstructionSpec& spec);

/// eta = u/c - eps h* u^2 + eps^2 A3 u^3 + eps^3 (2 Omega A3 + omega2/4) u^4
///       + mu m u_xt - eps mu (A1 u u_xx + A2 u_x^2)
Field eta_from_u(const Field& u, const Field& u_t, const ReconstructionSpec& spec);
/// d/dt of eta_from_u given u_t and u_tt.
Field eta_rate_from_u(const Field& u, const Field& u_t, const Field& u_tt,
                      const ReconstructionSpec& spec);

/// u = c eta + eps g1 eta^2 + mu gm eta_xt + eps^2 g2 eta^3 + eps^3 g3 eta^4
///     + eps mu (g4 eta eta_xx + g5 eta_x^2)
Field u_from_eta(const Field& eta, const Field& eta_t, const ReconstructionSpec& spec);
/// d/dt of u_from_eta given eta_t and eta_tt.
Field u_rate_from_eta(const Field& eta, const Field& eta_t, const Field& eta_tt,
                      const ReconstructionSpec& spec);

/// (eta, u) and their time derivatives on the R-GN side.
struct FamilyJet {
  Field eta, u, eta_t, u_t;
};

/// Builds the R-GN pair carried by a scalar state w of `model`. Time
/// derivatives come from the model's right-hand side and its linearization.
FamilyJet reconstruct_state(const ScalarModel& model, const Field& w,
                            const ReconstructionSpec& spec);

}  // namespace rotwave
