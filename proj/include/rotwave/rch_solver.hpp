#pragma once

#include <string>
#include <vector>

#include "rotwave/coefficients.hpp"
#include "rotwave/kernels.hpp"
#include "rotwave/spectral_grid.hpp"

namespace rotwave {

enum class ScalarVariant { velocity_gbbm, rch_canonical, surface_gbbm };

const char* to_string(ScalarVariant v);
ScalarVariant scalar_variant_from_string(const std::string& s);

struct ScalarModelSpec {
  CoefficientSet coeffs;
  PhysicalParams params;
  ScalarVariant variant = ScalarVariant::rch_canonical;
  GridSpec grid;
  double cfl = 0.5;
  double symbol_floor = 0.1;
  double blowup_amplitude = 1e6;
  Exec exec = Exec::serial;
};

/// Output samples of one integration, with monotone times.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
};

/// Output times k*dt_out up to t_end, plus t_end itself if it is not on
/// that lattice. dt_out <= 0 gives {0, t_end}.
std::vector<double> output_times(double t_end, double dt_out);

/// Scalar unidirectional models (R-CH, velocity and surface BBM families)
/// integrated with a pseudospectral RK4 scheme in conservative form.
class ScalarModel {
 public:
  explicit ScalarModel(ScalarModelSpec spec);
  ScalarModel(ScalarModelSpec spec, GridPtr grid);

  const ScalarModelSpec& spec() const { return spec_; }
  const GbbmConstants& constants() const { return k_; }
  const GridPtr& grid() const { return grid_; }

  Field rhs(const Field& w) const;
  /// Directional derivative of rhs at w along v; rhs_jvp(w, rhs(w)) = w_tt.
  Field rhs_jvp(const Field& w, const Field& v) const;

  double cfl_limit(const Field& w) const;
  Field step_rk4(const Field& w, double dt) const;
  /// Steps without the CFL check; used for reverse steps in tests.
  Field step_rk4_unchecked(const Field& w, double dt) const;
  Trajectory integrate(const Field& w0, double t_end, double dt, double dt_out) const;

  double mass(const Field& w) const { return integrate_dx(w); }
  /// integral of w^2 + beta_rch mu w_x^2
  double h1_invariant(const Field& w) const;

 private:
  Field apply_inverse_operator(const Field& flux) const;
  ScalarModelSpec spec_;
  GridPtr grid_;
  GbbmConstants k_;
};

}  // namespace rotwave
