#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rotwave/coefficients.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/kernels.hpp"
#include "rotwave/spectral_grid.hpp"

namespace rotwave {

struct WaveState {
  Field eta;
  Field u;
  double t = 0.0;
};

struct RgnSpec {
  PhysicalParams params;
  GridSpec grid;
  double b0 = 0.05;
  double elliptic_tol = 1e-11;
  int elliptic_maxit = 500;
  double cfl = 0.5;
  double xs_index = 2.0;
  double xs_blowup = 1e6;
  Exec exec = Exec::serial;

  void validate() const;
};

struct EllipticStats {
  int iterations = 0;
  double residual = 0.0;  // relative true residual at exit
};

/// T[h] f = h f - (mu/3) d_x(h^3 f_x)
Field apply_T(const Field& h, double mu, const Field& f);

/// Solves T[h] g = rhs by preconditioned conjugate gradients. The
/// preconditioner is the constant-depth operator at the mean of h.
Field invert_T(const Field& h, double mu, const Field& rhs, double tol, int maxit,
               EllipticStats* stats = nullptr, const Field* guess = nullptr);

/// Q[h] u = (2/(3h)) d_x(h^3 u_x^2)
Field q_of_h(const Field& h, const Field& u);

/// (|eta|_{H^s}^2 + |u|_{H^s}^2 + mu |u_x|_{H^s}^2)^{1/2}
double xs_norm(const Field& eta, const Field& u, double mu, double s);

enum class Termination { completed, initial_positivity, depth_floor, rotation_floor, norm_blowup };

const char* to_string(Termination t);

struct MonitorReport {
  double min_depth = 1.0;     // min(1 + eps eta)
  double min_rotation = 1.0;  // min(1 - 2 Omega eps u)
  double xs = 0.0;
  bool depth_breach = false;
  bool rotation_breach = false;
  bool norm_breach = false;

  bool breached() const { return depth_breach || rotation_breach || norm_breach; }
};

/// Thrown when a stage state falls below a positivity floor.
class FloorBreach : public PositivityError {
 public:
  FloorBreach(const std::string& what, Termination cause)
      : PositivityError(what), cause_(cause) {}
  Termination cause() const noexcept { return cause_; }

 private:
  Termination cause_;
};

struct RgnRun {
  std::vector<WaveState> states;  // at output times (plus the last state on early exit)
  std::vector<double> energy;
  std::vector<MonitorReport> monitors;
  Termination termination = Termination::completed;
  std::string cause;
  double end_time = 0.0;
  int max_cg_iterations = 0;

  bool completed() const { return termination == Termination::completed; }
};

/// Rotating Green-Naghdi system in the form
///   eta_t = -(h u)_x,
///   u_t = -eps u u_x - T[h]^{-1}(h eta_x - 2 Omega h (h u)_x + eps mu h Q[h] u).
class RgnModel {
 public:
  explicit RgnModel(RgnSpec spec);
  RgnModel(RgnSpec spec, GridPtr grid);

  const RgnSpec& spec() const { return spec_; }
  const GridPtr& grid() const { return grid_; }

  Field depth(const Field& eta) const;
  std::pair<Field, Field> rhs(const WaveState& s, Field* guess = nullptr,
                              EllipticStats* stats = nullptr) const;
  double energy(const WaveState& s) const;
  MonitorReport monitor(const WaveState& s) const;
  double cfl_limit(const WaveState& s) const;
  WaveState step_rk4(const WaveState& s, double dt) const;
  RgnRun integrate(const WaveState& s0, double t_end, double dt, double dt_out) const;

 private:
  WaveState step_impl(const WaveState& s, double dt, Field* guess, int* max_it) const;
  RgnSpec spec_;
  GridPtr grid_;
};

}  // namespace rotwave
