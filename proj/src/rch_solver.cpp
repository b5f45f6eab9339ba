#include "rotwave/rch_solver.hpp"

#include <algorithm>
#include <cmath>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

using cplx = std::complex<double>;

GbbmConstants constants_for(const ScalarModelSpec& spec) {
  const CoefficientSet& s = spec.coeffs;
  switch (spec.variant) {
    case ScalarVariant::velocity_gbbm:
      if (s.is_surface()) throw DomainError("velocity-gbbm variant needs a velocity-family set");
      return gbbm_constants(s);
    case ScalarVariant::rch_canonical: {
      if (s.family != Family::rch) throw DomainError("rch-canonical variant needs an R-CH set");
      const double g = s.alpha_rch * s.beta_rch;
      return to_gbbm_convention(
          {s.c, s.alpha_rch, s.omega1, s.omega2, s.beta0, s.beta_rch, g, 2.0 * g});
    }
    case ScalarVariant::surface_gbbm:
      if (!s.is_surface()) throw DomainError("surface-gbbm variant needs a surface-family set");
      return gbbm_constants(s);
  }
  throw DomainError("unknown scalar variant");
}

double stencil_k2(const Grid& g, std::size_t j) {
  const double k = g.k(j);
  if (g.spec().backend == Backend::fourier) return k * k;
  const double t = k * g.dx();
  return (30.0 - 32.0 * std::cos(t) + 2.0 * std::cos(2.0 * t)) / (12.0 * g.dx() * g.dx());
}

}  // namespace

const char* to_string(ScalarVariant v) {
  switch (v) {
    case ScalarVariant::velocity_gbbm: return "velocity-gbbm";
    case ScalarVariant::rch_canonical: return "rch-canonical";
    case ScalarVariant::surface_gbbm: return "surface-gbbm";
  }
  return "?";
}

ScalarVariant scalar_variant_from_string(const std::string& s) {
  if (s == "velocity-gbbm") return ScalarVariant::velocity_gbbm;
  if (s == "rch-canonical") return ScalarVariant::rch_canonical;
  if (s == "surface-gbbm") return ScalarVariant::surface_gbbm;
  throw DomainError("unknown scalar variant '" + s + "'");
}

std::vector<double> output_times(double t_end, double dt_out) {
  if (!(t_end >= 0.0)) throw DomainError("t_end must be >= 0");
  std::vector<double> out{0.0};
  if (t_end == 0.0) return out;
  if (dt_out > 0.0) {
    const auto m = static_cast<long>(std::floor(t_end / dt_out + 1e-9));
    for (long k = 1; k <= m; ++k) out.push_back(static_cast<double>(k) * dt_out);
    if (t_end - out.back() > 1e-9 * std::max(1.0, t_end))
      out.push_back(t_end);
    else
      out.back() = t_end;
  } else {
    out.push_back(t_end);
  }
  return out;
}

ScalarModel::ScalarModel(ScalarModelSpec spec) : ScalarModel(spec, Grid::make(spec.grid)) {}

ScalarModel::ScalarModel(ScalarModelSpec spec, GridPtr grid)
    : spec_(std::move(spec)), grid_(std::move(grid)) {
  if (!(grid_->spec() == spec_.grid)) throw DomainError("grid does not match model spec");
  if (!spec_.coeffs.evolvable)
    throw NonEvolvable("coefficient set '" + spec_.coeffs.family_tag +
                       "' has a non-invertible evolution operator (beta_rch <= 0)");
  spec_.params.validate();
  k_ = constants_for(spec_);
  const Grid& g = *grid_;
  double floor = INFINITY;
  for (std::size_t j = 0; j < g.n_modes(); ++j) {
    if (spec_.grid.dealias && !g.resolved(j)) continue;
    floor = std::min(floor, 1.0 - k_.beta * spec_.params.mu * stencil_k2(g, j));
  }
  if (!(floor > spec_.symbol_floor))
    throw PositivityError("evolution symbol drops to " + std::to_string(floor) +
                          " (floor " + std::to_string(spec_.symbol_floor) + ")");
}

Field ScalarModel::apply_inverse_operator(const Field& flux) const {
  const double bm = k_.beta * spec_.params.mu;
  if (spec_.grid.backend == Backend::fd4) {
    Field fx = deriv(flux, 1);
    return helmholtz_solve(1.0, -bm, -fx);
  }
  const Grid& g = *grid_;
  const std::size_t nyq = g.n() / 2;
  const bool mask = spec_.grid.dealias;
  return apply_symbol(flux, [&](double k, std::size_t j) -> cplx {
    if (j == nyq || (mask && !g.resolved(j))) return 0.0;
    return cplx(0.0, -k) / (1.0 - bm * k * k);
  });
}

Field ScalarModel::rhs(const Field& w) const {
  if (!w.finite()) throw BlowUp("non-finite scalar state");
  const Field wx = deriv(w, 1);
  const Field wxx = deriv(w, 2);
  Field flux(grid_);
  kernels::scalar_flux(k_, spec_.params.epsilon, spec_.params.mu, w.data(), wx.data(), wxx.data(),
                       flux.data(), w.size(), spec_.exec);
  return apply_inverse_operator(flux);
}

Field ScalarModel::rhs_jvp(const Field& w, const Field& v) const {
  require_same_grid(w, v, "rhs_jvp");
  const Field wx = deriv(w, 1), wxx = deriv(w, 2);
  const Field vx = deriv(v, 1), vxx = deriv(v, 2);
  Field flux(grid_);
  kernels::scalar_flux_jvp(k_, spec_.params.epsilon, spec_.params.mu, w.data(), wx.data(),
                           wxx.data(), v.data(), vx.data(), vxx.data(), flux.data(), w.size(),
                           spec_.exec);
  return apply_inverse_operator(flux);
}

double ScalarModel::cfl_limit(const Field& w) const {
  const double speed =
      std::abs(k_.c) + std::abs(k_.quad) * spec_.params.epsilon * w.max_abs();
  return spec_.cfl * grid_->dx() / speed;
}

Field ScalarModel::step_rk4(const Field& w, double dt) const {
  if (!(dt > 0.0)) throw DomainError("time step must be > 0");
  const double lim = cfl_limit(w);
  if (dt > lim * (1.0 + 1e-12))
    throw CflViolation("dt = " + std::to_string(dt) + " exceeds CFL bound " + std::to_string(lim));
  return step_rk4_unchecked(w, dt);
}

Field ScalarModel::step_rk4_unchecked(const Field& w, double dt) const {
  const std::size_t n = w.size();
  const Field k1 = rhs(w);
  Field y = w;
  kernels::axpy(0.5 * dt, k1.data(), y.data(), n, spec_.exec);
  const Field k2 = rhs(y);
  y = w;
  kernels::axpy(0.5 * dt, k2.data(), y.data(), n, spec_.exec);
  const Field k3 = rhs(y);
  y = w;
  kernels::axpy(dt, k3.data(), y.data(), n, spec_.exec);
  const Field k4 = rhs(y);
  Field out(grid_);
  kernels::rk4_combine(w.data(), k1.data(), k2.data(), k3.data(), k4.data(), dt, out.data(), n,
                       spec_.exec);
  if (!out.finite() || out.max_abs() > spec_.blowup_amplitude)
    throw BlowUp("scalar amplitude exceeded " + std::to_string(spec_.blowup_amplitude));
  return out;
}

Trajectory ScalarModel::integrate(const Field& w0, double t_end, double dt, double dt_out) const {
  if (!(dt > 0.0)) throw DomainError("time step must be > 0");
  if (!w0.finite()) throw DomainError("initial data must be finite");
  Trajectory traj;
  const auto times = output_times(t_end, dt_out);
  Field w = w0;
  double t = 0.0;
  traj.times.push_back(0.0);
  traj.states.push_back(w);
  try {
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double span = times[i] - t;
      const auto m = std::max<long>(1, static_cast<long>(std::ceil(span / dt - 1e-9)));
      const double h = span / static_cast<double>(m);
      for (long s = 0; s < m; ++s) {
        w = step_rk4(w, h);
        t = times[i - 1] + static_cast<double>(s + 1) * h;
      }
      t = times[i];
      traj.times.push_back(t);
      traj.states.push_back(w);
    }
  } catch (NumericalError& e) {
    e.set_time(t);
    throw;
  }
  return traj;
}

double ScalarModel::h1_invariant(const Field& w) const {
  const Field wx = deriv(w, 1);
  return inner(w, w) - k_.beta * spec_.params.mu * inner(wx, wx);
}

}  // namespace rotwave
