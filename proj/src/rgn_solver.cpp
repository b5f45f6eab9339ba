#include "rotwave/rgn_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rotwave/rch_solver.hpp"

namespace rotwave {

namespace {

void require_positive_depth(const Field& h, const char* where) {
  const double m = h.min();
  if (!(m > 0.0))
    throw PositivityError(std::string(where) + ": depth must be positive, min(h) = " +
                          std::to_string(m));
}

double l2(const Field& f) { return std::sqrt(inner(f, f)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void RgnSpec::validate() const {
  params.validate();
  grid.validate();
  if (!(b0 > 0.0)) throw DomainError("b0 must be > 0");
  if (!(elliptic_tol > 0.0)) throw DomainError("elliptic_tol must be > 0");
  if (elliptic_maxit < 1) throw DomainError("elliptic_maxit must be >= 1");
  if (!(cfl > 0.0)) throw DomainError("cfl must be > 0");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::initial_positivity: return "initial_positivity";
    case Termination::depth_floor: return "depth_floor";
    case Termination::rotation_floor: return "rotation_floor";
    case Termination::norm_blowup: return "norm_blowup";
  }
  return "?";
}

Field apply_T(const Field& h, double mu, const Field& f) {
  require_same_grid(h, f, "apply_T");
  require_positive_depth(h, "apply_T");
  Field flux = deriv(f, 1);
  for (std::size_t j = 0; j < flux.size(); ++j) flux[j] *= h[j] * h[j] * h[j];
  Field out = h * f;
  out.axpy(-mu / 3.0, deriv(flux, 1));
  return out;
}

Field invert_T(const Field& h, double mu, const Field& rhs, double tol, int maxit,
               EllipticStats* stats, const Field* guess) {
  require_same_grid(h, rhs, "invert_T");
  require_positive_depth(h, "invert_T");
  const double bnorm = l2(rhs);
  if (bnorm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return Field(rhs.grid_ptr());
  }
  const double hbar = integrate_dx(h) / h.grid().length();
  const double pa = hbar, pb = mu * hbar * hbar * hbar / 3.0;

  Field x = guess ? *guess : Field(rhs.grid_ptr());
  Field r = guess ? rhs - apply_T(h, mu, x) : rhs;
  int it = 0;
  double rel = l2(r) / bnorm;
  // restart from the true residual if rounding made the recurrence optimistic
  for (int restart = 0; restart < 3 && rel > tol; ++restart) {
    Field z = helmholtz_solve(pa, pb, r);
    Field p = z;
    double rz = inner(r, z);
    while (it < maxit) {
      const Field Ap = apply_T(h, mu, p);
      const double pAp = inner(p, Ap);
      if (!(pAp > 0.0)) break;
      const double a = rz / pAp;
      x.axpy(a, p);
      r.axpy(-a, Ap);
      ++it;
      if (l2(r) <= tol * bnorm) break;
      z = helmholtz_solve(pa, pb, r);
      const double rz_new = inner(r, z);
      p *= rz_new / rz;
      p += z;
      rz = rz_new;
    }
    r = rhs - apply_T(h, mu, x);
    rel = l2(r) / bnorm;
    if (it >= maxit) break;
  }
  if (stats) *stats = {it, rel};
  if (!(rel <= tol))
    throw EllipticDivergence("CG did not reach tolerance " + fmt(tol) + " (residual " + fmt(rel) +
                                 " after " + std::to_string(it) + " iterations)",
                             rel, it);
  return x;
}

Field q_of_h(const Field& h, const Field& u) {
  require_same_grid(h, u, "q_of_h");
  require_positive_depth(h, "q_of_h");
  const Field ux = deriv(u, 1);
  Field g(u.grid_ptr());
  kernels::cube_times_square(h.data(), ux.data(), g.data(), g.size(), Exec::serial);
  Field out = deriv(g, 1);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= 2.0 / (3.0 * h[j]);
  return out;
}

double xs_norm(const Field& eta, const Field& u, double mu, double s) {
  const double a = sobolev_norm(eta, s), b = sobolev_norm(u, s), c = sobolev_norm(deriv(u, 1), s);
  return std::sqrt(a * a + b * b + mu * c * c);
}

RgnModel::RgnModel(RgnSpec spec) : RgnModel(spec, Grid::make(spec.grid)) {}

RgnModel::RgnModel(RgnSpec spec, GridPtr grid) : spec_(std::move(spec)), grid_(std::move(grid)) {
  spec_.validate();
  if (!(grid_->spec() == spec_.grid)) throw DomainError("grid does not match model spec");
}

Field RgnModel::depth(const Field& eta) const {
  Field h = spec_.params.epsilon * eta;
  for (double& v : h.values()) v += 1.0;
  return h;
}

std::pair<Field, Field> RgnModel::rhs(const WaveState& s, Field* guess,
                                      EllipticStats* stats) const {
  const auto& P = spec_.params;
  const double eps = P.epsilon, mu = P.mu, W = P.omega;
  const std::size_t n = s.eta.size();
  require_same_grid(s.eta, s.u, "rgn_rhs");

  const Field h = depth(s.eta);
  const double hmin = h.min();
  if (!(hmin >= spec_.b0))
    throw FloorBreach("depth floor breached: min(1+eps*eta) = " + fmt(hmin),
                      Termination::depth_floor);
  double rmin = INFINITY;
  for (std::size_t j = 0; j < n; ++j) rmin = std::min(rmin, 1.0 - 2.0 * W * eps * s.u[j]);
  if (!(rmin >= spec_.b0))
    throw FloorBreach("rotation floor breached: min(1-2*Omega*eps*u) = " + fmt(rmin),
                      Termination::rotation_floor);

  const Field hu = h * s.u;
  const Field hu_x = deriv(hu, 1);
  const Field eta_x = deriv(s.eta, 1);
  const Field ux = deriv(s.u, 1);
  Field g(grid_);
  kernels::cube_times_square(h.data(), ux.data(), g.data(), n, spec_.exec);
  const Field g_x = deriv(g, 1);
  Field forcing(grid_);
  kernels::rgn_forcing(h.data(), eta_x.data(), hu_x.data(), g_x.data(), W, eps, mu,
                       forcing.data(), n, spec_.exec);

  EllipticStats st;
  Field v = invert_T(h, mu, forcing, spec_.elliptic_tol, spec_.elliptic_maxit, &st, guess);
  if (stats) *stats = st;
  if (guess) *guess = v;

  Field u_t = -v;
  for (std::size_t j = 0; j < n; ++j) u_t[j] -= eps * s.u[j] * ux[j];
  Field eta_t = -hu_x;
  if (spec_.grid.dealias) {
    eta_t = dealias(eta_t);
    u_t = dealias(u_t);
  }
  return {std::move(eta_t), std::move(u_t)};
}

double RgnModel::energy(const WaveState& s) const {
  const double mu = spec_.params.mu;
  const Field h = depth(s.eta);
  const Field ux = deriv(s.u, 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double hj = h[j];
    acc += s.eta[j] * s.eta[j] + hj * s.u[j] * s.u[j] + mu / 3.0 * hj * hj * hj * ux[j] * ux[j];
  }
  return acc * grid_->dx();
}

MonitorReport RgnModel::monitor(const WaveState& s) const {
  const auto& P = spec_.params;
  MonitorReport m;
  m.min_depth = INFINITY;
  m.min_rotation = INFINITY;
  for (std::size_t j = 0; j < s.eta.size(); ++j) {
    m.min_depth = std::min(m.min_depth, 1.0 + P.epsilon * s.eta[j]);
    m.min_rotation = std::min(m.min_rotation, 1.0 - 2.0 * P.omega * P.epsilon * s.u[j]);
  }
  m.xs = xs_norm(s.eta, s.u, P.mu, spec_.xs_index);
  m.depth_breach = !(m.min_depth >= spec_.b0);
  m.rotation_breach = !(m.min_rotation >= spec_.b0);
  m.norm_breach = !(m.xs <= spec_.xs_blowup);
  return m;
}

double RgnModel::cfl_limit(const WaveState& s) const {
  const Field h = depth(s.eta);
  const double speed = std::sqrt(std::max(h.max(), 0.0)) + spec_.params.epsilon * s.u.max_abs();
  return spec_.cfl * grid_->dx() / speed;
}

WaveState RgnModel::step_impl(const WaveState& s, double dt, Field* guess, int* max_it) const {
  const std::size_t n = s.eta.size();
  const Exec ex = spec_.exec;
  EllipticStats st;
  auto stage = [&](const WaveState& y) {
    auto r = rhs(y, guess, &st);
    if (max_it) *max_it = std::max(*max_it, st.iterations);
    return r;
  };
  auto shifted = [&](const std::pair<Field, Field>& k, double a) {
    WaveState y{s.eta, s.u, s.t + a};
    kernels::axpy(a, k.first.data(), y.eta.data(), n, ex);
    kernels::axpy(a, k.second.data(), y.u.data(), n, ex);
    return y;
  };
  const auto k1 = stage(s);
  const auto k2 = stage(shifted(k1, 0.5 * dt));
  const auto k3 = stage(shifted(k2, 0.5 * dt));
  const auto k4 = stage(shifted(k3, dt));
  WaveState out{Field(grid_), Field(grid_), s.t + dt};
  kernels::rk4_combine(s.eta.data(), k1.first.data(), k2.first.data(), k3.first.data(),
                       k4.first.data(), dt, out.eta.data(), n, ex);
  kernels::rk4_combine(s.u.data(), k1.second.data(), k2.second.data(), k3.second.data(),
                       k4.second.data(), dt, out.u.data(), n, ex);
  return out;
}

WaveState RgnModel::step_rk4(const WaveState& s, double dt) const {
  if (!(dt > 0.0)) throw DomainError("time step must be > 0");
  const double lim = cfl_limit(s);
  if (dt > lim * (1.0 + 1e-12))
    throw CflViolation("dt = " + fmt(dt) + " exceeds CFL bound " + fmt(lim), s.t);
  return step_impl(s, dt, nullptr, nullptr);
}

RgnRun RgnModel::integrate(const WaveState& s0, double t_end, double dt, double dt_out) const {
  if (!(dt > 0.0)) throw DomainError("time step must be > 0");
  require_same_grid(s0.eta, s0.u, "integrate");
  RgnRun run;
  auto record = [&](const WaveState& s, const MonitorReport& m) {
    run.states.push_back(s);
    run.energy.push_back(energy(s));
    run.monitors.push_back(m);
    run.end_time = s.t;
  };

  WaveState s{s0.eta, s0.u, 0.0};
  MonitorReport m = monitor(s);
  record(s, m);
  const double b0 = spec_.b0;
  if (m.depth_breach || m.rotation_breach) {
    run.termination = Termination::initial_positivity;
    run.cause = m.depth_breach
                    ? "initial data violate the depth floor: min(1+eps*eta) = " +
                          fmt(m.min_depth) + " < b0 = " + fmt(b0)
                    : "initial data violate the rotation floor: min(1-2*Omega*eps*u) = " +
                          fmt(m.min_rotation) + " < b0 = " + fmt(b0);
    return run;
  }
  if (m.norm_breach) {
    run.termination = Termination::norm_blowup;
    run.cause = "initial X^s norm " + fmt(m.xs) + " exceeds " + fmt(spec_.xs_blowup);
    return run;
  }

  const auto times = output_times(t_end, dt_out);
  Field guess(grid_);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double span = times[i] - s.t;
    const auto nsteps = std::max<long>(1, static_cast<long>(std::ceil(span / dt - 1e-9)));
    const double h = span / static_cast<double>(nsteps);
    const double t0 = s.t;
    for (long k = 0; k < nsteps; ++k) {
      const double lim = cfl_limit(s);
      if (h > lim * (1.0 + 1e-12))
        throw CflViolation("dt = " + fmt(h) + " exceeds CFL bound " + fmt(lim), s.t);
      WaveState next;
      try {
        next = step_impl(s, h, &guess, &run.max_cg_iterations);
      } catch (const FloorBreach& e) {
        run.termination = e.cause();
        run.cause = std::string(e.what()) + " during the step from t = " + fmt(s.t);
        record(s, monitor(s));
        return run;
      } catch (NumericalError& e) {
        e.set_time(s.t);
        throw;
      }
      next.t = (k + 1 == nsteps) ? times[i] : t0 + static_cast<double>(k + 1) * h;
      s = std::move(next);
      if (!s.eta.finite() || !s.u.finite()) {
        run.termination = Termination::norm_blowup;
        run.cause = "non-finite state at t = " + fmt(s.t);
        run.end_time = s.t;
        return run;
      }
      m = monitor(s);
      if (m.breached()) {
        record(s, m);
        if (m.depth_breach) {
          run.termination = Termination::depth_floor;
          run.cause = "depth floor breached at t = " + fmt(s.t) +
                      ": min(1+eps*eta) = " + fmt(m.min_depth) + " < b0 = " + fmt(b0);
        } else if (m.rotation_breach) {
          run.termination = Termination::rotation_floor;
          run.cause = "rotation floor breached at t = " + fmt(s.t) +
                      ": min(1-2*Omega*eps*u) = " + fmt(m.min_rotation) + " < b0 = " + fmt(b0);
        } else {
          run.termination = Termination::norm_blowup;
          run.cause = "X^s norm " + fmt(m.xs) + " exceeded " + fmt(spec_.xs_blowup) +
                      " at t = " + fmt(s.t);
        }
        return run;
      }
    }
    record(s, m);
  }
  return run;
}

}  // namespace rotwave
