#include "rotwave/harness.hpp"

#include <algorithm>
#include <cmath>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

MatchedData matched_initial_data(const Field& u0, const ScalarModel& model,
                                 const ReconstructionSpec& spec) {
  MatchedData md;
  md.w0 = u0;
  const Field w_t = model.rhs(u0);
  const Field u = theta_transform(u0, spec);
  const Field u_t = theta_transform_rate(u0, w_t, spec);
  md.rgn0 = WaveState{eta_from_u(u, u_t, spec), u, 0.0};
  return md;
}

double PairEntry::sup_err_at(double t) const {
  for (const auto& s : samples)
    if (same_time(s.t, t)) return s.sup_err;
  throw DomainError("no sample at t = " + std::to_string(t));
}

PairEntry run_pair(const InitialProfile& u0, const PairSpec& spec) {
  const CoefficientSet set = rch_parameters(spec.params.omega);
  PhysicalParams params = spec.params;
  params.p = set.p;
  params.lambda = set.lambda;

  PairEntry entry;
  entry.mu = params.mu;
  entry.epsilon = params.epsilon;
  entry.omega = params.omega;

  const GridPtr grid = Grid::make(spec.grid);
  const ScalarModel scalar({set, params, ScalarVariant::rch_canonical, spec.grid}, grid);
  RgnSpec rspec;
  rspec.params = params;
  rspec.grid = spec.grid;
  rspec.b0 = spec.b0;
  rspec.elliptic_tol = spec.elliptic_tol;
  rspec.elliptic_maxit = spec.elliptic_maxit;
  const RgnModel rgn(rspec, grid);
  const ReconstructionSpec rs{set, params, spec.theta};

  const MatchedData md = matched_initial_data(Field::from_function(grid, u0), scalar, rs);
  const RgnRun run = rgn.integrate(md.rgn0, spec.t_end, spec.dt, spec.dt_out);
  if (!run.completed()) {
    entry.truncated = true;
    entry.note = std::string("R-GN stopped: ") + run.cause;
  }

  const auto times = output_times(spec.t_end, spec.dt_out);
  Field w = md.w0;
  double running = 0.0;
  for (std::size_t i = 0; i < times.size() && i < run.states.size(); ++i) {
    const WaveState& g = run.states[i];
    if (!same_time(g.t, times[i])) break;  // early-exit state off the output lattice
    if (i > 0) {
      try {
        w = scalar.integrate(w, times[i] - times[i - 1], spec.dt, 0.0).states.back();
      } catch (const NumericalError& e) {
        entry.truncated = true;
        entry.note = std::string("R-CH stopped: ") + e.what();
        break;
      }
    }
    const Field u = theta_transform(w, rs);
    const Field u_t = theta_transform_rate(w, scalar.rhs(w), rs);
    const Field eta = eta_from_u(u, u_t, rs);
    PairSample s;
    s.t = times[i];
    s.err_u = sup_diff(g.u, u);
    s.err_eta = sup_diff(g.eta, eta);
    running = std::max(running, s.err_u + s.err_eta);
    s.sup_err = running;
    entry.samples.push_back(s);
    if (s.t >= 1.0 && params.mu > 0.0)
      entry.c_est = std::max(entry.c_est, running / (params.mu * params.mu * s.t));
  }
  return entry;
}

LogFit rate_fit(const std::vector<PairEntry>& entries, double t_fixed) {
  std::vector<double> mus, errs;
  for (const auto& e : entries) {
    if (e.last_time() + 1e-9 < t_fixed) continue;
    mus.push_back(e.mu);
    errs.push_back(e.sup_err_at(t_fixed));
  }
  std::vector<double> distinct = mus;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw DomainError("rate_fit needs at least 3 distinct mu values reaching t_fixed");
  return fit_loglog(mus, errs);
}

OriginLine origin_line_fit(const PairEntry& entry, double t_min, double t_max) {
  OriginLine line;
  double stt = 0.0, ste = 0.0;
  for (const auto& s : entry.samples) {
    if (s.t + 1e-9 < t_min || s.t > t_max + 1e-9) continue;
    stt += s.t * s.t;
    ste += s.t * s.sup_err;
    ++line.points;
  }
  if (line.points == 0 || stt == 0.0) throw DomainError("origin_line_fit: no samples in window");
  line.slope = ste / stt;
  line.min_ratio = INFINITY;
  line.max_ratio = 0.0;
  for (const auto& s : entry.samples) {
    if (s.t + 1e-9 < t_min || s.t > t_max + 1e-9) continue;
    const double r = s.sup_err / (line.slope * s.t);
    line.min_ratio = std::min(line.min_ratio, r);
    line.max_ratio = std::max(line.max_ratio, r);
  }
  return line;
}

StabilityEntry stability_run(const InitialProfile& eta0, const InitialProfile& u0,
                             const InitialProfile& perturbation, const StabilitySpec& spec) {
  const double eps = spec.params.epsilon;
  if (!(eps > 0.0)) throw DomainError("stability_run needs epsilon > 0");
  const GridPtr grid = Grid::make(spec.grid);
  RgnSpec rspec;
  rspec.params = spec.params;
  rspec.grid = spec.grid;
  const RgnModel model(rspec, grid);

  WaveState a{Field::from_function(grid, eta0), Field::from_function(grid, u0), 0.0};
  const Field phi = Field::from_function(grid, perturbation);
  const double scale = spec.delta / xs_norm(phi, phi, spec.params.mu, 1.0);
  WaveState b = a;
  b.eta.axpy(scale, phi);
  b.u.axpy(scale, phi);

  const double t_end = spec.tau_max / eps;
  const RgnRun ra = model.integrate(a, t_end, spec.dt, spec.dt_out);
  const RgnRun rb = model.integrate(b, t_end, spec.dt, spec.dt_out);

  StabilityEntry out;
  out.epsilon = eps;
  out.mu = spec.params.mu;
  out.delta = xs_norm(b.eta - a.eta, b.u - a.u, spec.params.mu, 1.0);
  out.completed = ra.completed() && rb.completed();
  out.k_fit = -INFINITY;
  const std::size_t m = std::min(ra.states.size(), rb.states.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double t = ra.states[i].t;
    const double sep = xs_norm(rb.states[i].eta - ra.states[i].eta,
                               rb.states[i].u - ra.states[i].u, spec.params.mu, 1.0);
    out.samples.push_back({t, sep});
    const double tau = eps * t;
    if (tau + 1e-12 >= spec.tau_min && tau <= spec.tau_max + 1e-12)
      out.k_fit = std::max(out.k_fit, std::log(sep / out.delta) / tau);
  }
  return out;
}

}  // namespace rotwave
