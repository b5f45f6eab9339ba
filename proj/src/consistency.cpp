#include "rotwave/consistency.hpp"

#include <algorithm>
#include <cmath>

#include "rotwave/errors.hpp"
#include "rotwave/rch_solver.hpp"

namespace rotwave {

ResidualPair rgn_residual(const Field& eta, const Field& eta_t, const Field& u, const Field& u_t,
                          const PhysicalParams& params, double s) {
  require_same_grid(eta, eta_t, "rgn_residual");
  require_same_grid(eta, u, "rgn_residual");
  require_same_grid(eta, u_t, "rgn_residual");
  const double eps = params.epsilon, mu = params.mu, W = params.omega;
  if (!(mu >= 1e-12)) throw DomainError("rgn_residual needs mu >= 1e-12");
  const std::size_t n = eta.size();
  const auto grid = eta.grid_ptr();

  Field h(grid), hu(grid), inner_flux(grid);
  const Field ux = deriv(u, 1), uxx = deriv(u, 2), uxt = deriv(u_t, 1), eta_x = deriv(eta, 1);
  for (std::size_t j = 0; j < n; ++j) {
    h[j] = 1.0 + eps * eta[j];
    hu[j] = h[j] * u[j];
    inner_flux[j] = h[j] * h[j] * h[j] *
                    (uxt[j] + eps * u[j] * uxx[j] - eps * ux[j] * ux[j]);
  }
  const Field hu_x = deriv(hu, 1);
  const Field disp = deriv(inner_flux, 1);
  const double inv = 1.0 / (mu * mu);

  ResidualPair out;
  out.s = s;
  out.r1 = Field(grid);
  out.r2 = Field(grid);
  for (std::size_t j = 0; j < n; ++j) {
    out.r1[j] = (eta_t[j] + hu_x[j]) * inv;
    out.r2[j] = (u_t[j] + eta_x[j] + eps * u[j] * ux[j] + 2.0 * W * eta_t[j] -
                 mu / (3.0 * h[j]) * disp[j]) *
                inv;
  }
  out.r1_norm = sobolev_norm(out.r1, s);
  out.r2_norm = sobolev_norm(out.r2, s);
  return out;
}

LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  LogFit f;
  if (x.size() != y.size()) throw DomainError("fit_loglog: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  f.points = lx.size();
  if (lx.size() < 2) return f;
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) return f;
  f.defined = true;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

CoefficientSet scan_coefficients(const ScanSpec& spec) {
  switch (spec.family) {
    case Family::velocity: return gbbm_velocity_family(spec.omega, spec.p, spec.lambda);
    case Family::rch: return rch_parameters(spec.omega);
    case Family::surface: return surface_family(spec.omega, spec.p, spec.surface_form);
    case Family::surface_rch: return surface_rch_parameters(spec.omega, spec.surface_form);
  }
  throw DomainError("unknown family");
}

namespace {

ScalarVariant variant_for(Family f) {
  switch (f) {
    case Family::velocity: return ScalarVariant::velocity_gbbm;
    case Family::rch: return ScalarVariant::rch_canonical;
    default: return ScalarVariant::surface_gbbm;
  }
}

ScanRow scan_one(const InitialProfile& u0, const ScanSpec& spec, const CoefficientSet& set,
                 double mu) {
  ScanRow row;
  row.mu = mu;
  row.epsilon = spec.M * std::sqrt(mu);
  try {
    PhysicalParams params;
    params.epsilon = row.epsilon;
    params.mu = mu;
    params.omega = spec.omega;
    params.p = set.p;
    params.lambda = set.is_surface() ? 0.0 : set.lambda;
    ScalarModel model({set, params, variant_for(spec.family), spec.grid});
    ReconstructionSpec rs{set, params, spec.theta};

    Field w = Field::from_function(model.grid(), u0);
    const double dt = std::min(spec.dt, 0.8 * model.cfl_limit(w));
    std::vector<double> probes = spec.probe_scaled_times;
    std::sort(probes.begin(), probes.end());
    double t = 0.0;
    for (double tau : probes) {
      const double target = tau / row.epsilon;
      if (target > t) {
        w = model.integrate(w, target - t, dt, 0.0).states.back();
        t = target;
      }
      const FamilyJet jet = reconstruct_state(model, w, rs);
      const ResidualPair r = rgn_residual(jet.eta, jet.eta_t, jet.u, jet.u_t, params, spec.s);
      ScanPoint pt{mu, row.epsilon, t, r.r1_norm, r.r2_norm, mu * mu * (r.r1_norm + r.r2_norm)};
      row.sup_raw = std::max(row.sup_raw, pt.raw);
      row.sup_normalized = std::max(row.sup_normalized, pt.r1_norm + pt.r2_norm);
      row.probes.push_back(pt);
    }
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

ScanReport regime_scan(const InitialProfile& u0, const ScanSpec& spec) {
  spec.grid.validate();
  for (double mu : spec.mu_list)
    if (!(mu > 0.0)) throw DomainError("mu values must be > 0");
  if (spec.probe_scaled_times.empty()) throw DomainError("need at least one probe time");
  const CoefficientSet set = scan_coefficients(spec);

  ScanReport rep;
  rep.spec = spec;
  rep.rows.resize(spec.mu_list.size());
  const long m = static_cast<long>(spec.mu_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, spec.jobs))
  for (long i = 0; i < m; ++i) rep.rows[i] = scan_one(u0, spec, set, spec.mu_list[i]);

  std::vector<double> mus, raws;
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rep.rows) {
    if (!r.ok) continue;
    mus.push_back(r.mu);
    raws.push_back(r.sup_raw);
    lo = std::min(lo, r.sup_normalized);
    hi = std::max(hi, r.sup_normalized);
  }
  std::vector<double> distinct = mus;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() >= 2) rep.fit = fit_loglog(mus, raws);
  rep.normalized_spread = (lo > 0.0 && std::isfinite(lo)) ? hi / lo : INFINITY;
  return rep;
}

}  // namespace rotwave
