#include "rotwave/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "rotwave/errors.hpp"
#include "rotwave/harness.hpp"
#include "rotwave/rch_solver.hpp"
#include "rotwave/reconstruct.hpp"
#include "rotwave/rgn_solver.hpp"

namespace rotwave {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

ScalarVariant variant_for(Family f) {
  switch (f) {
    case Family::velocity: return ScalarVariant::velocity_gbbm;
    case Family::rch: return ScalarVariant::rch_canonical;
    default: return ScalarVariant::surface_gbbm;
  }
}

PhysicalParams params_for(const ExperimentConfig& cfg, const CoefficientSet& set) {
  PhysicalParams p = cfg.params;
  p.p = set.p;
  if (!set.is_surface()) p.lambda = set.lambda;
  return p;
}

std::vector<std::vector<double>> field_rows(double t, const Field& a) {
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < a.size(); ++j) rows.push_back({t, a.grid().x(j), a[j]});
  return rows;
}

}  // namespace

json coefficients_json(const CoefficientSet& s, const ConstraintReport& r) {
  json j;
  j["family_tag"] = s.family_tag;
  j["family"] = to_string(s.family);
  if (s.is_surface()) j["surface_form"] = to_string(s.surface_form);
  j["omega"] = num(s.omega);
  j["c"] = num(s.c);
  j["p"] = num(s.p);
  j["lambda"] = num(s.lambda);
  j["alpha"] = num(s.alpha);
  j["beta"] = num(s.beta);
  j["gamma"] = num(s.gamma);
  j["delta"] = num(s.delta);
  j["quad"] = num(s.quad);
  j["omega1"] = num(s.omega1);
  j["omega2"] = num(s.omega2);
  j["h_star"] = num(s.h_star);
  j["A1"] = num(s.A1);
  j["A2"] = num(s.A2);
  j["A3"] = num(s.A3);
  j["A4"] = num(s.A4);
  j["A5"] = num(s.A5);
  j["alpha_rch"] = num(s.alpha_rch);
  j["beta0"] = num(s.beta0);
  j["beta_rch"] = num(s.beta_rch);
  j["B"] = num(s.B);
  j["omega1_bar"] = num(s.omega1_bar);
  j["omega2_bar"] = num(s.omega2_bar);
  j["A1_bar"] = num(s.A1_bar);
  j["A2_bar"] = num(s.A2_bar);
  j["A3_bar"] = num(s.A3_bar);
  j["A4_bar"] = num(s.A4_bar);
  j["A5_bar"] = num(s.A5_bar);
  j["A6_bar"] = num(s.A6_bar);
  j["evolvable"] = s.evolvable;
  if (s.is_surface()) {
    const auto& g = s.surface_map;
    j["surface_map"] = {{"g1", g.g1}, {"gm", g.gm}, {"g2", g.g2},
                        {"g3", g.g3}, {"g4", g.g4}, {"g5", g.g5}};
  } else {
    const auto& m = s.eta_map;
    j["eta_map"] = {{"inv_c", m.inv_c}, {"h_star", m.h_star}, {"A3", m.A3},
                    {"quartic", m.quartic}, {"mu_coeff", m.mu_coeff}, {"A1", m.A1},
                    {"A2", m.A2}, {"lambda", m.lambda}, {"theta_coeff", m.theta_coeff}};
  }
  json rel = json::array();
  for (const auto& x : r.relations)
    rel.push_back({{"name", x.name}, {"group", x.group}, {"residual", num(x.residual)}, {"ok", x.ok}});
  j["constraints"] = {{"tolerance", r.tolerance},
                      {"max_residual", r.max_residual},
                      {"all_ok", r.all_ok},
                      {"relations", rel}};
  return j;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["physics"] = {{"epsilon", c.params.epsilon},
                  {"mu", c.params.mu},
                  {"omega", c.params.omega},
                  {"p", c.params.p},
                  {"lambda", c.params.lambda},
                  {"regime_M", c.params.regime_M},
                  {"regime_mu0", c.params.regime_mu0},
                  {"enforce_regime", c.params.enforce_regime},
                  {"family", to_string(c.family)},
                  {"surface_form", to_string(c.surface_form)},
                  {"theta_convention", to_string(c.theta_convention)}};
  j["grid"] = {{"n", c.grid.n},
               {"length", c.grid.length},
               {"backend", to_string(c.grid.backend)},
               {"dealias", c.grid.dealias}};
  j["initial"] = {{"profile", c.initial.profile},
                  {"amplitude", c.initial.amplitude},
                  {"width", c.initial.width},
                  {"center", c.initial.center},
                  {"file", c.initial.file},
                  {"rgn_start", c.initial.rgn_start == RgnStart::matched ? "matched" : "eta-only"}};
  j["time"] = {{"t_end", c.t_end}, {"dt", c.dt}, {"dt_out", c.dt_out}};
  j["solver"] = {{"b0", c.b0},
                 {"elliptic_tol", c.elliptic_tol},
                 {"elliptic_maxit", c.elliptic_maxit},
                 {"cfl", c.cfl}};
  j["experiment"] = {{"mu_list", c.mu_list},
                     {"omega_list", c.omega_list},
                     {"sobolev_s", c.sobolev_s},
                     {"probe_times", c.probe_times},
                     {"t_fixed", c.t_fixed}};
  j["output"] = {{"dir", c.out_dir}};
  return j;
}

InitialProfile make_profile(const InitialData& init) {
  const double a = init.amplitude, w = init.width, x0 = init.center;
  if (init.profile == "sech2")
    return [=](double x) {
      const double s = 1.0 / std::cosh((x - x0) / w);
      return a * s * s;
    };
  if (init.profile == "gaussian")
    return [=](double x) {
      const double z = (x - x0) / w;
      return a * std::exp(-z * z);
    };
  if (init.profile == "file") {
    std::ifstream f(init.file);
    if (!f) throw IoError("cannot read initial data file '" + init.file + "'");
    auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      double x, v;
      char comma;
      if (!(ss >> x >> comma >> v) || comma != ',')
        throw ConfigError("malformed row in '" + init.file + "': " + line);
      pts->emplace_back(x, v);
    }
    if (pts->size() < 2) throw ConfigError("initial data file needs at least 2 rows");
    std::sort(pts->begin(), pts->end());
    return [pts](double x) {
      const auto& p = *pts;
      if (x <= p.front().first || x >= p.back().first) return 0.0;
      const auto it = std::upper_bound(p.begin(), p.end(), x,
                                       [](double v, const auto& q) { return v < q.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double s = (x - lo.first) / (hi.first - lo.first);
      return lo.second + s * (hi.second - lo.second);
    };
  }
  throw ConfigError("unknown initial profile '" + init.profile + "'");
}

CoefficientSet config_coefficients(const ExperimentConfig& cfg) {
  const auto& P = cfg.params;
  switch (cfg.family) {
    case Family::velocity: return gbbm_velocity_family(P.omega, P.p, P.lambda);
    case Family::rch: return rch_parameters(P.omega);
    case Family::surface: return surface_family(P.omega, P.p, cfg.surface_form);
    case Family::surface_rch: return surface_rch_parameters(P.omega, cfg.surface_form);
  }
  throw ConfigError("unknown family");
}

Report run_simulate_rch(const ExperimentConfig& cfg) {
  const CoefficientSet set = config_coefficients(cfg);
  const PhysicalParams params = params_for(cfg, set);
  ScalarModelSpec spec{set, params, variant_for(cfg.family), cfg.grid};
  spec.cfl = cfg.cfl;
  const ScalarModel model(spec);
  const Field w0 = Field::from_function(model.grid(), make_profile(cfg.initial));
  const Trajectory tr = model.integrate(w0, cfg.t_end, cfg.dt, cfg.dt_out);

  Report r;
  r.command = "simulate-rch";
  r.config = config_json(cfg);
  CsvTable traj{"trajectory.csv", {"t", "x", "w"}, {}};
  CsvTable series{"series.csv", {"t", "mass", "h1_invariant", "max_abs"}, {}};
  const double m0 = model.mass(w0), i0 = model.h1_invariant(w0);
  double mass_drift = 0.0, inv_drift = 0.0, amp = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const Field& w = tr.states[i];
    for (auto& row : field_rows(tr.times[i], w)) traj.rows.push_back(std::move(row));
    const double m = model.mass(w), inv = model.h1_invariant(w);
    series.rows.push_back({tr.times[i], m, inv, w.max_abs()});
    mass_drift = std::max(mass_drift, std::abs(m - m0) / std::max(std::abs(m0), 1e-300));
    inv_drift = std::max(inv_drift, std::abs(inv - i0) / std::max(std::abs(i0), 1e-300));
    amp = std::max(amp, w.max_abs());
  }
  r.tables = {traj, series};
  r.results = {{"variant", to_string(spec.variant)},
               {"coefficients", coefficients_json(set, check_constraints(set))},
               {"final_time", tr.times.back()},
               {"mass_drift", mass_drift},
               {"invariant_drift", inv_drift},
               {"max_amplitude", amp}};
  return r;
}

Report run_simulate_rgn(const ExperimentConfig& cfg) {
  RgnSpec spec;
  spec.params = cfg.params;
  spec.grid = cfg.grid;
  spec.b0 = cfg.b0;
  spec.elliptic_tol = cfg.elliptic_tol;
  spec.elliptic_maxit = cfg.elliptic_maxit;
  spec.cfl = cfg.cfl;
  const GridPtr grid = Grid::make(cfg.grid);
  const Field profile = Field::from_function(grid, make_profile(cfg.initial));

  WaveState s0{profile, Field(grid), 0.0};
  json start = "eta-only";
  if (cfg.initial.rgn_start == RgnStart::matched) {
    const CoefficientSet set = config_coefficients(cfg);
    const PhysicalParams params = params_for(cfg, set);
    spec.params = params;
    const ScalarModel scalar({set, params, variant_for(cfg.family), cfg.grid}, grid);
    const ReconstructionSpec rs{set, params, cfg.theta_convention};
    const FamilyJet jet = reconstruct_state(scalar, profile, rs);
    s0 = WaveState{jet.eta, jet.u, 0.0};
    start = std::string("matched/") + set.family_tag;
  }
  const RgnModel model(spec, grid);
  const RgnRun run = model.integrate(s0, cfg.t_end, cfg.dt, cfg.dt_out);

  Report r;
  r.command = "simulate-rgn";
  r.config = config_json(cfg);
  CsvTable traj{"trajectory.csv", {"t", "x", "eta", "u"}, {}};
  CsvTable series{"series.csv", {"t", "energy", "mass", "min_depth", "min_rotation", "xs_norm"}, {}};
  const double e0 = run.energy.front();
  double drift = 0.0;
  json energy = json::array();
  for (std::size_t i = 0; i < run.states.size(); ++i) {
    const WaveState& s = run.states[i];
    for (std::size_t j = 0; j < s.eta.size(); ++j)
      traj.rows.push_back({s.t, grid->x(j), s.eta[j], s.u[j]});
    const auto& m = run.monitors[i];
    series.rows.push_back({s.t, run.energy[i], integrate_dx(s.eta), m.min_depth, m.min_rotation, m.xs});
    if (e0 > 0.0) drift = std::max(drift, std::abs(run.energy[i] - e0) / e0);
  }
  r.tables = {traj, series};
  r.results = {{"initial_data", start},
               {"termination", to_string(run.termination)},
               {"cause", run.cause},
               {"end_time", run.end_time},
               {"energy_drift", drift},
               {"max_cg_iterations", run.max_cg_iterations}};
  return r;
}

Report run_consistency(const ExperimentConfig& cfg, int jobs) {
  ScanSpec spec;
  spec.family = cfg.family;
  spec.omega = cfg.params.omega;
  spec.p = cfg.params.p;
  spec.lambda = cfg.params.lambda;
  spec.surface_form = cfg.surface_form;
  spec.theta = cfg.theta_convention;
  spec.mu_list = cfg.mu_list;
  spec.M = cfg.params.regime_M;
  spec.s = cfg.sobolev_s;
  spec.probe_scaled_times = cfg.probe_times;
  spec.grid = cfg.grid;
  spec.dt = cfg.dt;
  spec.jobs = jobs;
  const ScanReport rep = regime_scan(make_profile(cfg.initial), spec);

  Report r;
  r.command = "consistency";
  r.config = config_json(cfg);
  CsvTable tab{"residuals.csv", {"mu", "epsilon", "t", "r1_norm", "r2_norm", "raw"}, {}};
  json rows = json::array();
  for (const auto& row : rep.rows) {
    for (const auto& p : row.probes) tab.rows.push_back({p.mu, p.epsilon, p.t, p.r1_norm, p.r2_norm, p.raw});
    rows.push_back({{"mu", row.mu},
                    {"epsilon", row.epsilon},
                    {"ok", row.ok},
                    {"error", row.error},
                    {"sup_raw", num(row.sup_raw)},
                    {"sup_normalized", num(row.sup_normalized)}});
  }
  r.tables = {tab};
  r.results = {{"family", scan_coefficients(spec).family_tag},
               {"rows", rows},
               {"slope_defined", rep.fit.defined},
               {"slope", rep.fit.defined ? json(rep.fit.slope) : json(nullptr)},
               {"r_squared", rep.fit.defined ? json(rep.fit.r_squared) : json(nullptr)},
               {"normalized_spread", num(rep.normalized_spread)}};
  return r;
}

Report run_converge(const ExperimentConfig& cfg, int jobs) {
  struct Job {
    double omega, mu;
  };
  std::vector<Job> job_list;
  std::vector<double> omegas = cfg.omega_list, mus = cfg.mu_list;
  std::sort(omegas.begin(), omegas.end());
  std::sort(mus.begin(), mus.end());
  for (double w : omegas)
    for (double m : mus) job_list.push_back({w, m});

  const InitialProfile u0 = make_profile(cfg.initial);
  std::vector<PairEntry> entries(job_list.size());
  std::vector<std::string> errors(job_list.size());
  const long n = static_cast<long>(job_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (long i = 0; i < n; ++i) {
    PairSpec ps;
    ps.params = cfg.params;
    ps.params.omega = job_list[i].omega;
    ps.params.mu = job_list[i].mu;
    ps.params.epsilon = cfg.params.regime_M * std::sqrt(job_list[i].mu);
    ps.grid = cfg.grid;
    ps.t_end = cfg.t_end;
    ps.dt = cfg.dt;
    ps.dt_out = cfg.dt_out;
    ps.theta = cfg.theta_convention;
    ps.b0 = cfg.b0;
    ps.elliptic_tol = cfg.elliptic_tol;
    ps.elliptic_maxit = cfg.elliptic_maxit;
    try {
      entries[i] = run_pair(u0, ps);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      entries[i].mu = ps.params.mu;
      entries[i].epsilon = ps.params.epsilon;
      entries[i].omega = ps.params.omega;
      entries[i].truncated = true;
      entries[i].note = e.what();
    }
  }

  Report r;
  r.command = "converge";
  r.config = config_json(cfg);
  CsvTable tab{"errors.csv", {"mu", "epsilon", "omega", "t", "err_u", "err_eta", "sup_err"}, {}};
  json runs = json::array();
  for (const auto& e : entries) {
    for (const auto& s : e.samples)
      tab.rows.push_back({e.mu, e.epsilon, e.omega, s.t, s.err_u, s.err_eta, s.sup_err});
    runs.push_back({{"mu", e.mu},
                    {"epsilon", e.epsilon},
                    {"omega", e.omega},
                    {"truncated", e.truncated},
                    {"note", e.note},
                    {"last_time", e.last_time()},
                    {"c_est", e.c_est}});
  }
  json fits = json::array();
  for (double w : omegas) {
    std::vector<PairEntry> sub;
    for (const auto& e : entries)
      if (e.omega == w) sub.push_back(e);
    json f = {{"omega", w}, {"t_fixed", cfg.t_fixed}};
    try {
      const LogFit fit = rate_fit(sub, cfg.t_fixed);
      f["slope"] = fit.slope;
      f["intercept"] = fit.intercept;
      f["r_squared"] = fit.r_squared;
    } catch (const DomainError& e) {
      f["slope"] = nullptr;
      f["error"] = e.what();
    }
    fits.push_back(f);
  }
  r.tables = {tab};
  r.results = {{"runs", runs}, {"fits", fits}};
  return r;
}

Report run_reconstruct(const ExperimentConfig& cfg) {
  const CoefficientSet set = config_coefficients(cfg);
  const PhysicalParams params = params_for(cfg, set);
  const ScalarModel model({set, params, variant_for(cfg.family), cfg.grid});
  const ReconstructionSpec rs{set, params, cfg.theta_convention};
  const Field w0 = Field::from_function(model.grid(), make_profile(cfg.initial));
  const Trajectory tr = model.integrate(w0, cfg.t_end, cfg.dt, 0.0);

  Report r;
  r.command = "reconstruct";
  r.config = config_json(cfg);
  CsvTable tab{"reconstruction.csv", {"t", "x", "w", "eta", "u", "eta_t", "u_t"}, {}};
  json probes = json::array();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const Field& w = tr.states[i];
    const FamilyJet jet = reconstruct_state(model, w, rs);
    for (std::size_t j = 0; j < w.size(); ++j)
      tab.rows.push_back({tr.times[i], model.grid()->x(j), w[j], jet.eta[j], jet.u[j],
                          jet.eta_t[j], jet.u_t[j]});
    if (params.mu >= 1e-12) {
      const ResidualPair res = rgn_residual(jet.eta, jet.eta_t, jet.u, jet.u_t, params, cfg.sobolev_s);
      probes.push_back({{"t", tr.times[i]}, {"r1_norm", res.r1_norm}, {"r2_norm", res.r2_norm}});
    }
  }
  r.tables = {tab};
  r.results = {{"coefficients", coefficients_json(set, check_constraints(set))},
               {"residuals", probes}};
  return r;
}

}  // namespace rotwave
