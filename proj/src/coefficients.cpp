#include "rotwave/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void clear_surface(CoefficientSet& s) {
  s.B = s.omega1_bar = s.omega2_bar = kNaN;
  s.A1_bar = s.A2_bar = s.A3_bar = s.A4_bar = s.A5_bar = s.A6_bar = kNaN;
  s.surface_map = SurfaceMap{};
}

void check_omega(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw DomainError("Coriolis frequency must be finite and >= 0, got " + std::to_string(omega));
}

CoefficientSet velocity_set(double omega, double p, double lambda) {
  const double c = wave_speed(omega);
  const auto v = formulas::velocity(c, omega, p, lambda);

  CoefficientSet s;
  s.family = Family::velocity;
  s.family_tag = "velocity";
  s.omega = omega;
  s.c = c;
  s.p = p;
  s.lambda = lambda;
  s.alpha = v.alpha;
  s.beta = v.beta;
  s.gamma = v.gamma;
  s.delta = v.delta;
  s.quad = v.quad;
  s.omega1 = v.omega1;
  s.omega2 = v.omega2;
  s.h_star = v.h_star;
  s.A1 = v.A1;
  s.A2 = v.A2;
  s.A3 = v.A3;
  s.A4 = v.A4;
  s.A5 = v.A5;
  s.alpha_rch = v.quad / 3.0;
  s.beta0 = -v.alpha;
  s.beta_rch = -v.beta;

  // eta = F(u) always uses the lambda = 0 member with the same p; the
  // lambda dependence is carried by the depth transform instead.
  const auto base = formulas::velocity(c, omega, p, 0.0);
  s.eta_map.inv_c = 1.0 / c;
  s.eta_map.h_star = base.h_star;
  s.eta_map.A3 = base.A3;
  s.eta_map.quartic = 2.0 * omega * base.A3 + base.omega2 / 4.0;
  s.eta_map.mu_coeff = 1.0 / 3.0 + base.beta - base.alpha / c;
  s.eta_map.A1 = base.A1;
  s.eta_map.A2 = base.A2;
  s.eta_map.lambda = lambda;
  s.eta_map.theta_coeff = 2.0 * lambda / c;

  clear_surface(s);
  s.evolvable = s.beta < 0.0;
  return s;
}

CoefficientSet surface_set(double omega, double p, SurfaceForm form) {
  const double c = wave_speed(omega);
  const auto f = formulas::surface(c, p, form);

  CoefficientSet s;
  s.family = Family::surface;
  s.surface_form = form;
  s.family_tag = std::string("surface/") + to_string(form);
  s.omega = omega;
  s.c = c;
  s.p = p;
  s.lambda = kNaN;
  s.alpha = f.alpha;
  s.beta = f.beta;
  s.gamma = f.gamma;
  s.delta = f.delta;
  s.quad = f.B;
  s.B = f.B;
  s.omega1_bar = f.omega1_bar;
  s.omega2_bar = f.omega2_bar;
  s.omega1 = s.omega2 = s.h_star = kNaN;
  s.A1 = s.A2 = s.A3 = s.A4 = s.A5 = kNaN;
  s.A1_bar = f.A1_bar;
  s.A2_bar = f.A2_bar;
  s.A3_bar = f.A3_bar;
  s.A4_bar = f.A4_bar;
  s.A5_bar = f.A5_bar;
  s.A6_bar = f.A6_bar;
  s.alpha_rch = f.B / 3.0;
  s.beta0 = -f.alpha;
  s.beta_rch = -f.beta;
  s.surface_map = {c, f.g1, f.gm, f.g2, f.g3, f.g4, f.g5};
  s.eta_map = EtaMap{};
  s.evolvable = s.beta < 0.0;
  return s;
}

class RelationBuilder {
 public:
  explicit RelationBuilder(double tol) { report_.tolerance = tol; }

  void add(const char* name, const char* group, double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const double r = std::abs(lhs - rhs) / scale;
    const bool ok = std::isfinite(r) && r < report_.tolerance;
    report_.relations.push_back({name, group, std::isfinite(r) ? r : kNaN, ok});
    if (std::isfinite(r)) report_.max_residual = std::max(report_.max_residual, r);
    report_.all_ok = report_.all_ok && ok;
  }

  ConstraintReport take() { return std::move(report_); }

 private:
  ConstraintReport report_;
};

}  // namespace

void PhysicalParams::validate() const {
  auto fail = [](const std::string& m) { throw DomainError(m); };
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) fail("mu must be >= 0");
  if (!(omega >= 0.0) || !std::isfinite(omega)) fail("omega must be >= 0");
  if (!std::isfinite(p)) fail("p must be finite");
  if (!(lambda >= -1.0 / 6.0 - 1e-14 && lambda <= 1.0 / 3.0 + 1e-14))
    fail("lambda must lie in [-1/6, 1/3], got " + std::to_string(lambda));
  if (enforce_regime) {
    if (!(mu > 0.0 && mu <= regime_mu0)) fail("mu outside (0, regime_mu0]");
    if (!(epsilon > 0.0 && epsilon <= regime_M * std::sqrt(mu) * (1.0 + 1e-12)))
      fail("epsilon outside (0, regime_M*sqrt(mu)]");
  }
}

double lambda_from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("theta must lie in [0, 1]");
  return 0.5 * (theta * theta - 1.0 / 3.0);
}

const char* to_string(Family f) {
  switch (f) {
    case Family::velocity: return "velocity";
    case Family::rch: return "rch";
    case Family::surface: return "surface";
    case Family::surface_rch: return "surface-rch";
  }
  return "?";
}

const char* to_string(SurfaceForm f) {
  return f == SurfaceForm::printed ? "printed" : "consistent";
}

double wave_speed(double omega) {
  check_omega(omega);
  // 1/(sqrt(1+W^2)+W) avoids the cancellation of sqrt(1+W^2)-W at large W
  return 1.0 / (std::hypot(1.0, omega) + omega);
}

CoefficientSet gbbm_velocity_family(double omega, double p, double lambda) {
  check_omega(omega);
  if (!(lambda >= -1.0 / 6.0 - 1e-14 && lambda <= 1.0 / 3.0 + 1e-14))
    throw DomainError("lambda must lie in [-1/6, 1/3]");
  if (!std::isfinite(p)) throw DomainError("p must be finite");
  return velocity_set(omega, p, lambda);
}

CoefficientSet rch_parameters(double omega) {
  check_omega(omega);
  const double c = wave_speed(omega);
  const auto depth = formulas::rch_depth(c);
  CoefficientSet s = velocity_set(omega, depth.p, depth.lambda);
  s.family = Family::rch;
  s.family_tag = "rch";
  const auto r = formulas::rch_constants(c);
  s.alpha_rch = r.alpha_rch;
  s.beta0 = r.beta0;
  s.beta_rch = r.beta_rch;
  s.evolvable = s.beta_rch > 0.0;
  return s;
}

CoefficientSet surface_family(double omega, double p, SurfaceForm form) {
  check_omega(omega);
  if (!std::isfinite(p)) throw DomainError("p must be finite");
  return surface_set(omega, p, form);
}

CoefficientSet surface_rch_parameters(double omega, SurfaceForm form) {
  check_omega(omega);
  const double c = wave_speed(omega);
  CoefficientSet s = surface_set(omega, formulas::surface_rch_p(c, form), form);
  s.family = Family::surface_rch;
  s.family_tag = std::string("surface-rch/") + to_string(form);
  return s;
}

RchConstants to_rch_convention(const GbbmConstants& g) {
  return {g.c, g.quad / 3.0, g.omega1, g.omega2, -g.alpha, -g.beta, g.gamma, g.delta};
}

GbbmConstants to_gbbm_convention(const RchConstants& r) {
  return {r.c, 3.0 * r.alpha_rch, r.omega1, r.omega2, -r.beta0, -r.beta_rch, r.gamma, r.delta};
}

GbbmConstants gbbm_constants(const CoefficientSet& s) {
  if (s.is_surface())
    return {s.c, s.B, s.omega1_bar, s.omega2_bar, s.alpha, s.beta, s.gamma, s.delta};
  return {s.c, s.quad, s.omega1, s.omega2, s.alpha, s.beta, s.gamma, s.delta};
}

bool ConstraintReport::group_ok(const std::string& group) const {
  return std::all_of(relations.begin(), relations.end(),
                     [&](const Relation& r) { return r.group != group || r.ok; });
}

std::vector<std::string> ConstraintReport::violated() const {
  std::vector<std::string> out;
  for (const auto& r : relations)
    if (!r.ok) out.push_back(r.name);
  return out;
}

ConstraintReport check_constraints(const CoefficientSet& set, double tolerance) {
  RelationBuilder rb(tolerance);
  const double c = set.c, W = set.omega;
  const double s = c * c, K = s + 1.0, K3 = K * K * K, c3 = s * c;

  rb.add("speed", "closed", c * (c + 2.0 * W), 1.0);
  rb.add("dispersion_offset", "closed", set.beta - set.alpha / c, -s / (3.0 * K));

  if (!set.is_surface()) {
    const double lam = set.lambda;
    rb.add("mu_coefficient", "closed", 1.0 / 3.0 + set.beta - set.alpha / c, 1.0 / (3.0 * K));
    rb.add("gamma_closed", "closed", set.gamma + 3.0 * set.alpha * c / K,
           -s * (5.0 * s - 1.0) / (3.0 * K3));
    rb.add("delta_closed", "closed", (set.delta - set.gamma) / 2.0 + 3.0 * set.alpha * c / K,
           -s * (3.0 * s * s + 11.0 * s + 5.0) / (6.0 * K3) + 3.0 * s * lam / K);
    rb.add("h_star_closed", "closed", set.h_star, (s - 2.0) / (2.0 * s * K));
    rb.add("h_star_balance", "implicit", set.h_star, 0.5 - 2.0 * W / c - 1.5 * s / K);
    const double h = set.h_star, A3 = set.A3;
    rb.add("omega1_balance", "implicit", set.omega1,
           c * (6.0 * h * s / K - 3.0 * A3 * c - 3.0 * h));
    rb.add("omega2_balance", "implicit", set.omega2 * (1.0 + s),
           c * (2.0 * h * set.omega1 - 9.0 * s * A3 / K - 8.0 * c * W * A3 + 4.0 * A3));
    if (set.family == Family::rch) {
      rb.add("lambda_plus_p", "closed", lam + set.p, -(s * s + 6.0 * s - 1.0) / (6.0 * K * K));
      rb.add("lambda_minus_p", "closed", lam - set.p, (s * s + 2.0 * s + 2.0) / (3.0 * K * K));
      rb.add("delta_two_gamma", "closed", set.delta, 2.0 * set.gamma);
      rb.add("gamma_beta", "closed", 2.0 * set.gamma, -2.0 * s * set.beta / K);
      rb.add("alpha_rch", "closed", 3.0 * set.alpha_rch, set.quad);
      rb.add("beta0_flip", "closed", set.beta0, -set.alpha);
      rb.add("beta_rch_flip", "closed", set.beta_rch, -set.beta);
    }
  } else {
    const double B = set.B, hb = B / 2.0 - c;
    const double offset = set.beta - set.alpha / c;
    const bool printed = set.surface_form == SurfaceForm::printed;
    rb.add("B_closed", "closed", B * K, 3.0 * c3);
    rb.add("omega1_bar_closed", "closed", set.omega1_bar * K3, -3.0 * c3 * (2.0 - s));
    const double g_rhs = printed ? -c3 * (-2.0 * s * s + 7.0 * s + 3.0) / (3.0 * K3)
                                 : -c3 * (5.0 * s - 1.0) / (3.0 * K3);
    const double d_rhs = printed ? -c3 * (-4.0 * s * s + 6.0 * s + 7.0) / (6.0 * K3)
                                 : -c3 * (2.0 * s - 1.0) / (6.0 * K3);
    rb.add("gamma_closed", "closed", set.gamma + 3.0 * s * set.alpha / K, g_rhs);
    rb.add("delta_closed", "closed", (set.delta - set.gamma) / 2.0 + 3.0 * s * set.alpha / K, d_rhs);
    if (set.family == Family::surface_rch) {
      rb.add("delta_two_gamma", "closed", set.delta, 2.0 * set.gamma);
      rb.add("delta_rch_closed", "closed", set.delta, -2.0 * c3 * (8.0 * s - 1.0) / (3.0 * K3));
    }
    rb.add("B_balance", "implicit", B, c3 - 2.0 * s * hb);
    rb.add("offset_balance", "implicit", offset, -s * (offset + 1.0 / 3.0));
    rb.add("omega1_bar_balance", "implicit", set.omega1_bar, 3.0 * s * hb + set.A1_bar);
    rb.add("omega2_bar_balance", "implicit", set.omega2_bar,
           4.0 * s * (set.omega1_bar / 3.0 - hb) + 2.0 * c * hb * hb + set.A2_bar);
    rb.add("A5_bar_balance", "implicit", set.gamma + set.alpha * B / c, set.A5_bar);
    rb.add("A6_bar_balance", "implicit", (set.delta - set.gamma) / 2.0 + set.alpha * B / c,
           set.A6_bar);
  }
  return rb.take();
}

}  // namespace rotwave
