#include "rotwave/reconstruct.hpp"

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

void require_velocity(const ReconstructionSpec& spec, const char* where) {
  if (spec.coeffs.is_surface())
    throw DomainError(std::string(where) + " needs a velocity-family coefficient set");
}

void require_surface(const ReconstructionSpec& spec, const char* where) {
  if (!spec.coeffs.is_surface())
    throw DomainError(std::string(where) + " needs a surface-family coefficient set");
}

}  // namespace

const char* to_string(ThetaConvention t) {
  return t == ThetaConvention::scaled ? "scaled" : "unscaled";
}

ThetaConvention theta_convention_from_string(const std::string& s) {
  if (s == "scaled") return ThetaConvention::scaled;
  if (s == "unscaled") return ThetaConvention::unscaled;
  throw DomainError("unknown theta convention '" + s + "'");
}

double theta_quadratic_coeff(const ReconstructionSpec& spec) {
  const double k = spec.coeffs.eta_map.theta_coeff;
  return spec.theta == ThetaConvention::scaled ? spec.params.epsilon * spec.params.mu * k : k;
}

Field theta_transform(const Field& w, const ReconstructionSpec& spec) {
  require_velocity(spec, "theta_transform");
  const double lam = spec.coeffs.eta_map.lambda;
  if (lam == 0.0) return w;
  const double k = theta_quadratic_coeff(spec);
  const Field wxx = deriv(w, 2);
  Field u = w;
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] += spec.params.mu * lam * wxx[j] + k * w[j] * wxx[j];
  return u;
}

Field theta_transform_rate(const Field& w, const Field& w_t, const ReconstructionSpec& spec) {
  require_velocity(spec, "theta_transform_rate");
  require_same_grid(w, w_t, "theta_transform_rate");
  const double lam = spec.coeffs.eta_map.lambda;
  if (lam == 0.0) return w_t;
  const double k = theta_quadratic_coeff(spec);
  const Field wxx = deriv(w, 2), wtxx = deriv(w_t, 2);
  Field u = w_t;
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] += spec.params.mu * lam * wtxx[j] + k * (w_t[j] * wxx[j] + w[j] * wtxx[j]);
  return u;
}

Field theta_transform_second_rate(const Field& w, const Field& w_t, const Field& w_tt,
                                  const ReconstructionSpec& spec) {
  require_velocity(spec, "theta_transform_second_rate");
  const double lam = spec.coeffs.eta_map.lambda;
  if (lam == 0.0) return w_tt;
  const double k = theta_quadratic_coeff(spec);
  const Field wxx = deriv(w, 2), wtxx = deriv(w_t, 2), wttxx = deriv(w_tt, 2);
  Field u = w_tt;
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] += spec.params.mu * lam * wttxx[j] +
            k * (w_tt[j] * wxx[j] + 2.0 * w_t[j] * wtxx[j] + w[j] * wttxx[j]);
  return u;
}

Field eta_from_u(const Field& u, const Field& u_t, const ReconstructionSpec& spec) {
  require_velocity(spec, "eta_from_u");
  require_same_grid(u, u_t, "eta_from_u");
  const EtaMap& m = spec.coeffs.eta_map;
  const double eps = spec.params.epsilon, mu = spec.params.mu;
  const Field ux = deriv(u, 1), uxx = deriv(u, 2), uxt = deriv(u_t, 1);
  Field eta(u.grid_ptr());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double v = u[j];
    const double poly =
        v * (m.inv_c + eps * v * (-m.h_star + eps * v * (m.A3 + eps * v * m.quartic)));
    eta[j] = poly + mu * m.mu_coeff * uxt[j] - eps * mu * (m.A1 * v * uxx[j] + m.A2 * ux[j] * ux[j]);
  }
  return eta;
}

Field eta_rate_from_u(const Field& u, const Field& u_t, const Field& u_tt,
                      const ReconstructionSpec& spec) {
  require_velocity(spec, "eta_rate_from_u");
  require_same_grid(u, u_t, "eta_rate_from_u");
  require_same_grid(u, u_tt, "eta_rate_from_u");
  const EtaMap& m = spec.coeffs.eta_map;
  const double eps = spec.params.epsilon, mu = spec.params.mu;
  const Field ux = deriv(u, 1), uxx = deriv(u, 2);
  const Field utx = deriv(u_t, 1), utxx = deriv(u_t, 2), uttx = deriv(u_tt, 1);
  Field out(u.grid_ptr());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double v = u[j];
    const double dpoly =
        m.inv_c + eps * v * (-2.0 * m.h_star + eps * v * (3.0 * m.A3 + 4.0 * eps * v * m.quartic));
    out[j] = dpoly * u_t[j] + mu * m.mu_coeff * uttx[j] -
             eps * mu * (m.A1 * (u_t[j] * uxx[j] + v * utxx[j]) + 2.0 * m.A2 * ux[j] * utx[j]);
  }
  return out;
}

Field u_from_eta(const Field& eta, const Field& eta_t, const ReconstructionSpec& spec) {
  require_surface(spec, "u_from_eta");
  require_same_grid(eta, eta_t, "u_from_eta");
  const SurfaceMap& g = spec.coeffs.surface_map;
  const double eps = spec.params.epsilon, mu = spec.params.mu;
  const Field ex = deriv(eta, 1), exx = deriv(eta, 2), ext = deriv(eta_t, 1);
  Field u(eta.grid_ptr());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double e = eta[j];
    const double poly = e * (g.c + eps * e * (g.g1 + eps * e * (g.g2 + eps * e * g.g3)));
    u[j] = poly + mu * g.gm * ext[j] + eps * mu * (g.g4 * e * exx[j] + g.g5 * ex[j] * ex[j]);
  }
  return u;
}

Field u_rate_from_eta(const Field& eta, const Field& eta_t, const Field& eta_tt,
                      const ReconstructionSpec& spec) {
  require_surface(spec, "u_rate_from_eta");
  require_same_grid(eta, eta_t, "u_rate_from_eta");
  require_same_grid(eta, eta_tt, "u_rate_from_eta");
  const SurfaceMap& g = spec.coeffs.surface_map;
  const double eps = spec.params.epsilon, mu = spec.params.mu;
  const Field ex = deriv(eta, 1), exx = deriv(eta, 2);
  const Field etx = deriv(eta_t, 1), etxx = deriv(eta_t, 2), ettx = deriv(eta_tt, 1);
  Field out(eta.grid_ptr());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double e = eta[j];
    const double dpoly =
        g.c + eps * e * (2.0 * g.g1 + eps * e * (3.0 * g.g2 + 4.0 * eps * e * g.g3));
    out[j] = dpoly * eta_t[j] + mu * g.gm * ettx[j] +
             eps * mu * (g.g4 * (eta_t[j] * exx[j] + e * etxx[j]) + 2.0 * g.g5 * ex[j] * etx[j]);
  }
  return out;
}

FamilyJet reconstruct_state(const ScalarModel& model, const Field& w,
                            const ReconstructionSpec& spec) {
  const Field w_t = model.rhs(w);
  const Field w_tt = model.rhs_jvp(w, w_t);
  FamilyJet jet;
  if (spec.coeffs.is_surface()) {
    jet.eta = w;
    jet.eta_t = w_t;
    jet.u = u_from_eta(w, w_t, spec);
    jet.u_t = u_rate_from_eta(w, w_t, w_tt, spec);
  } else {
    jet.u = theta_transform(w, spec);
    jet.u_t = theta_transform_rate(w, w_t, spec);
    const Field u_tt = theta_transform_second_rate(w, w_t, w_tt, spec);
    jet.eta = eta_from_u(jet.u, jet.u_t, spec);
    jet.eta_t = eta_rate_from_u(jet.u, jet.u_t, u_tt, spec);
  }
  return jet;
}

}  // namespace rotwave
