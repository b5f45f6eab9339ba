#pragma once
// Exact reference values for the coefficient engine. Everything here is
// written out directly in powers of c, independently of the library's
// templated formulas, and evaluated with boost rationals.

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

inline double to_double(const Q& q) { return q.convert_to<double>(); }

inline Q pow(const Q& x, int n) {
  Q r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

/// Rotation rate whose wave speed is c: c(c + 2 Omega) = 1.
inline Q omega_for(const Q& c) { return (1 - c * c) / (2 * c); }

struct Rch {
  Q lambda, p, alpha_rch, beta0, beta_rch, omega1, omega2, gamma_gbbm;
};

inline Rch rch(const Q& c) {
  const Q c2 = c * c, c4 = pow(c, 4), k2 = pow(1 + c2, 2);
  Rch r;
  r.lambda = (c4 - 2 * c2 + 5) / (12 * k2);
  r.p = -(3 * c4 + 10 * c2 + 3) / (12 * k2);
  r.alpha_rch = c2 / (1 + c2);
  r.beta0 = c * (c4 + 6 * c2 - 1) / (6 * k2);
  r.beta_rch = (3 * c4 + 8 * c2 - 1) / (6 * k2);
  r.omega1 = -3 * c * (c2 - 1) * (c2 - 2) / (2 * pow(1 + c2, 3));
  r.omega2 = (c2 - 2) * pow(c2 - 1, 2) * (8 * c2 - 1) / (2 * pow(1 + c2, 5));
  r.gamma_gbbm = r.alpha_rch * r.beta_rch;
  return r;
}

struct Velocity {
  Q alpha, beta, gamma, delta, h_star;
};

/// Velocity family with the gamma that makes delta = 2 gamma hold at the
/// R-CH choice of (p, lambda).
inline Velocity velocity(const Q& c, const Q& p, const Q& lambda) {
  const Q c2 = c * c, k = 1 + c2, k3 = pow(k, 3);
  Velocity v;
  v.alpha = c * (p + lambda);
  v.beta = p + lambda - c2 / (3 * k);
  v.gamma = -c2 * (5 * c2 - 1) / (3 * k3) - 3 * c2 * (p + lambda) / k;
  v.delta = -c2 * (3 * pow(c, 4) + 16 * c2 + 4) / (3 * k3) - 3 * c2 * (3 * p + lambda) / k;
  v.h_star = (c2 - 2) / (2 * c2 * k);
  return v;
}

struct Surface {
  Q B, omega1_bar, omega2_bar, alpha, beta, gamma, delta;
};

/// Surface family exactly as printed.
inline Surface surface_printed(const Q& c, const Q& p) {
  const Q c2 = c * c, c3 = c2 * c, k = 1 + c2;
  Surface f;
  f.B = 3 * c3 / k;
  f.omega1_bar = -3 * c3 * (2 - c2) / pow(k, 3);
  f.omega2_bar = c3 * (2 - c2) * (pow(c, 6) + 9 * pow(c, 4) - 7 * c2 + 3) / pow(k, 5);
  f.alpha = c * p;
  f.beta = p - c2 / (3 * k);
  f.gamma = -c3 * (-2 * pow(c, 4) + 7 * c2 + 3) / (3 * pow(k, 3)) - 3 * c3 * p / k;
  f.delta = -c3 * (-6 * pow(c, 4) + 13 * c2 + 10) / (3 * pow(k, 3)) - 9 * c3 * p / k;
  return f;
}

inline Q surface_rch_p_printed(const Q& c) {
  const Q c2 = c * c;
  return (2 * pow(c, 4) + c2 - 4) / (9 * pow(1 + c2, 2));
}

}  // namespace oracle
