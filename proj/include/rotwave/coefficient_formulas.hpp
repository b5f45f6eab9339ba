#pragma once
// Closed-form coefficient expressions, templated on the scalar type so the
// same code can be evaluated in double precision and in exact rational
// arithmetic (any type constructible from int with + - * /).
//
// Shorthand used throughout: s = c^2, K = 1 + c^2.

namespace rotwave::formulas {

enum class SurfaceForm { printed, consistent };

template <class T>
struct Velocity {
  T alpha, beta, gamma, delta;
  T omega1, omega2;
  T h_star;
  T A1, A2, A3, A4, A5;
  T quad;  // coefficient of eps*u*u_x
};

/// Velocity family at speed c, rotation omega and parameters (p, lambda).
template <class T>
Velocity<T> velocity(const T& c, const T& omega, const T& p, const T& lambda) {
  const T one(1), two(2), three(3);
  const T s = c * c;
  const T K = s + one;
  const T K3 = K * K * K;
  const T K5 = K3 * K * K;
  const T q = p + lambda;

  Velocity<T> v;
  v.alpha = c * q;
  v.beta = q - s / (three * K);
  v.gamma = -(s * (T(5) * s - one)) / (three * K3) - three * s * q / K;
  v.delta = -(s * (three * s * s + T(16) * s + T(4))) / (three * K3) -
            three * s * (three * p + lambda) / K;
  v.omega1 = -(three * c * (s - one) * (s - two)) / (two * K3);
  v.omega2 = (s - two) * (s - one) * (s - one) * (T(8) * s - one) / (two * K5);
  v.h_star = (s - two) / (two * s * K);

  const T offset = v.beta - v.alpha / c;
  const T adv = three * v.alpha * c / K;
  v.A1 = (one / three + v.gamma + adv) + two * omega * c * (one / three + offset);
  v.A2 = (one + v.delta - v.gamma) / two + adv;
  v.A3 = v.omega1 / three - two * omega * v.h_star;
  const T mixed = (one / three + v.gamma + v.alpha / c) * adv;
  v.A4 = c * (v.A1 + mixed - two * v.h_star * offset);
  v.A5 = c * (v.A2 + mixed + v.h_star * offset);
  v.quad = three * s / K;
  return v;
}

template <class T>
struct RchDepth {
  T lambda, p;
};

/// (lambda, p) that turn the velocity family into the R-CH equation.
template <class T>
RchDepth<T> rch_depth(const T& c) {
  const T s = c * c;
  const T K = s + T(1);
  const T d = T(12) * K * K;
  return {(s * s - T(2) * s + T(5)) / d, -(T(3) * s * s + T(10) * s + T(3)) / d};
}

template <class T>
struct RchConstants {
  T alpha_rch, beta0, beta_rch;
};

template <class T>
RchConstants<T> rch_constants(const T& c) {
  const T s = c * c;
  const T K = s + T(1);
  const T d = T(6) * K * K;
  return {s / K, c * (s * s + T(6) * s - T(1)) / d, (T(3) * s * s + T(8) * s - T(1)) / d};
}

template <class T>
struct Surface {
  T B, omega1_bar, omega2_bar;
  T alpha, beta, gamma, delta;
  T A1_bar, A2_bar, A3_bar, A4_bar, A5_bar, A6_bar;
  // u = c*eta + eps*g1*eta^2 + mu*gm*eta_xt + eps^2*g2*eta^3 + eps^3*g3*eta^4
  //     + eps*mu*(g4*eta*eta_xx + g5*eta_x^2)
  T g1, gm, g2, g3, g4, g5;
};

template <class T>
Surface<T> surface(const T& c, const T& p, SurfaceForm form) {
  const T one(1), two(2), three(3);
  const T s = c * c;
  const T c3 = s * c;
  const T K = s + one;
  const T K3 = K * K * K;
  const T K5 = K3 * K * K;

  Surface<T> f;
  f.B = three * c3 / K;
  f.omega1_bar = -(three * c3 * (two - s)) / K3;
  f.alpha = c * p;
  f.beta = p - s / (three * K);
  if (form == SurfaceForm::printed) {
    f.omega2_bar = c3 * (two - s) * (s * s * s + T(9) * s * s - T(7) * s + three) / K5;
    f.gamma = -(c3 * (-two * s * s + T(7) * s + three)) / (three * K3) - three * c3 * p / K;
    f.delta = -(c3 * (-T(6) * s * s + T(13) * s + T(10))) / (three * K3) - T(9) * c3 * p / K;
  } else {
    f.omega2_bar = c3 * (s - two) * (s * s * s - T(7) * s * s + T(5) * s - T(5)) / K5;
    f.gamma = -(c3 * (T(5) * s - one)) / (three * K3) - three * c3 * p / K;
    f.delta = -(c3 * (T(7) * s - two)) / (three * K3) - T(9) * c3 * p / K;
  }

  const T half_b = f.B / two - c;
  const T offset = f.beta - f.alpha / c;
  const T g_adv = f.gamma + f.alpha * f.B / c;
  const T d_adv = (f.delta - f.gamma) / two + f.alpha * f.B / c;
  f.A1_bar = -s * f.omega1_bar + (three * s - two * c * f.B) * half_b;
  f.A2_bar = -s * f.omega2_bar + (T(10) * s / three - two * c * f.B) * f.omega1_bar -
             (T(4) * s - three * c * f.B) * half_b;
  f.A3_bar = (two * s * f.B - three * c3) * offset + s * g_adv;
  f.A4_bar = (s * f.B / two + c3) * offset + s * d_adv;
  f.A5_bar = -c3 / three - T(4) * s * half_b * (offset - one / T(6)) - s * g_adv;
  f.A6_bar = -c3 / two + two * s / three * half_b - (s * f.B / two + c3) * offset - s * d_adv;

  f.g1 = half_b;
  f.gm = offset;
  f.g2 = f.omega1_bar / three - half_b;
  f.g3 = f.omega2_bar / T(4) - f.omega1_bar / three + half_b;
  f.g4 = -(g_adv - f.beta * c + f.alpha);
  f.g5 = -d_adv;
  return f;
}

/// p at which the surface family satisfies delta = 2 gamma.
template <class T>
T surface_rch_p(const T& c, SurfaceForm form) {
  const T s = c * c;
  const T K = s + T(1);
  if (form == SurfaceForm::printed) return (T(2) * s * s + s - T(4)) / (T(9) * K * K);
  return s / (T(3) * K * K);
}

}  // namespace rotwave::formulas
