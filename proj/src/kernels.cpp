#include "rotwave/kernels.hpp"

namespace rotwave {

const char* to_string(Exec e) { return e == Exec::serial ? "serial" : "parallel"; }

namespace kernels {

namespace {

template <class Body>
void for_each(std::size_t n, Exec exec, Body&& body) {
  const auto m = static_cast<long>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < m; ++j) body(static_cast<std::size_t>(j));
  } else {
    for (long j = 0; j < m; ++j) body(static_cast<std::size_t>(j));
  }
}

}  // namespace

void scalar_flux(const GbbmConstants& k, double eps, double mu, const double* w,
                 const double* wx, const double* wxx, double* out, std::size_t n, Exec exec) {
  const double a2 = k.quad * eps / 2.0;
  const double a3 = k.omega1 * eps * eps / 3.0;
  const double a4 = k.omega2 * eps * eps * eps / 4.0;
  const double disp = mu * k.alpha;
  const double g = eps * mu * k.gamma;
  const double d = eps * mu * (k.delta - k.gamma) / 2.0;
  for_each(n, exec, [&](std::size_t j) {
    const double v = w[j];
    out[j] = v * (k.c + v * (a2 + v * (a3 + v * a4))) + disp * wxx[j] -
             (g * v * wxx[j] + d * wx[j] * wx[j]);
  });
}

void scalar_flux_jvp(const GbbmConstants& k, double eps, double mu, const double* w,
                     const double* wx, const double* wxx, const double* v, const double* vx,
                     const double* vxx, double* out, std::size_t n, Exec exec) {
  const double a2 = k.quad * eps;
  const double a3 = k.omega1 * eps * eps;
  const double a4 = k.omega2 * eps * eps * eps;
  const double disp = mu * k.alpha;
  const double g = eps * mu * k.gamma;
  const double d = eps * mu * (k.delta - k.gamma);
  for_each(n, exec, [&](std::size_t j) {
    const double u = w[j];
    out[j] = v[j] * (k.c + u * (a2 + u * (a3 + u * a4))) + disp * vxx[j] -
             (g * (v[j] * wxx[j] + u * vxx[j]) + d * wx[j] * vx[j]);
  });
}

void rgn_forcing(const double* h, const double* eta_x, const double* hu_x, const double* q_x,
                 double omega, double eps, double mu, double* out, std::size_t n, Exec exec) {
  const double q = 2.0 / 3.0 * eps * mu;
  for_each(n, exec, [&](std::size_t j) {
    out[j] = h[j] * (eta_x[j] - 2.0 * omega * hu_x[j]) + q * q_x[j];
  });
}

void cube_times_square(const double* h, const double* ux, double* out, std::size_t n, Exec exec) {
  for_each(n, exec, [&](std::size_t j) { out[j] = h[j] * h[j] * h[j] * ux[j] * ux[j]; });
}

void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double dt, double* out, std::size_t n, Exec exec) {
  const double s = dt / 6.0;
  for_each(n, exec, [&](std::size_t j) {
    out[j] = y[j] + s * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  });
}

void axpy(double a, const double* x, double* y, std::size_t n, Exec exec) {
  for_each(n, exec, [&](std::size_t j) { y[j] += a * x[j]; });
}

}  // namespace kernels
}  // namespace rotwave
