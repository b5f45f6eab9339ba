#pragma once
// Pointwise kernels used by the solvers. Each kernel runs either as a plain
// loop (the reference) or as an OpenMP parallel loop; both produce identical
// results because no kernel reduces across points.

#include <cstddef>

#include "rotwave/coefficients.hpp"

namespace rotwave {

enum class Exec { serial, parallel };

const char* to_string(Exec e);

namespace kernels {

/// Flux of the conservative scalar equation w_t + (1 + beta mu d_xx)^{-1} d_x flux = 0:
///   c w + quad eps w^2/2 + omega1 eps^2 w^3/3 + omega2 eps^3 w^4/4 + mu alpha w_xx
///   - eps mu (gamma w w_xx + (delta - gamma)/2 w_x^2)
void scalar_flux(const GbbmConstants& k, double eps, double mu, const double* w,
                 const double* wx, const double* wxx, double* out, std::size_t n, Exec exec);

/// Linearization of scalar_flux at w in direction v.
void scalar_flux_jvp(const GbbmConstants& k, double eps, double mu, const double* w,
                     const double* wx, const double* wxx, const double* v, const double* vx,
                     const double* vxx, double* out, std::size_t n, Exec exec);

/// out = h * eta_x - 2 omega h * (hu)_x + (2/3) eps mu * q_x
void rgn_forcing(const double* h, const double* eta_x, const double* hu_x, const double* q_x,
                 double omega, double eps, double mu, double* out, std::size_t n, Exec exec);

/// out = h^3 * ux^2
void cube_times_square(const double* h, const double* ux, double* out, std::size_t n, Exec exec);

/// out = y + dt/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double dt, double* out, std::size_t n, Exec exec);

/// y += a x
void axpy(double a, const double* x, double* y, std::size_t n, Exec exec);

}  // namespace kernels
}  // namespace rotwave
