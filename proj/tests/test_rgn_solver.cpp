#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotwave/consistency.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/rgn_solver.hpp"

using namespace rotwave;
using std::numbers::pi;

namespace {

GridPtr ring(std::size_t n = 128, Backend b = Backend::fourier) { return Grid::make({n, 2.0 * pi, b, true}); }

RgnSpec rgn_spec(double eps, double mu, double omega, GridSpec grid = {}) {
  RgnSpec s;
  s.params.epsilon = eps;
  s.params.mu = mu;
  s.params.omega = omega;
  s.grid = grid;
  return s;
}

double sech2(double x) {
  const double s = 1.0 / std::cosh(x / 2.0);
  return s * s;
}

}  // namespace

TEST_CASE("elliptic operator") {
  const auto g = ring();
  const Field h = Field::from_function(g, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  const Field f = Field::from_function(g, [](double x) { return std::cos(2 * x) + 0.5 * std::sin(3 * x); });
  const Field q = Field::from_function(g, [](double x) { return std::exp(std::sin(x)); });
  const double mu = 0.04;

  SUBCASE("constant depth eigenfunction") {
    const Field one = Field::constant(g, 1.0);
    const Field s = Field::from_function(g, [](double x) { return std::sin(3 * x); });
    CHECK((apply_T(one, mu, s) - (1.0 + 3.0 * mu) * s).max_abs() < 1e-12);
    CHECK((invert_T(one, mu, s, 1e-13, 50) - (1.0 / (1.0 + 3.0 * mu)) * s).max_abs() < 1e-12);
  }
  SUBCASE("no dispersion") { CHECK((apply_T(h, 0.0, f) - h * f).max_abs() < 1e-14); }
  SUBCASE("symmetric") {
    CHECK(std::abs(inner(q, apply_T(h, mu, f)) - inner(apply_T(h, mu, q), f)) < 1e-10);
  }
  SUBCASE("quadratic form two ways") {
    const Field fx = deriv(f, 1);
    const double direct = integrate_dx(h * f * f + (mu / 3.0) * h * h * h * fx * fx);
    CHECK(inner(apply_T(h, mu, f), f) == doctest::Approx(direct).epsilon(1e-9));
  }
  SUBCASE("manufactured solution") {
    EllipticStats st;
    const Field rhs = apply_T(h, mu, q);
    const Field g2 = invert_T(h, mu, rhs, 1e-12, 200, &st);
    CHECK((g2 - q).max_abs() / q.max_abs() < 1e-9);
    CHECK(st.iterations <= 200);
    CHECK((apply_T(h, mu, g2) - rhs).max_abs() < 1e-10 * rhs.max_abs());
  }
  SUBCASE("errors") {
    const Field bad = Field::from_function(g, [](double x) { return std::sin(x); });
    CHECK_THROWS_AS(apply_T(bad, mu, f), PositivityError);
    const Field rough = Field::from_function(g, [](double x) { return 1.0 + 0.95 * std::sin(x); });
    CHECK_THROWS_AS(invert_T(rough, 5.0, q, 1e-14, 2), EllipticDivergence);
  }
}

TEST_CASE("Q operator") {
  const auto g = ring();
  const Field one = Field::constant(g, 1.0);
  CHECK(q_of_h(one, Field::constant(g, 2.0)).max_abs() < 1e-14);
  const Field s = Field::from_function(g, [](double x) { return std::sin(x); });
  const Field expect = Field::from_function(g, [](double x) { return -(2.0 / 3.0) * std::sin(2 * x); });
  CHECK((q_of_h(one, s) - expect).max_abs() < 1e-12);

  auto hf = [](double x) { return 1.0 + 0.2 * std::cos(x); };
  auto uf = [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); };
  const auto gf = ring(1024), gd = ring(1024, Backend::fd4);
  const Field a = q_of_h(Field::from_function(gf, hf), Field::from_function(gf, uf));
  const Field b = q_of_h(Field::from_function(gd, hf), Field::from_function(gd, uf));
  CHECK((a - Field(gf, b.vec())).max_abs() < 1e-7);
}

TEST_CASE("trivial states") {
  const RgnModel m(rgn_spec(0.1, 0.01, 0.5, {64, 2.0 * pi}));
  const WaveState z{Field(m.grid()), Field(m.grid()), 0.0};
  auto [et, ut] = m.rhs(z);
  CHECK(et.max_abs() == 0.0);
  CHECK(ut.max_abs() == 0.0);
  const WaveState c{Field::constant(m.grid(), 0.4), Field(m.grid()), 0.0};
  auto [et2, ut2] = m.rhs(c);
  CHECK(et2.max_abs() < 1e-14);
  CHECK(ut2.max_abs() < 1e-14);
  CHECK(m.energy(z) == 0.0);
  const MonitorReport r = m.monitor(z);
  CHECK(r.min_depth == 1.0);
  CHECK(r.min_rotation == 1.0);
  CHECK_FALSE(r.breached());
  const RgnRun run = m.integrate(z, 5.0, 0.04, 1.0);
  CHECK(run.completed());
  for (const auto& s : run.states) CHECK(s.eta.max_abs() + s.u.max_abs() == 0.0);
}

TEST_CASE("energy and norms of single modes") {
  const auto spec = rgn_spec(0.0, 0.09, 0.0, {64, 2.0 * pi});
  const RgnModel m(spec);
  const Field s = Field::from_function(m.grid(), [](double x) { return std::sin(x); });
  const Field z(m.grid());
  CHECK(m.energy({s, z, 0.0}) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(m.energy({z, s, 0.0}) == doctest::Approx(pi * 1.03).epsilon(1e-12));
  CHECK(xs_norm(s, z, 0.09, 0.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("monitor flags a depth breach") {
  const RgnModel m(rgn_spec(0.1, 0.01, 0.0));
  const Field eta = Field::from_function(m.grid(), [](double x) { return -9.6 * std::exp(-std::pow(x / 3.0, 8)); });
  const MonitorReport r = m.monitor({eta, Field(m.grid()), 0.0});
  CHECK(r.min_depth < 0.05);
  CHECK(r.depth_breach);
  const RgnRun run = m.integrate({eta, Field(m.grid()), 0.0}, 1.0, 0.01, 0.1);
  CHECK(run.termination == Termination::initial_positivity);
  CHECK(run.end_time == 0.0);
  CHECK_FALSE(run.cause.empty());
}

TEST_CASE("linear dispersion relation") {
  for (double omega : {0.0, 0.7}) {
    const double mu = 0.05;
    const RgnModel m(rgn_spec(0.0, mu, omega, {64, 2.0 * pi}));
    for (int k : {1, 2, 4}) {
      const double a = mu * k * k / 3.0;
      const double v = (-omega + std::sqrt(omega * omega + 1.0 + a)) / (1.0 + a);
      const double period = 2.0 * pi / (k * v);
      const Field u = Field::from_function(m.grid(), [k](double x) { return std::sin(k * x); });
      WaveState s{(1.0 / v) * u, u, 0.0};
      const int steps = 1000;
      for (int i = 0; i < steps; ++i) s = m.step_rk4(s, period / steps);
      CHECK((s.u - u).max_abs() < 1e-6);
      CHECK((s.eta - (1.0 / v) * u).max_abs() < 1e-6);
    }
  }
}

TEST_CASE("nonlinear run: conservation and accuracy") {
  const auto spec = rgn_spec(0.1, 0.04, 0.5);
  const RgnModel m(spec);
  const Field eta0 = Field::from_function(m.grid(), sech2);
  const WaveState s0{eta0, Field(m.grid(), eta0.vec()), 0.0};

  SUBCASE("mass and energy") {
    const RgnRun run = m.integrate(s0, 2.0, 0.01, 0.5);
    REQUIRE(run.completed());
    const double m0 = integrate_dx(eta0);
    for (std::size_t i = 0; i < run.states.size(); ++i) {
      CHECK(std::abs(integrate_dx(run.states[i].eta) - m0) < 1e-10 * std::abs(m0));
      CHECK(std::abs(run.energy[i] - run.energy[0]) < 1e-8 * run.energy[0]);
    }
  }
  SUBCASE("fourth order") {
    auto end = [&](double dt) { return m.integrate(s0, 1.0, dt, 0.0).states.back().u; };
    const Field a = end(0.04), b = end(0.02), c = end(0.01);
    const double order = std::log2((a - b).max_abs() / (b - c).max_abs());
    CHECK(order >= 3.7);
    CHECK(order <= 4.3);
  }
  SUBCASE("own residual vanishes") {
    auto [et, ut] = m.rhs(s0);
    const ResidualPair r = rgn_residual(s0.eta, et, s0.u, ut, spec.params);
    const double mu2 = spec.params.mu * spec.params.mu;
    CHECK(mu2 * r.r1_norm < 1e-12);
    CHECK(mu2 * r.r2_norm < 10.0 * spec.elliptic_tol * sobolev_norm(ut, 1.0));
  }
  SUBCASE("serial and parallel kernels agree") {
    RgnSpec p = spec;
    p.exec = Exec::parallel;
    const RgnModel mp(p);
    const WaveState a = m.integrate(s0, 0.5, 0.01, 0.0).states.back();
    const WaveState b = mp.integrate(s0, 0.5, 0.01, 0.0).states.back();
    CHECK((a.u - b.u).max_abs() < 1e-13);
    CHECK((a.eta - b.eta).max_abs() < 1e-13);
  }
  SUBCASE("cfl") { CHECK_THROWS_AS(m.step_rk4(s0, 1.0), CflViolation); }
}
