#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotwave/consistency.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/reconstruct.hpp"

using namespace rotwave;
using std::numbers::pi;

namespace {

double sech2(double x) {
  const double s = 1.0 / std::cosh(x / 2.0);
  return s * s;
}

PhysicalParams regime(double eps, double mu, double omega) {
  PhysicalParams p;
  p.epsilon = eps;
  p.mu = mu;
  p.omega = omega;
  return p;
}

GridPtr line_grid(std::size_t n = 256) { return Grid::make({n, 64.0}); }

}  // namespace

TEST_CASE("maps reduce to the linear relation") {
  const auto g = line_grid();
  const Field u = Field::from_function(g, sech2);
  const Field ut = deriv(u, 1);
  for (double omega : {0.0, 0.6}) {
    const auto vel = gbbm_velocity_family(omega, -0.1, 0.05);
    const ReconstructionSpec rv{vel, regime(0.0, 0.0, omega)};
    CHECK((eta_from_u(u, ut, rv) - (1.0 / vel.c) * u).max_abs() < 1e-15);
    CHECK((theta_transform(u, rv) - u).max_abs() == 0.0);
    CHECK(eta_from_u(Field(g), Field(g), rv).max_abs() == 0.0);
    const auto sur = surface_family(omega, 0.1);
    const ReconstructionSpec rs{sur, regime(0.0, 0.0, omega)};
    CHECK((u_from_eta(u, ut, rs) - sur.c * u).max_abs() < 1e-15);
    CHECK(u_from_eta(Field(g), Field(g), rs).max_abs() == 0.0);
  }
}

TEST_CASE("eta map equals a term-by-term sum") {
  const auto g = line_grid();
  const double eps = 0.01, mu = 0.01;
  for (double omega : {0.0, 0.4}) {
    const auto set = gbbm_velocity_family(omega, -0.2, 0.0);
    const ReconstructionSpec rs{set, regime(eps, mu, omega)};
    const Field u = 0.5 * Field::from_function(g, sech2);
    const Field ut = Field::from_function(g, [](double x) { return std::sin(x / 4.0) * sech2(x); });
    const double c = set.c, K = c * c + 1.0;
    const Field ux = deriv(u, 1), uxx = deriv(u, 2), uxt = deriv(ut, 1);
    Field expect(g);
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double v = u[j];
      double sum = 0.0;
      sum += v / c;
      sum -= eps * set.h_star * v * v;
      sum += eps * eps * set.A3 * v * v * v;
      sum += eps * eps * eps * (2.0 * omega * set.A3 + set.omega2 / 4.0) * v * v * v * v;
      sum += mu / (3.0 * K) * uxt[j];
      sum -= eps * mu * set.A1 * v * uxx[j];
      sum -= eps * mu * set.A2 * ux[j] * ux[j];
      expect[j] = sum;
    }
    CHECK((eta_from_u(u, ut, rs) - expect).max_abs() < 1e-12);
  }
}

TEST_CASE("depth transform") {
  const auto g = Grid::make({64, 2.0 * pi});
  const Field s = Field::from_function(g, [](double x) { return std::sin(3 * x); });
  const auto set = gbbm_velocity_family(0.2, 0.0, lambda_from_theta(0.9));
  SUBCASE("linear part is a multiplier") {
    const ReconstructionSpec rs{set, regime(0.0, 0.04, 0.2)};
    CHECK((theta_transform(s, rs) - (1.0 - 0.04 * set.lambda * 9.0) * s).max_abs() < 1e-12);
  }
  SUBCASE("conventions coincide at eps = mu = 1") {
    const ReconstructionSpec a{set, regime(1.0, 1.0, 0.2), ThetaConvention::scaled};
    const ReconstructionSpec b{set, regime(1.0, 1.0, 0.2), ThetaConvention::unscaled};
    CHECK((theta_transform(s, a) - theta_transform(s, b)).max_abs() == 0.0);
  }
  SUBCASE("identity at theta = 1/sqrt(3)") {
    const auto s0 = gbbm_velocity_family(0.2, 0.0, lambda_from_theta(1.0 / std::sqrt(3.0)));
    const ReconstructionSpec rs{s0, regime(0.1, 0.04, 0.2)};
    CHECK((theta_transform(s, rs) - s).max_abs() < 1e-15);
  }
  SUBCASE("rates match finite differences of the transform") {
    const ReconstructionSpec rs{set, regime(0.3, 0.05, 0.2)};
    const Field w = 1.0 * s;
    const Field wt = Field::from_function(g, [](double x) { return std::cos(2 * x); });
    const double h = 1e-5;
    const Field fd = (1.0 / (2 * h)) * (theta_transform(w + h * wt, rs) - theta_transform(w - h * wt, rs));
    CHECK((theta_transform_rate(w, wt, rs) - fd).max_abs() < 1e-8);
  }
}

TEST_CASE("rates of the maps match finite differences along a path") {
  const auto g = line_grid();
  const Field u = Field::from_function(g, sech2);
  const Field ut = Field::from_function(g, [](double x) { return -0.3 * std::tanh(x) * sech2(x); });
  const Field utt = Field::from_function(g, [](double x) { return 0.1 * sech2(x - 1.0); });
  const double h = 1e-4;
  auto at = [&](double t) { return u + t * ut + 0.5 * t * t * utt; };
  auto rate = [&](double t) { return ut + t * utt; };
  const auto vel = gbbm_velocity_family(0.5, -0.1, 0.0);
  const ReconstructionSpec rv{vel, regime(0.2, 0.04, 0.5)};
  const Field fd = (1.0 / (2 * h)) * (eta_from_u(at(h), rate(h), rv) - eta_from_u(at(-h), rate(-h), rv));
  CHECK((eta_rate_from_u(u, ut, utt, rv) - fd).max_abs() < 1e-7);
  const auto sur = surface_family(0.5, 0.05);
  const ReconstructionSpec rs{sur, regime(0.2, 0.04, 0.5)};
  const Field fs = (1.0 / (2 * h)) * (u_from_eta(at(h), rate(h), rs) - u_from_eta(at(-h), rate(-h), rs));
  CHECK((u_rate_from_eta(u, ut, utt, rs) - fs).max_abs() < 1e-7);
}

TEST_CASE("surface round trip error shrinks at least linearly") {
  const auto g = line_grid();
  const Field eta = Field::from_function(g, sech2);
  const Field eta_t = -1.0 * deriv(eta, 1);
  double prev = 0.0;
  for (double e : {0.04, 0.02, 0.01}) {
    const auto sur = surface_family(0.3, 0.05);
    const auto vel = gbbm_velocity_family(0.3, 0.05, 0.0);
    const ReconstructionSpec rs{sur, regime(e, e, 0.3)}, rv{vel, regime(e, e, 0.3)};
    const Field u = u_from_eta(eta, eta_t, rs);
    const Field back = eta_from_u(u, sur.c * eta_t, rv);
    const double err = (back - eta).max_abs();
    if (prev > 0.0) CHECK(prev / err > 1.9);
    prev = err;
  }
}

TEST_CASE("maps reject wrong inputs") {
  const auto g = line_grid(), g2 = line_grid(128);
  const Field a(g), b(g2);
  const ReconstructionSpec rv{gbbm_velocity_family(0.1, 0.0, 0.0), regime(0.1, 0.01, 0.1)};
  const ReconstructionSpec rs{surface_family(0.1, 0.0), regime(0.1, 0.01, 0.1)};
  CHECK_THROWS_AS(eta_from_u(a, b, rv), DomainError);
  CHECK_THROWS_AS(u_from_eta(a, b, rs), DomainError);
  CHECK_THROWS_AS(eta_from_u(a, a, rs), DomainError);
  CHECK_THROWS_AS(u_from_eta(a, a, rv), DomainError);
}

TEST_CASE("residual evaluator") {
  const auto g = line_grid();
  const Field z(g);
  const ResidualPair r = rgn_residual(z, z, z, z, regime(0.1, 0.01, 0.5));
  CHECK(r.r1_norm == 0.0);
  CHECK(r.r2_norm == 0.0);
  CHECK_THROWS_AS(rgn_residual(z, z, z, z, regime(0.1, 0.0, 0.5)), DomainError);

  // linear in a forcing added to eta_t
  const Field eta = Field::from_function(g, sech2);
  const Field forcing = Field::from_function(g, [](double x) { return 1e-6 * sech2(x + 3.0); });
  const auto p = regime(0.1, 0.01, 0.5);
  const Field u = eta, ut = -1.0 * deriv(eta, 1);
  const Field et = -1.0 * deriv((Field::constant(g, 1.0) + 0.1 * eta) * u, 1);
  const double r1 = rgn_residual(eta, et + forcing, u, ut, p).r1_norm;
  const double r2 = rgn_residual(eta, et + 2.0 * forcing, u, ut, p).r1_norm;
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("log-log fit") {
  std::vector<double> x{1e-4, 1e-3, 1e-2}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  const LogFit f = fit_loglog(x, y);
  CHECK(f.defined);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared > 0.999999);
  CHECK_FALSE(fit_loglog({1e-3, 1e-3}, {1.0, 2.0}).defined);
  CHECK_FALSE(fit_loglog({1e-3}, {1.0}).defined);
}

TEST_CASE("regime scan") {
  ScanSpec spec;
  spec.omega = 0.5;
  spec.grid = {256, 64.0};
  spec.probe_scaled_times = {0.1, 0.3};
  SUBCASE("single point has no slope") {
    spec.mu_list = {1e-2};
    const ScanReport rep = regime_scan(sech2, spec);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].ok);
    CHECK_FALSE(rep.fit.defined);
  }
  SUBCASE("refinement invariance") {
    spec.mu_list = {4e-3};
    spec.grid.n = 512;
    const ScanReport a = regime_scan(sech2, spec);
    spec.grid.n = 1024;
    const ScanReport b = regime_scan(sech2, spec);
    for (std::size_t i = 0; i < a.rows[0].probes.size(); ++i) {
      const auto& pa = a.rows[0].probes[i];
      const auto& pb = b.rows[0].probes[i];
      CHECK(std::abs(pa.r1_norm - pb.r1_norm) < 1e-6 * pb.r1_norm);
      CHECK(std::abs(pa.r2_norm - pb.r2_norm) < 1e-6 * pb.r2_norm);
    }
  }
}

// The residual of a consistent family stays bounded (after division by
// mu^2) as mu -> 0 with eps = sqrt(mu); an inconsistent one grows.
TEST_CASE("family consistency") {
  auto growth = [](ScanSpec spec) {
    spec.grid = {512, 64.0};
    spec.mu_list = {1e-2, 1e-3};
    spec.probe_scaled_times = {0.1, 0.3};
    const ScanReport rep = regime_scan(sech2, spec);
    REQUIRE(rep.rows.size() == 2);
    REQUIRE(rep.rows[0].ok);
    REQUIRE(rep.rows[1].ok);
    return rep.rows[1].sup_normalized / rep.rows[0].sup_normalized;
  };
  SUBCASE("consistent families stay bounded") {
    for (double omega : {0.0, 0.5}) {
      ScanSpec s;
      s.omega = omega;
      s.family = Family::rch;
      CHECK(growth(s) < 2.0);
      s.family = Family::velocity;
      s.p = -0.3;
      s.lambda = 0.1;
      CHECK(growth(s) < 2.0);
      s.family = Family::surface;
      s.p = -0.05;
      s.surface_form = SurfaceForm::consistent;
      CHECK(growth(s) < 2.0);
      s.family = Family::surface_rch;
      CHECK(growth(s) < 2.0);
    }
  }
  SUBCASE("the unscaled depth transform is not consistent") {
    ScanSpec s;
    s.omega = 0.5;
    s.theta = ThetaConvention::unscaled;
    CHECK(growth(s) > 5.0);
  }
  SUBCASE("the printed surface coefficients are not consistent") {
    ScanSpec s;
    s.omega = 0.0;
    s.family = Family::surface;
    s.p = -0.05;
    // an O(eps mu) defect: the normalized residual grows like mu^(-1/2)
    CHECK(growth(s) > 2.5);
  }
}
