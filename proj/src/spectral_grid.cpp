#include "rotwave/spectral_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Symbol of -d_xx for the fourth-order centered stencil.
double fd4_k2(double k, double dx) {
  const double t = k * dx;
  return (30.0 - 32.0 * std::cos(t) + 2.0 * std::cos(2.0 * t)) / (12.0 * dx * dx);
}

Field deriv_fd4(const Field& f, int order) {
  const std::size_t n = f.size();
  const double h = f.grid().dx();
  Field out(f.grid_ptr());
  const double* v = f.data();
  auto at = [&](std::ptrdiff_t i) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return v[((i % m) + m) % m];
  };
  for (std::size_t j = 0; j < n; ++j) {
    const auto i = static_cast<std::ptrdiff_t>(j);
    double d = 0.0;
    if (order == 1) {
      d = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    } else if (order == 2) {
      d = (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) - at(i - 2)) /
          (12.0 * h * h);
    } else {
      d = (-at(i + 3) + 8.0 * at(i + 2) - 13.0 * at(i + 1) + 13.0 * at(i - 1) -
           8.0 * at(i - 2) + at(i - 3)) /
          (8.0 * h * h * h);
    }
    out[j] = d;
  }
  return out;
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::fourier ? "fourier" : "fd4"; }

Backend backend_from_string(const std::string& s) {
  if (s == "fourier") return Backend::fourier;
  if (s == "fd4") return Backend::fd4;
  throw DomainError("unknown derivative backend '" + s + "'");
}

void GridSpec::validate() const {
  if (n < 32 || !is_pow2(n)) throw DomainError("grid n must be a power of two >= 32");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be > 0");
}

std::shared_ptr<const Grid> Grid::make(const GridSpec& spec) {
  spec.validate();
  return std::shared_ptr<const Grid>(new Grid(spec));
}

Grid::Grid(const GridSpec& spec) : spec_(spec), k_(spec.n / 2 + 1) {
  const double base = 2.0 * std::numbers::pi / spec_.length;
  for (std::size_t j = 0; j < k_.size(); ++j) k_[j] = base * static_cast<double>(j);
  // keep |j| < n/3
  keep_ = spec_.n / 3 + (spec_.n % 3 != 0 ? 1 : 0);

  std::vector<double> r(spec_.n);
  std::vector<cplx> c(n_modes());
  auto* cr = reinterpret_cast<fftw_complex*>(c.data());
  const int n = static_cast<int>(spec_.n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_r2c_ = fftw_plan_dft_r2c_1d(n, r.data(), cr, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_c2r_ = fftw_plan_dft_c2r_1d(n, cr, r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_r2c_ || !plan_c2r_) throw std::runtime_error("FFTW planning failed");
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

void Grid::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Grid::inverse(cplx* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_), reinterpret_cast<fftw_complex*>(in),
                       out);
  const double s = 1.0 / static_cast<double>(spec_.n);
  for (std::size_t j = 0; j < spec_.n; ++j) out[j] *= s;
}

// ---------------------------------------------------------------- Field

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->n(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->n()) throw DomainError("field size does not match grid");
}

Field Field::from_function(GridPtr grid, const std::function<double(double)>& f) {
  Field out(grid);
  for (std::size_t j = 0; j < grid->n(); ++j) out[j] = f(grid->x(j));
  return out;
}

Field Field::constant(GridPtr grid, double v) {
  Field out(std::move(grid));
  std::fill(out.values_.begin(), out.values_.end(), v);
  return out;
}

bool Field::finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o, "operator+=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o, "operator-=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
  return *this;
}

Field& Field::operator*=(const Field& o) {
  require_same_grid(*this, o, "operator*=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= o.values_[j];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& o) {
  require_same_grid(*this, o, "axpy");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += a * o.values_[j];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, const Field& b) { return a *= b; }
Field operator*(double a, Field f) { return f *= a; }
Field operator*(Field f, double a) { return f *= a; }
Field operator-(Field a) { return a *= -1.0; }

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (a.empty() || b.empty()) throw DomainError(std::string(where) + ": empty field");
  if (a.grid_ptr() != b.grid_ptr() && !(a.grid().spec() == b.grid().spec()))
    throw DomainError(std::string(where) + ": fields live on different grids");
}

// ---------------------------------------------------------------- operators

Field apply_symbol(const Field& f,
                   const std::function<std::complex<double>(double, std::size_t)>& sym) {
  const Grid& g = f.grid();
  std::vector<cplx> hat(g.n_modes());
  g.forward(f.data(), hat.data());
  for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= sym(g.k(j), j);
  Field out(f.grid_ptr());
  g.inverse(hat.data(), out.data());
  return out;
}

Field deriv(const Field& f, int order) {
  if (order < 1 || order > 3) throw DomainError("derivative order must be 1, 2 or 3");
  if (f.grid().spec().backend == Backend::fd4) return deriv_fd4(f, order);
  const std::size_t nyq = f.grid().n() / 2;
  return apply_symbol(f, [order, nyq](double k, std::size_t j) -> cplx {
    if (j == nyq && order % 2 == 1) return 0.0;
    switch (order) {
      case 1: return {0.0, k};
      case 2: return -k * k;
      default: return {0.0, -k * k * k};
    }
  });
}

Field helmholtz_solve(double a, double b, const Field& rhs) {
  if (!(a > 0.0)) throw DomainError("helmholtz_solve requires a > 0");
  const Grid& g = rhs.grid();
  const bool fd4 = g.spec().backend == Backend::fd4;
  const double dx = g.dx();
  std::vector<cplx> hat(g.n_modes());
  g.forward(rhs.data(), hat.data());
  for (std::size_t j = 0; j < hat.size(); ++j) {
    const double k = g.k(j);
    const double k2 = fd4 ? fd4_k2(k, dx) : k * k;
    const double symbol = a + b * k2;
    if (!(symbol > 0.0))
      throw PositivityError("helmholtz symbol " + std::to_string(symbol) +
                            " is not positive at k = " + std::to_string(k));
    hat[j] /= symbol;
  }
  Field out(rhs.grid_ptr());
  g.inverse(hat.data(), out.data());
  return out;
}

double sobolev_norm(const Field& f, double s) {
  if (!(s >= 0.0)) throw DomainError("Sobolev index must be >= 0");
  const Grid& g = f.grid();
  std::vector<cplx> hat(g.n_modes());
  g.forward(f.data(), hat.data());
  const std::size_t nyq = g.n() / 2;
  double acc = 0.0;
  for (std::size_t j = 0; j < hat.size(); ++j) {
    const double w = (j == 0 || j == nyq) ? 1.0 : 2.0;
    const double k = g.k(j);
    acc += w * std::pow(1.0 + k * k, s) * std::norm(hat[j]);
  }
  const double n = static_cast<double>(g.n());
  return std::sqrt(acc * g.length() / (n * n));
}

double integrate_dx(const Field& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc * f.grid().dx();
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f, g, "inner");
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * g[j];
  return acc * f.grid().dx();
}

Field dealias(const Field& f) {
  const Grid& g = f.grid();
  if (g.spec().backend == Backend::fd4) return f;
  return apply_symbol(f, [&g](double, std::size_t j) -> cplx { return g.resolved(j) ? 1.0 : 0.0; });
}

}  // namespace rotwave
