#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rotwave {

enum class Backend { fourier, fd4 };

const char* to_string(Backend b);
Backend backend_from_string(const std::string& s);

/// Periodic grid x_j = -L/2 + j*L/n, j = 0..n-1.
struct GridSpec {
  std::size_t n = 512;
  double length = 64.0;
  Backend backend = Backend::fourier;
  bool dealias = true;

  double dx() const { return length / static_cast<double>(n); }
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

/// Immutable grid with cached FFT plans. Shared between fields.
class Grid {
 public:
  using cplx = std::complex<double>;

  static std::shared_ptr<const Grid> make(const GridSpec& spec);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const GridSpec& spec() const { return spec_; }
  std::size_t n() const { return spec_.n; }
  std::size_t n_modes() const { return spec_.n / 2 + 1; }
  double dx() const { return spec_.dx(); }
  double length() const { return spec_.length; }
  double x(std::size_t j) const { return -0.5 * spec_.length + static_cast<double>(j) * dx(); }

  /// Angular wavenumber of half-spectrum index j (0..n/2).
  double k(std::size_t j) const { return k_[j]; }
  /// True for modes kept by the 2/3 rule.
  bool resolved(std::size_t j) const { return j < keep_; }
  std::size_t largest_resolved() const { return keep_ - 1; }

  /// Unnormalized forward transform (n reals -> n/2+1 modes).
  void forward(const double* in, cplx* out) const;
  /// Normalized inverse transform; `in` is clobbered.
  void inverse(cplx* in, double* out) const;

 private:
  explicit Grid(const GridSpec& spec);
  GridSpec spec_;
  std::vector<double> k_;
  std::size_t keep_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Real samples on a grid. Value semantics; the grid is shared.
class Field {
 public:
  Field() = default;
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<double> values);

  static Field from_function(GridPtr grid, const std::function<double(double)>& f);
  static Field constant(GridPtr grid, double v);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool finite() const;
  double max_abs() const;
  double min() const;
  double max() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(const Field& o);
  Field& operator*=(double a);
  /// this += a * o
  Field& axpy(double a, const Field& o);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, const Field& b);
Field operator*(double a, Field f);
Field operator*(Field f, double a);
Field operator-(Field a);

/// Throws DomainError unless both fields live on equal grids.
void require_same_grid(const Field& a, const Field& b, const char* where);

/// d^order f / dx^order, order in {1, 2, 3}.
Field deriv(const Field& f, int order);

/// Solves (a - b d_xx) g = rhs.
Field helmholtz_solve(double a, double b, const Field& rhs);

/// Discrete H^s norm with multiplier (1 + k^2)^(s/2).
double sobolev_norm(const Field& f, double s);

/// Rectangle-rule integral over one period.
double integrate_dx(const Field& f);

/// Discrete L2 inner product sum f_j g_j dx.
double inner(const Field& f, const Field& g);

/// Applies the 2/3-rule mask (no-op for the fd4 backend).
Field dealias(const Field& f);

/// Multiplies the spectrum by sym(k) for each half-spectrum mode. The
/// symbol is given the index so callers can special-case the Nyquist mode.
Field apply_symbol(const Field& f,
                   const std::function<std::complex<double>(double k, std::size_t j)>& sym);

}  // namespace rotwave
