#include "hyptm/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "hyptm/parallel.hpp"

namespace hyptm {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Real-to-complex transforms of `rows` contiguous rings of length m.
class RingTransform {
 public:
  RingTransform(std::size_t rows, std::size_t m) : rows_(rows), m_(m), h_(m / 2 + 1) {
    real_ = fftw_alloc_real(rows * m);
    spec_ = fftw_alloc_complex(rows * h_);
    const int n[] = {static_cast<int>(m)};
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_many_dft_r2c(1, n, static_cast<int>(rows), real_, nullptr, 1, static_cast<int>(m), spec_,
                                      nullptr, 1, static_cast<int>(h_), FFTW_ESTIMATE);
    backward_ = fftw_plan_many_dft_c2r(1, n, static_cast<int>(rows), spec_, nullptr, 1, static_cast<int>(h_), real_,
                                       nullptr, 1, static_cast<int>(m), FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw std::runtime_error("poisson: FFT planning failed");
  }
  ~RingTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  RingTransform(const RingTransform&) = delete;
  RingTransform& operator=(const RingTransform&) = delete;

  double* real() { return real_; }
  std::complex<double>* spectrum() { return reinterpret_cast<std::complex<double>*>(spec_); }
  std::size_t modes() const { return h_; }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t rows_, m_, h_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

double norm2(const std::vector<double>& v, std::size_t count) {
  std::vector<double> sq(count);
  for (std::size_t k = 0; k < count; ++k) sq[k] = v[k] * v[k];
  return std::sqrt(ordered_sum(sq));
}

}  // namespace

std::vector<double> apply_dirichlet_form(const Field& v) {
  const PolarGrid& g = v.grid();
  if (g.kind() != GridKind::hyperbolic_disk) throw std::invalid_argument("apply_dirichlet_form: hyperbolic grid required");
  const std::size_t n = g.n_rho();
  const std::size_t m = g.n_theta();
  const double dth = g.dtheta();
  const double v0 = v.origin_value();
  std::vector<double> out(g.size(), 0.0);
  parallel_for(n - 1, [&](std::size_t i) {
    const auto r = v.ring(i);
    const auto up = v.ring(i + 1);
    for (std::size_t j = 0; j < m; ++j) {
      const double below = i == 0 ? v0 : v.ring(i - 1)[j];
      double s = dth * (g.edge_coef(i) * (r[j] - below) - g.edge_coef(i + 1) * (up[j] - r[j]));
      if (m > 1) {
        const double next = r[j + 1 == m ? 0 : j + 1];
        const double prev = r[j == 0 ? m - 1 : j - 1];
        s += g.ring_coef(i) / dth * (2.0 * r[j] - next - prev);
      }
      out[i * m + j] = s;
    }
  });
  return out;
}

PoissonSolution solve_dirichlet_form(const GridPtr& grid, const std::vector<double>& load, double tol) {
  const PolarGrid& g = *grid;
  if (g.kind() != GridKind::hyperbolic_disk) throw std::invalid_argument("poisson: hyperbolic grid required");
  if (load.size() != g.size()) throw std::invalid_argument("poisson: load size does not match the grid");
  const std::size_t n = g.n_rho();
  const std::size_t m = g.n_theta();
  const std::size_t rows = n - 1;
  if (rows == 0) return {Field(grid), 0.0, true};

  const double dth = g.dtheta();
  RingTransform fft(rows, m);
  std::copy(load.begin(), load.begin() + static_cast<std::ptrdiff_t>(rows * m), fft.real());
  fft.forward();
  const std::size_t h = fft.modes();
  std::complex<double>* spec = fft.spectrum();

  parallel_for(h, [&](std::size_t mode) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(mode) / static_cast<double>(m));
    const double lambda = 4.0 * s * s;
    std::vector<double> cprime(rows);
    std::vector<std::complex<double>> dprime(rows);
    // Thomas algorithm; sub- and super-diagonal entries are -edge_coef(i+1).
    for (std::size_t i = 0; i < rows; ++i) {
      double diag = g.edge_coef(i + 1) + g.ring_coef(i) / (dth * dth) * lambda;
      if (i > 0 || mode != 0) diag += g.edge_coef(i);
      const std::complex<double> rhs = spec[i * h + mode] / dth;
      const double lower = i > 0 ? -g.edge_coef(i) : 0.0;
      const double denom = diag - (i > 0 ? lower * cprime[i - 1] : 0.0);
      cprime[i] = i + 1 < rows ? -g.edge_coef(i + 1) / denom : 0.0;
      dprime[i] = (rhs - (i > 0 ? lower * dprime[i - 1] : 0.0)) / denom;
    }
    for (std::size_t i = rows; i-- > 0;) {
      if (i + 1 < rows) dprime[i] -= cprime[i] * dprime[i + 1];
      spec[i * h + mode] = dprime[i];
    }
  });

  fft.backward();
  std::vector<double> values(g.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < rows * m; ++k) values[k] = fft.real()[k] * scale;

  PoissonSolution out{Field(grid, std::move(values)), 0.0, true};
  std::vector<double> res = apply_dirichlet_form(out.solution);
  for (std::size_t k = 0; k < rows * m; ++k) res[k] -= load[k];
  const double b = norm2(load, rows * m);
  out.relative_residual = b > 0.0 ? norm2(res, rows * m) / b : norm2(res, rows * m);
  out.converged = out.relative_residual <= tol;
  return out;
}

PoissonSolution solve_poisson_density(const Field& density, double tol) {
  const PolarGrid& g = density.grid();
  std::vector<double> load(g.size(), 0.0);
  for (std::size_t i = 0; i + 1 < g.n_rho(); ++i) {
    const auto r = density.ring(i);
    for (std::size_t j = 0; j < g.n_theta(); ++j) load[i * g.n_theta() + j] = g.weight(i) * r[j];
  }
  return solve_dirichlet_form(density.grid_ptr(), load, tol);
}

}  // namespace hyptm
