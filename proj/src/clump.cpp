#include "csl/clump.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "csl/fft.hpp"

namespace csl {

double ClumpParams::lambda_tilde() const {
  return lambda * N / (std::numbers::sqrt2 * a);
}

double ClumpParams::alpha() const { return lambda_tilde() / std::sqrt(m() * lambda); }

void ClumpParams::validate() const {
  if (N < 1.0) throw std::invalid_argument("ClumpParams: N must be >= 1");
  if (M <= 0.0 || lambda <= 0.0 || a <= 0.0)
    throw std::invalid_argument("ClumpParams: M, lambda, a must be > 0");
  if (!std::isfinite(lambda_tilde()) || !std::isfinite(alpha()))
    throw std::invalid_argument("ClumpParams: derived parameters not finite");
}

ClumpParams ClumpParams::dimensionless(double N) { return {N, 1.0, 1.0, 1.0}; }
ClumpParams ClumpParams::grw(double N) {
  return {N, kNucleonMassOverHbar, 1e-16, 1e-5};
}
ClumpParams ClumpParams::adler(double N) {
  return {N, kNucleonMassOverHbar, 1e-11, 1e-5};
}

void GridDensityMatrix::validate() const {
  if (size() == 0 || dx <= 0.0)
    throw std::invalid_argument("GridDensityMatrix: empty grid or bad spacing");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("GridDensityMatrix: not Hermitian");
  if (std::fabs(trace() - 1.0) > 1e-8)
    throw std::invalid_argument("GridDensityMatrix: trace != 1");
}

GridDensityMatrix grid_from_wavefunction(double x0, double dx,
                                         const Eigen::VectorXcd& psi) {
  if (dx <= 0.0 || psi.size() == 0)
    throw std::invalid_argument("grid_from_wavefunction: bad grid");
  GridDensityMatrix g;
  g.x0 = x0;
  g.dx = dx;
  const double norm2 = psi.squaredNorm() * dx;
  const Eigen::VectorXcd p = psi / std::sqrt(norm2);
  g.rho = p * p.adjoint();
  return g;
}

double pair_decay_kernel(std::span<const double> x,
                         std::span<const double> x_prime, double a) {
  if (x.size() != x_prime.size())
    throw std::invalid_argument("pair_decay_kernel: configuration size mismatch");
  if (a <= 0.0) throw std::invalid_argument("pair_decay_kernel: a must be > 0");
  const double inv4a2 = 1.0 / (4.0 * a * a);
  double s = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d1 = x[i] - x[j];
      const double d2 = x_prime[i] - x_prime[j];
      const double d3 = x[i] - x_prime[j];
      s += std::exp(-d1 * d1 * inv4a2) + std::exp(-d2 * d2 * inv4a2) -
           2.0 * std::exp(-d3 * d3 * inv4a2);
    }
  return s;
}

double cm_offdiag_rate(double D, const ClumpParams& params) {
  params.validate();
  if (D < 0.0) throw std::invalid_argument("cm_offdiag_rate: D must be >= 0");
  const double r = D / (2.0 * params.a);
  return params.lambda * params.N * params.N * (-std::expm1(-r * r));
}

double modular_overlap_rate(double L, const ClumpParams& params) {
  return cm_offdiag_rate(L, params);
}

namespace {

// rho -> U rho U^dagger with U = exp(-i P^2 dt / 2m), applied spectrally
void kinetic_step(GridDensityMatrix& g, double m, double dt) {
  const int n = g.size();
  if (!detail::is_pow2(static_cast<std::size_t>(n)))
    throw std::invalid_argument("grid_evolve_cm: kinetic step needs power-of-two grid");
  const double dk = 2.0 * std::numbers::pi / (n * g.dx);
  std::vector<std::complex<double>> phase(n);
  for (int j = 0; j < n; ++j) {
    const int jw = (j < n / 2) ? j : j - n;  // wrapped momentum index
    const double k = dk * jw;
    phase[j] = std::exp(std::complex<double>(0.0, -k * k * dt / (2.0 * m)));
  }
  std::vector<std::complex<double>> buf(n);
  // left index: rho -> U rho
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) buf[r] = g.rho(r, c);
    detail::fft_pow2(buf, false);
    for (int r = 0; r < n; ++r) buf[r] *= phase[r];
    detail::fft_pow2(buf, true);
    for (int r = 0; r < n; ++r) g.rho(r, c) = buf[r];
  }
  // right index: rho -> rho U^dagger
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) buf[c] = g.rho(r, c);
    detail::fft_pow2(buf, false);
    for (int c = 0; c < n; ++c) buf[c] *= std::conj(phase[c]);
    detail::fft_pow2(buf, true);
    for (int c = 0; c < n; ++c) g.rho(r, c) = buf[c];
  }
}

}  // namespace

GridDensityMatrix grid_evolve_cm(const GridDensityMatrix& rho,
                                 const ClumpParams& params, double t,
                                 double dt, bool include_kinetic) {
  params.validate();
  rho.validate();
  if (dt <= 0.0 || t < 0.0)
    throw std::invalid_argument("grid_evolve_cm: need dt > 0, t >= 0");
  const double rate_scale = params.lambda * params.N * params.N;
  if (dt * rate_scale >= 0.1)
    throw std::invalid_argument("grid_evolve_cm: dt*lambda*N^2 must be < 0.1");

  const int n = rho.size();
  const long n_steps = std::max(1L, std::lround(t / dt));
  const double h = t / static_cast<double>(n_steps);

  // collapse factor over a half step; exact, diagonal in the position pair
  Eigen::MatrixXd half_factor(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double D = rho.dx * (i - j);
      half_factor(i, j) = std::exp(-0.5 * h * cm_offdiag_rate(std::fabs(D), params));
    }

  GridDensityMatrix g = rho;
  for (long k = 0; k < n_steps; ++k) {
    g.rho.array() *= half_factor.array();
    if (include_kinetic) kinetic_step(g, params.m(), h);
    g.rho.array() *= half_factor.array();
  }
  return g;
}

double modular_overlap(const GridDensityMatrix& rho, double L) {
  if (rho.dx <= 0.0) throw std::invalid_argument("modular_overlap: bad grid");
  const double steps = std::fabs(L) / rho.dx;
  const long s = std::lround(steps);
  if (std::fabs(steps - s) > 1e-9)
    throw std::invalid_argument(
        "modular_overlap: L must be an integer multiple of the grid spacing");
  const int n = rho.size();
  double sum = 0.0;
  for (int i = 0; i + s < n; ++i) sum += rho.rho(i, i + s).real();
  return sum * rho.dx;
}

}  // namespace csl
