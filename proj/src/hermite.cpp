#include "csl/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "csl/fft.hpp"

namespace csl {

void HermiteBasis::validate() const {
  if (a <= 0.0) throw std::invalid_argument("HermiteBasis: a must be > 0");
  if (n_max < 0) throw std::invalid_argument("HermiteBasis: n_max must be >= 0");
}

std::vector<double> hermite_u_all(int n_max, double x, double a) {
  if (n_max < 0) throw std::invalid_argument("hermite_u_all: n must be >= 0");
  if (a <= 0.0) throw std::invalid_argument("hermite_u_all: a must be > 0");
  const double xi = x / a;
  std::vector<double> u(n_max + 1);
  u[0] = std::pow(std::numbers::pi, -0.25) / std::sqrt(a) *
         std::exp(-0.5 * xi * xi);
  if (n_max == 0) return u;
  u[1] = std::numbers::sqrt2 * xi * u[0];
  for (int n = 1; n < n_max; ++n)
    u[n + 1] = std::sqrt(2.0 / (n + 1)) * xi * u[n] -
               std::sqrt(static_cast<double>(n) / (n + 1)) * u[n - 1];
  return u;
}

double hermite_u(int n, double x, double a) { return hermite_u_all(n, x, a)[n]; }

double Z_n(int n, double X, double a) {
  if (n < 0) throw std::invalid_argument("Z_n: n must be >= 0");
  if (a <= 0.0) throw std::invalid_argument("Z_n: a must be > 0");
  const double r = X / (std::numbers::sqrt2 * a);
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double sign = (r < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  const double log_mag = n * std::log(std::fabs(r)) - 0.5 * std::lgamma(n + 1.0) -
                         X * X / (4.0 * a * a);
  return sign * std::exp(log_mag);
}

double kernel_reconstruction(double X, double X_prime, int n_max, double a) {
  if (n_max < 0) throw std::invalid_argument("kernel_reconstruction: n_max >= 0");
  double s = 0.0;
  for (int n = 0; n <= n_max; ++n) s += Z_n(n, X, a) * Z_n(n, X_prime, a);
  return s;
}

GridDensityMatrix truncated_generator(const GridDensityMatrix& rho, int n_max,
                                      const ClumpParams& params,
                                      bool include_kinetic) {
  params.validate();
  if (rho.size() == 0 || rho.dx <= 0.0)
    throw std::invalid_argument("truncated_generator: bad grid");
  const int ng = rho.size();
  const double a = params.a;
  const double pref = 0.5 * params.lambda * params.N * params.N;

  Eigen::MatrixXd z(n_max + 1, ng);
  for (int i = 0; i < ng; ++i)
    for (int n = 0; n <= n_max; ++n) z(n, i) = Z_n(n, rho.position(i), a);

  GridDensityMatrix out = rho;
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      double s = 0.0;
      for (int n = 0; n <= n_max; ++n) {
        const double d = z(n, i) - z(n, j);
        s += d * d;
      }
      out.rho(i, j) = -pref * s * rho.rho(i, j);
    }

  if (include_kinetic) {
    if (!detail::is_pow2(static_cast<std::size_t>(ng)))
      throw std::invalid_argument(
          "truncated_generator: kinetic term needs power-of-two grid");
    // -i [P^2/2m, rho] evaluated spectrally
    const double m = params.m();
    const double dk = 2.0 * std::numbers::pi / (ng * rho.dx);
    std::vector<double> k2(ng);
    for (int j = 0; j < ng; ++j) {
      const int jw = (j < ng / 2) ? j : j - ng;
      k2[j] = (dk * jw) * (dk * jw);
    }
    std::vector<std::complex<double>> buf(ng);
    Eigen::MatrixXcd t2rho = rho.rho, rhot2 = rho.rho;
    for (int c = 0; c < ng; ++c) {
      for (int r = 0; r < ng; ++r) buf[r] = rho.rho(r, c);
      detail::fft_pow2(buf, false);
      for (int r = 0; r < ng; ++r) buf[r] *= k2[r] / (2.0 * m);
      detail::fft_pow2(buf, true);
      for (int r = 0; r < ng; ++r) t2rho(r, c) = buf[r];
    }
    for (int r = 0; r < ng; ++r) {
      for (int c = 0; c < ng; ++c) buf[c] = rho.rho(r, c);
      detail::fft_pow2(buf, false);
      for (int c = 0; c < ng; ++c) buf[c] *= k2[c] / (2.0 * m);
      detail::fft_pow2(buf, true);
      for (int c = 0; c < ng; ++c) rhot2(r, c) = buf[c];
    }
    out.rho += std::complex<double>(0.0, -1.0) * (t2rho - rhot2);
  }
  return out;
}

Eigen::MatrixXd project_noise(const Eigen::MatrixXd& w_field,
                              const Eigen::VectorXd& xs,
                              const HermiteBasis& basis) {
  basis.validate();
  if (w_field.rows() != xs.size())
    throw std::invalid_argument("project_noise: w_field rows must match xs");
  if (xs.size() < 2) throw std::invalid_argument("project_noise: grid too small");
  const double dx = xs[1] - xs[0];
  // local wavelength of u_n near the origin: 2 pi a / sqrt(2n+1)
  const double min_wavelength =
      2.0 * std::numbers::pi * basis.a / std::sqrt(2.0 * basis.n_max + 1.0);
  if (dx > min_wavelength / 8.0)
    throw std::invalid_argument(
        "project_noise: spatial grid does not resolve u_{n_max}");

  Eigen::MatrixXd u(basis.n_max + 1, xs.size());
  for (int j = 0; j < xs.size(); ++j) {
    const auto col = hermite_u_all(basis.n_max, xs[j], basis.a);
    for (int n = 0; n <= basis.n_max; ++n) u(n, j) = col[n];
  }
  return u * w_field * dx;
}

}  // namespace csl
