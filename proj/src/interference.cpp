#include "csl/interference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "csl/quadrature.hpp"
#include "csl/special.hpp"

namespace csl {

void SlitConfig::validate() const {
  params.validate();
  if (b <= 0.0 || k <= 0.0 || L <= 0.0 || A_amp <= 0.0)
    throw std::invalid_argument("SlitConfig: b, k, L, A_amp must be > 0");
  if (L / b < 100.0)
    throw std::invalid_argument("SlitConfig: need L >> b (L/b >= 100)");
}

double SlitConfig::rate() const {
  const double r = b / params.a;
  const double n2 = params.N * params.N;
  return params.lambda * n2 *
         (1.0 - std::sqrt(std::numbers::pi) / (2.0 * r) * csl::erf(r));
}

double packet_separation(double X, double k1, double k2, double m, double t,
                         double t_prime) {
  if (t_prime < 0.0 || t_prime > t)
    throw std::invalid_argument("packet_separation: t_prime outside [0, t]");
  return std::fabs((k1 - k2) / m) * (t - t_prime);
}

double pair_exponent(const std::function<double(double)>& sep_fn, double t,
                     const ClumpParams& params, int n_quad) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("pair_exponent: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double inv4a2 = 1.0 / (4.0 * params.a * params.a);
  const double result =
      params.lambda * params.N * params.N *
      integrate(
          [&](double tp) {
            const double s = sep_fn(tp);
            return -std::expm1(-s * s * inv4a2);
          },
          0.0, t, static_cast<std::size_t>(n_quad));
  if (!std::isfinite(result))
    throw std::runtime_error("pair_exponent: quadrature produced non-finite value");
  return result;
}

double screen_density(double X, double t, const std::vector<PacketSpec>& packets,
                      const ClumpParams& params, int n_quad) {
  if (packets.empty())
    throw std::invalid_argument("screen_density: packets must be nonempty");
  const double m = params.m();
  const std::size_t n = packets.size();
  double density = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto phi_i = packets[i].envelope(X, t);
    density += std::norm(packets[i].amplitude) * std::norm(phi_i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ki = packets[i].wavevector(X);
      const double kj = packets[j].wavevector(X);
      const double gamma = pair_exponent(
          [&](double tp) { return packet_separation(X, ki, kj, m, t, tp); }, t,
          params, n_quad);
      const auto cross = packets[i].amplitude * std::conj(packets[j].amplitude) *
                         phi_i * std::conj(packets[j].envelope(X, t));
      density += 2.0 * cross.real() * std::exp(-gamma);
    }
  }
  return density;
}

double mach_zehnder_prob(double t, const ClumpParams& params) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("mach_zehnder_prob: t must be >= 0");
  return 0.5 * (-std::expm1(-params.lambda * params.N * params.N * t));
}

double two_slit_intensity(double theta, double t, const SlitConfig& cfg) {
  cfg.validate();
  if (t < 0.0) throw std::invalid_argument("two_slit_intensity: t must be >= 0");
  const double e = std::exp(-cfg.rate() * t);
  const double c = std::cos(cfg.k * cfg.b * theta);
  const double A2 = cfg.A_amp * cfg.A_amp;
  return 2.0 * A2 * c * c * e + A2 * (1.0 - e);
}

double fringe_visibility(double t, const SlitConfig& cfg) {
  cfg.validate();
  // one fringe period in theta: cos^2(k b theta) has period pi/(k b)
  const double period = std::numbers::pi / (cfg.k * cfg.b);
  const int n_scan = 720;
  double imax = -1.0, imin = 1e300;
  for (int i = 0; i <= n_scan; ++i) {
    const double th = period * i / n_scan;
    const double v = two_slit_intensity(th, t, cfg);
    imax = std::max(imax, v);
    imin = std::min(imin, v);
  }
  return (imax - imin) / (imax + imin);
}

}  // namespace csl
