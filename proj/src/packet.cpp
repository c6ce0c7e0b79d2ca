#include "csl/packet.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace csl {

DerivedPacketParams derived_params(const ClumpParams& params) {
  params.validate();
  DerivedPacketParams d;
  d.lambda_tilde = params.lambda_tilde();
  d.alpha = params.alpha();
  d.A_eq = 0.5 * params.m() * d.alpha * std::complex<double>(1.0, -1.0);
  return d;
}

void GaussianPacketState::validate() const {
  params.validate();
  if (A.real() <= 0.0)
    throw std::invalid_argument("GaussianPacketState: Re(A) must be > 0");
}

GaussianPacketState equilibrium_state(const ClumpParams& params) {
  GaussianPacketState s;
  s.params = params;
  s.A = derived_params(params).A_eq;
  s.B = 0.0;
  return s;
}

std::complex<double> riccati_A(double t, std::complex<double> A0,
                               const ClumpParams& params) {
  const auto d = derived_params(params);
  if (A0.real() <= 0.0)
    throw std::invalid_argument("riccati_A: Re(A0) must be > 0");
  const std::complex<double> den = d.A_eq + A0;
  if (std::abs(den) == 0.0)
    throw std::invalid_argument("riccati_A: A0 = -A_eq is a pole");
  const std::complex<double> K = (d.A_eq - A0) / den;
  // decaying form: never exponentiates a growing argument
  const std::complex<double> e =
      std::exp(-2.0 * d.alpha * t * std::complex<double>(1.0, 1.0));
  return d.A_eq * (1.0 - K * e) / (1.0 + K * e);
}

namespace {

void check_path(const NoisePath& p) {
  if (p.dt <= 0.0 || p.increments.empty())
    throw std::invalid_argument("noise transform: empty path or bad dt");
}

}  // namespace

NoisePath v_from_w(const NoisePath& w, const ClumpParams& params) {
  check_path(w);
  const double alpha = params.alpha();
  const double dt = w.dt;
  // S_k = sum_{j<k} w_j e^{-alpha(1+i)(t_k - t_j)} dt, updated recursively
  const std::complex<double> decay =
      std::exp(-alpha * dt * std::complex<double>(1.0, 1.0));
  NoisePath v = w;
  std::complex<double> S = 0.0;
  for (std::size_t k = 0; k < w.increments.size(); ++k) {
    const double wk = w.increments[k] / dt;
    v.increments[k] = (wk - 2.0 * alpha * S.real()) * dt;
    S = (S + wk * dt) * decay;
  }
  return v;
}

NoisePath w_from_v(const NoisePath& v, const ClumpParams& params) {
  check_path(v);
  const double alpha = params.alpha();
  const double dt = v.dt;
  const std::complex<double> decay =
      std::exp(-alpha * dt * std::complex<double>(1.0, 1.0));
  NoisePath w = v;
  std::complex<double> S = 0.0;
  for (std::size_t k = 0; k < v.increments.size(); ++k) {
    const double vk = v.increments[k] / dt;
    const double wk = vk + 2.0 * alpha * S.real();
    w.increments[k] = wk * dt;
    S = (S + wk * dt) * decay;
  }
  return w;
}

NoisePath w_from_v_kernel(const NoisePath& v, const ClumpParams& params) {
  check_path(v);
  const double alpha = params.alpha();
  const double dt = v.dt;
  NoisePath w = v;
  double B = 0.0;  // sum v_j dt
  double T = 0.0;  // sum v_j (t_k - t_j) dt
  for (std::size_t k = 0; k < v.increments.size(); ++k) {
    const double vk = v.increments[k] / dt;
    w.increments[k] = (vk + 2.0 * alpha * (B + alpha * T)) * dt;
    T += B * dt;
    B += vk * dt;
  }
  return w;
}

PacketTrajectory run_packet_trajectory(const ClumpParams& params, double T,
                                       double dt, RngStream stream) {
  params.validate();
  const auto d = derived_params(params);
  if (dt <= 0.0 || T < dt)
    throw std::invalid_argument("run_packet_trajectory: need 0 < dt <= T");
  if (dt > 0.01 / d.alpha)
    throw std::invalid_argument("run_packet_trajectory: dt must be <= 0.01/alpha");

  const std::size_t n = static_cast<std::size_t>(std::lround(T / dt));
  PacketTrajectory traj;
  traj.v = sample_noise_path(dt, n, params.lambda, stream);
  traj.w = w_from_v(traj.v, params);

  const double m = params.m();
  const double sqrt_ml = std::sqrt(m * params.lambda);
  const double var_eq = 1.0 / (2.0 * m * d.alpha);
  traj.times.resize(n + 1);
  traj.meanX.resize(n + 1);
  traj.meanP.resize(n + 1);
  traj.varX.assign(n + 1, var_eq);
  traj.Btilde.resize(n + 1);

  double B = 0.0;       // Btilde(t_k)
  double intB = 0.0;    // left-endpoint int_0^{t_k} Btilde
  for (std::size_t k = 0; k <= n; ++k) {
    traj.times[k] = dt * static_cast<double>(k);
    traj.Btilde[k] = B;
    traj.meanX[k] = (B + d.alpha * intB) / sqrt_ml;
    traj.meanP[k] = d.lambda_tilde / params.lambda * B;
    if (k < n) {
      intB += B * dt;
      B += traj.v.increments[k];
    }
  }
  return traj;
}

double ensemble_msd(const ClumpParams& params, double t) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("ensemble_msd: t must be >= 0");
  const auto d = derived_params(params);
  const double m = params.m();
  return 1.0 / (2.0 * m * d.alpha) +
         (t + d.alpha * t * t + d.alpha * d.alpha * t * t * t / 3.0) / m;
}

double msd_monte_carlo(const ClumpParams& params, double t, std::size_t n_traj,
                       std::uint64_t master_seed, int n_threads) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("msd_monte_carlo: t must be >= 0");
  const auto d = derived_params(params);
  const double var_eq = 1.0 / (2.0 * params.m() * d.alpha);
  if (t == 0.0) return var_eq;

  const long n_steps =
      std::max(1L, static_cast<long>(std::ceil(t / (0.01 / d.alpha))));
  const double dt = t / static_cast<double>(n_steps);

  std::vector<double> x2(n_traj);
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto traj =
          run_packet_trajectory(params, t, dt, RngStream(master_seed, i));
      const double x = traj.meanX.back();
      x2[i] = x * x;
    }
  };
  if (n_threads <= 1) {
    worker(0, n_traj);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_traj + n_threads - 1) / n_threads;
    for (int th = 0; th < n_threads; ++th) {
      const std::size_t lo = std::min<std::size_t>(th * chunk, n_traj);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, n_traj);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  double acc = 0.0;
  for (double v : x2) acc += v;  // fixed-order sum
  return acc / static_cast<double>(n_traj) + var_eq;
}

}  // namespace csl
