#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "csl/rng.hpp"

namespace csl {

// Discretized Brownian motion.  Convention: increments dB have variance
// lambda*dt (the diffusion rate sits inside the noise, not in front of it).
struct NoisePath {
  double dt = 0.0;
  double lambda = 0.0;
  std::vector<double> increments;

  // B(t_k) for k = 0..n, with B(0) = 0
  std::vector<double> cumulative() const {
    std::vector<double> b(increments.size() + 1, 0.0);
    for (std::size_t k = 0; k < increments.size(); ++k)
      b[k + 1] = b[k] + increments[k];
    return b;
  }
};

inline NoisePath sample_noise_path(double dt, std::size_t n_steps,
                                   double lambda, RngStream stream) {
  if (dt <= 0.0) throw std::invalid_argument("sample_noise_path: dt must be > 0");
  if (lambda <= 0.0)
    throw std::invalid_argument("sample_noise_path: lambda must be > 0");
  if (n_steps < 1)
    throw std::invalid_argument("sample_noise_path: n_steps must be >= 1");
  NoisePath path;
  path.dt = dt;
  path.lambda = lambda;
  path.increments.resize(n_steps);
  const double sigma = std::sqrt(lambda * dt);
  for (auto& db : path.increments) db = sigma * stream.normal();
  return path;
}

}  // namespace csl
