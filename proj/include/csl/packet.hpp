#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "csl/clump.hpp"
#include "csl/noise.hpp"
#include "csl/rng.hpp"

namespace csl {

// Derived constants of the exactly solvable small-packet problem.
struct DerivedPacketParams {
  double lambda_tilde = 0.0;         // lambda N / (sqrt(2) a)
  double alpha = 0.0;                // lambda_tilde / sqrt(m lambda)
  std::complex<double> A_eq;         // m alpha (1 - i) / 2
};

DerivedPacketParams derived_params(const ClumpParams& params);

// Gaussian ansatz psi(X) = exp(-A X^2 + B X + C); C is tracked only
// through the norm, never explicitly.
struct GaussianPacketState {
  std::complex<double> A;
  std::complex<double> B;
  ClumpParams params;

  void validate() const;  // Re(A) > 0
};

GaussianPacketState equilibrium_state(const ClumpParams& params);

// Closed-form solution of the width Riccati equation
// dA/dt = -(2i/m) A^2 + lambda_tilde^2 / lambda:
//   A(t) = A_eq (1 - K e^{-2 alpha (1+i) t}) / (1 + K e^{-2 alpha (1+i) t}),
//   K = (A_eq - A0)/(A_eq + A0).
std::complex<double> riccati_A(double t, std::complex<double> A0,
                               const ClumpParams& params);

// Noise transform v(t) = w(t) - 2 alpha int_0^t w(t') e^{-a(t-t')} cos a(t-t') dt',
// discretized with the left-endpoint rule on the path's dt lattice.
NoisePath v_from_w(const NoisePath& w, const ClumpParams& params);

// Exact inverse of the discrete v_from_w map (forward substitution of the
// unit-lower-triangular system); agrees with the w(t) = v + 2a int v [1+a(t-t1)]
// kernel up to O(dt).
NoisePath w_from_v(const NoisePath& v, const ClumpParams& params);

// Direct left-endpoint discretization of the inverse kernel, kept for
// cross-checks against the exact triangular inverse.
NoisePath w_from_v_kernel(const NoisePath& v, const ClumpParams& params);

struct PacketTrajectory {
  std::vector<double> times;
  std::vector<double> meanX;
  std::vector<double> meanP;
  std::vector<double> varX;    // constant 1/(2 m alpha) at equilibrium
  std::vector<double> Btilde;  // cumulative integral of v
  NoisePath v;
  NoisePath w;
};

// Equilibrium-start trajectory: v sampled as white noise (increment
// variance lambda dt), then
//   <X>(t) = (1/sqrt(m lambda)) [Btilde(t) + alpha int_0^t Btilde],
//   <P>(t) = (lambda_tilde/lambda) Btilde(t).
PacketTrajectory run_packet_trajectory(const ClumpParams& params, double T,
                                       double dt, RngStream stream);

// Closed-form ensemble mean of <X^2>(t):
//   1/(2 m alpha) + (1/m) [t + alpha t^2 + alpha^2 t^3 / 3]
double ensemble_msd(const ClumpParams& params, double t);

// Monte Carlo estimate of the same quantity over n_traj trajectories.
double msd_monte_carlo(const ClumpParams& params, double t, std::size_t n_traj,
                       std::uint64_t master_seed, int n_threads = 1);

}  // namespace csl
