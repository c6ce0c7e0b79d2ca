#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "csl/rng.hpp"

namespace csl {

// Superposition over the eigenbasis of a single collapse-generating
// operator A: eigenvalues a_n, complex amplitudes c_n, collapse rate lambda.
struct DiscreteSuperposition {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXcd amplitudes;
  double lambda = 1.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  // throws std::invalid_argument on empty/mismatched vectors, non-positive
  // lambda, or sum |c_n|^2 off from 1 by more than 1e-12
  void validate() const;
};

struct TrajectoryResult {
  double B_final = 0.0;
  Eigen::VectorXd x_final;    // squared normalized amplitudes, sum = 1
  Eigen::VectorXcd state;     // normalized complex amplitudes
  int outcome = 0;            // argmax of x_final, lowest index on ties
  double weight_log = 0.0;    // log <phi|phi> of the unnormalized state
};

// Unnormalized amplitudes c_n exp(-[B - 2 lambda t a_n]^2 / (4 lambda t))
Eigen::VectorXcd evolve_closed_form(const DiscreteSuperposition& sup, double B,
                                    double t);

// Gaussian-mixture density of the final Brownian value B(t):
// (2 pi lambda t)^{-1/2} sum |c_n|^2 exp(-[B - 2 lambda t a_n]^2 / (2 lambda t))
double final_B_density(const DiscreteSuperposition& sup, double t, double B);

// One collapse trajectory: per step, dB' is drawn from the x-weighted
// Gaussian mixture (means 2 lambda dt a_n, variance lambda dt) and each
// component is multiplied by exp(a_n dB' - a_n^2 lambda dt).  Amplitude
// magnitudes are tracked in the log domain.
TrajectoryResult run_trajectory(const DiscreteSuperposition& sup, double T,
                                double dt, RngStream stream);

struct BornEnsemble {
  Eigen::VectorXd frequencies;  // outcome frequencies
  Eigen::VectorXd mean_x;       // ensemble mean of x_n(T)
  Eigen::MatrixXcd mean_projector;  // ensemble mean of |psi><psi|
  std::vector<double> B_finals;     // per-trajectory, in stream-index order
};

// Ensemble over trajectory streams (master_seed, 0..n_traj-1), aggregated
// in stream-index order so results are independent of n_threads.
BornEnsemble born_ensemble(const DiscreteSuperposition& sup, double T,
                           double dt, std::size_t n_traj,
                           std::uint64_t master_seed, int n_threads = 1);

Eigen::VectorXd born_statistics(const DiscreteSuperposition& sup, double T,
                                double dt, std::size_t n_traj,
                                std::uint64_t master_seed, int n_threads = 1);

// rho_nm(t) = c_n c_m^* exp(-(lambda t / 2)(a_n - a_m)^2)
Eigen::MatrixXcd analytic_rho(const DiscreteSuperposition& sup, double t);

// RK4 integration of
//   d rho/dt = -i[H, rho] - (lambda/2) sum_a [A_a, [A_a, rho]]
// with post-step Hermitization.  A_ops must be mutually commuting
// Hermitian matrices (checked to 1e-10).
Eigen::MatrixXcd lindblad_evolve(const Eigen::MatrixXcd& rho0,
                                 const Eigen::MatrixXcd& H,
                                 const std::vector<Eigen::MatrixXcd>& A_ops,
                                 double lambda, double t, double dt);

// d Tr(O rho)/dt = -i Tr([O,H] rho) - (lambda/2) sum Tr([A,[A,O]] rho)
double ensemble_rate(const Eigen::MatrixXcd& O, const Eigen::MatrixXcd& rho,
                     const Eigen::MatrixXcd& H,
                     const std::vector<Eigen::MatrixXcd>& A_ops, double lambda);

struct RuinResult {
  int winner = 0;   // 0 = gambler 1, 1 = gambler 2
  long steps = 0;
};

// Fair +-1 random walk with absorbing barriers at 0 and `total`.
RuinResult gamblers_ruin(int x1_start, int total, RngStream stream);

// Per-n dt-coefficient of d rho_nn for the Ito evolution
// d|phi> = [R dB + V dt]|phi>:
//   {V,rho}_nn - 2 rho_nn Tr(V rho)
//   + lambda [ (R rho R)_nn - rho_nn Tr(R^2 rho)
//              - 2 Tr(R rho) ({R,rho}_nn - 2 rho_nn Tr(R rho)) ]
// Vanishes identically iff the fair-game (martingale) property holds.
Eigen::VectorXd fair_game_defect(const Eigen::MatrixXd& R,
                                 const Eigen::MatrixXd& V,
                                 const Eigen::MatrixXcd& rho, double lambda);

}  // namespace csl
