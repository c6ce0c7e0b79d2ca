#pragma once

#include <Eigen/Dense>
#include <vector>

#include "csl/clump.hpp"

namespace csl {

// Harmonic-oscillator function family on the smearing length a.
struct HermiteBasis {
  double a = 1.0;
  int n_max = 60;

  void validate() const;
};

// u_n(x) = C_n H_n(x/a) e^{-x^2/2a^2}, C_n = 1/sqrt(sqrt(pi) 2^n n! a),
// evaluated by the normalized three-term recurrence (stable to n ~ 200).
double hermite_u(int n, double x, double a);

// u_0..u_n_max at a single point, one recurrence pass
std::vector<double> hermite_u_all(int n_max, double x, double a);

// Z_n(X) = e^{-X^2/4a^2} (X / sqrt(2) a)^n / sqrt(n!), log-domain for large n
double Z_n(int n, double X, double a);

// sum_{n=0}^{n_max} Z_n(X) Z_n(X'); converges to exp(-(X-X')^2/4a^2)
double kernel_reconstruction(double X, double X_prime, int n_max, double a);

// Entrywise rate -(lambda N^2 / 2) sum_{n<=n_max} [Z_n(X)-Z_n(X')]^2 rho(X,X'),
// plus the kinetic commutator -i[P^2/2m, rho] when include_kinetic is set.
GridDensityMatrix truncated_generator(const GridDensityMatrix& rho, int n_max,
                                      const ClumpParams& params,
                                      bool include_kinetic = false);

// Project a sampled noise field w(x_j, t_k) (rows = x, columns = t) onto
// the basis: v_n(t_k) = sum_j w(x_j, t_k) u_n(x_j) dx.  The spatial grid
// must resolve u_{n_max} (>= 8 points per oscillation).
Eigen::MatrixXd project_noise(const Eigen::MatrixXd& w_field,
                              const Eigen::VectorXd& xs,
                              const HermiteBasis& basis);

}  // namespace csl
