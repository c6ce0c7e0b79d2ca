#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

namespace csl {

// Center-of-mass parameters of a small rigid clump of N identical nucleons.
// Units are hbar = 1, so M carries dimensions of time/length^2.
struct ClumpParams {
  double N = 1.0;       // nucleon count
  double M = 1.0;       // nucleon mass
  double lambda = 1.0;  // collapse rate
  double a = 1.0;       // smearing length

  double m() const { return N * M; }                       // clump mass
  double lambda_tilde() const;                             // lambda N / (sqrt(2) a)
  double alpha() const;                                    // lambda_tilde / sqrt(m lambda)
  void validate() const;

  // nucleon mass over hbar, in s/cm^2 (SI-with-cm preset conversions)
  static constexpr double kNucleonMassOverHbar = 1.59e3;

  static ClumpParams dimensionless(double N = 1.0);
  // GRW values: lambda = 1e-16 s^-1, a = 1e-5 cm
  static ClumpParams grw(double N = 1.0);
  // Adler value: lambda = 1e-11 s^-1, same a
  static ClumpParams adler(double N = 1.0);
};

// Complex matrix rho(X_i, X_j) on a uniform 1-D position grid.
struct GridDensityMatrix {
  double x0 = 0.0;  // leftmost grid point
  double dx = 0.0;  // spacing
  Eigen::MatrixXcd rho;

  int size() const { return static_cast<int>(rho.rows()); }
  double position(int i) const { return x0 + dx * i; }
  double trace() const { return rho.diagonal().real().sum() * dx; }
  void validate() const;  // Hermitian to 1e-10, trace 1 to 1e-8
};

// Pure-state grid density matrix psi psi^dagger, normalized to unit trace.
GridDensityMatrix grid_from_wavefunction(double x0, double dx,
                                         const Eigen::VectorXcd& psi);

// Bracketed double sum of the N-particle decay kernel:
//   sum_ij [ e^{-(x_i-x_j)^2/4a^2} + e^{-(x'_i-x'_j)^2/4a^2}
//            - 2 e^{-(x_i-x'_j)^2/4a^2} ]
// Multiplying by lambda/2 gives the decay rate of <x|rho|x'>.
double pair_decay_kernel(std::span<const double> x,
                         std::span<const double> x_prime, double a);

// lambda N^2 [1 - exp(-D^2/4a^2)]
double cm_offdiag_rate(double D, const ClumpParams& params);

// Same closed form with L in place of D: the decay rate of the
// ensemble-averaged translation overlap <cos(P L)>.
double modular_overlap_rate(double L, const ClumpParams& params);

// Strang split-step evolution of the cm density matrix (Eq. of motion:
// exact entrywise collapse factor; kinetic step exp(-i P^2 dt / 2m) via
// FFT on both indices when include_kinetic is set).
GridDensityMatrix grid_evolve_cm(const GridDensityMatrix& rho,
                                 const ClumpParams& params, double t,
                                 double dt, bool include_kinetic);

// Tr(rho cos(P L)) = Re sum_i rho(X_i, X_i + L) dx.  L must be an integer
// multiple of the grid spacing.
double modular_overlap(const GridDensityMatrix& rho, double L);

}  // namespace csl
