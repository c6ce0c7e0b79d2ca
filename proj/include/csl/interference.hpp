#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "csl/clump.hpp"

namespace csl {

// One interfering wave packet: complex amplitude c_n, envelope phi_n(X,t),
// and local wave vector k_n(X).  Each packet point moves on a straight
// line with velocity k_n(X)/m.
struct PacketSpec {
  std::complex<double> amplitude;
  std::function<std::complex<double>(double X, double t)> envelope;
  std::function<double(double X)> wavevector;
};

// Two-slit geometry: slits at x = +-b, wave number k, screen at distance
// L >> b (enforced: L/b >= 100).
struct SlitConfig {
  double b = 0.0;
  double k = 0.0;
  double L = 0.0;
  ClumpParams params;
  double A_amp = 1.0;

  void validate() const;
  // decay rate of the interference term, lambda N^2 [1 - (sqrt(pi) a / 2b) erf(b/a)]
  double rate() const;
};

// |X_1(t-t') - X_2(t-t')| for straight-line packet points meeting at X at
// time t.
double packet_separation(double X, double k1, double k2, double m, double t,
                         double t_prime);

// lambda N^2 int_0^t dt' [1 - exp(-sep(t')^2 / 4a^2)] by composite Simpson;
// exp(-result) is the off-diagonal survival factor.
double pair_exponent(const std::function<double(double)>& sep_fn, double t,
                     const ClumpParams& params, int n_quad = 10000);

// Ensemble probability density at X: the packet double sum with the
// per-pair collapse survival factor.
double screen_density(double X, double t, const std::vector<PacketSpec>& packets,
                      const ClumpParams& params, int n_quad = 10000);

// P_up = (1/2)[1 - exp(-lambda N^2 t)]
double mach_zehnder_prob(double t, const ClumpParams& params);

// 2 A^2 cos^2(k b theta) e^{-rate t} + A^2 [1 - e^{-rate t}]
double two_slit_intensity(double theta, double t, const SlitConfig& cfg);

// (I_max - I_min)/(I_max + I_min) over one fringe period
double fringe_visibility(double t, const SlitConfig& cfg);

}  // namespace csl
