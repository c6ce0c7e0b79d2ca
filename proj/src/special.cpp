#include "csl/special.hpp"

#include <cmath>
#include <numbers>

namespace csl {

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  if (ax >= 6.5) return x > 0 ? 1.0 : -1.0;
  // sum_k (2x^2)^k / (1*3*5*...*(2k+1)); terms are positive, no cancellation
  const double q = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= q / static_cast<double>(2 * k + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  const double pref =
      2.0 / std::sqrt(std::numbers::pi) * x * std::exp(-x * x);
  return pref * sum;
}

}  // namespace csl
