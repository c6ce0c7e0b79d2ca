#pragma once

#include <cstddef>
#include <stdexcept>

namespace csl {

// Composite Simpson rule on [t0, t1] with n subintervals (rounded up to
// even).  Error O(n^-4) for smooth integrands; exact for cubics.
template <typename F>
double integrate(F&& f, double t0, double t1, std::size_t n) {
  if (t1 < t0) throw std::invalid_argument("integrate: t1 < t0");
  if (n < 2) throw std::invalid_argument("integrate: n must be >= 2");
  if (t0 == t1) return 0.0;
  if (n % 2 != 0) ++n;
  const double h = (t1 - t0) / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += f(t0 + h * static_cast<double>(i));
  for (std::size_t i = 2; i < n; i += 2) even += f(t0 + h * static_cast<double>(i));
  return h / 3.0 * (f(t0) + f(t1) + 4.0 * odd + 2.0 * even);
}

}  // namespace csl
