#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "csl/special.hpp"

namespace {

// slow Taylor oracle, alternating series with 120 terms; good to ~1e-14
// for |x| <= 3
double erf_taylor(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 120; ++k) {
    term *= -x * x / k;
    sum += term / (2 * k + 1);
  }
  return 2.0 / std::sqrt(std::acos(-1.0)) * sum;
}

}  // namespace

TEST_CASE("erf matches the Taylor oracle on [-3, 3]") {
  for (int i = -60; i <= 60; ++i) {
    const double x = 0.05 * i;
    CHECK(csl::erf(x) == doctest::Approx(erf_taylor(x)).epsilon(1e-12));
  }
}

TEST_CASE("erf frozen reference values") {
  CHECK(csl::erf(0.0) == 0.0);
  CHECK(csl::erf(0.5) == doctest::Approx(0.52049987781304654).epsilon(1e-13));
  CHECK(csl::erf(1.0) == doctest::Approx(0.84270079294971487).epsilon(1e-13));
  CHECK(csl::erf(2.0) == doctest::Approx(0.99532226501895273).epsilon(1e-13));
  CHECK(csl::erf(-1.0) == doctest::Approx(-0.84270079294971487).epsilon(1e-13));
}

TEST_CASE("erf saturates in the tails") {
  CHECK(csl::erf(7.0) == 1.0);
  CHECK(csl::erf(-7.0) == -1.0);
  CHECK(csl::erf(100.0) == 1.0);
}

TEST_CASE("erf is odd") {
  for (double x : {0.3, 1.7, 4.2}) CHECK(csl::erf(-x) == -csl::erf(x));
}
