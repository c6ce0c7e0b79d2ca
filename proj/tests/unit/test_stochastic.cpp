#include <doctest.h>

#include <cmath>
#include <set>

#include "csl/noise.hpp"
#include "csl/quadrature.hpp"
#include "csl/rng.hpp"

TEST_CASE("identical stream ids reproduce the same sequence") {
  csl::RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices decorrelate immediately") {
  csl::RngStream a(42, 0), b(42, 1);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform stays inside (0, 1]") {
  csl::RngStream s(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal moments match a standard gaussian") {
  csl::RngStream s(5, 0);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n; m2 /= n; m4 /= n;
  CHECK(std::fabs(m1) < 0.01);
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("noise increments carry variance lambda dt") {
  const double dt = 0.02, lambda = 3.0;
  const auto path = csl::sample_noise_path(dt, 100000, lambda, csl::RngStream(9, 0));
  double var = 0.0;
  for (double db : path.increments) var += db * db;
  var /= static_cast<double>(path.increments.size());
  CHECK(var == doctest::Approx(lambda * dt).epsilon(0.02));
  const auto B = path.cumulative();
  CHECK(B.front() == 0.0);
  CHECK(B.size() == path.increments.size() + 1);
  // B(T) variance ~ lambda T, checked loosely through its magnitude
  CHECK(std::fabs(B.back()) < 10.0 * std::sqrt(lambda * dt * 100000));
}

TEST_CASE("noise sampling rejects bad parameters") {
  csl::RngStream s(1, 0);
  CHECK_THROWS_AS(csl::sample_noise_path(0.0, 10, 1.0, s), std::invalid_argument);
  CHECK_THROWS_AS(csl::sample_noise_path(0.1, 10, -1.0, s), std::invalid_argument);
  CHECK_THROWS_AS(csl::sample_noise_path(0.1, 0, 1.0, s), std::invalid_argument);
}

TEST_CASE("simpson rule is exact for cubics") {
  const double v = csl::integrate([](double x) { return x * x * x; }, 0.0, 1.0, 4);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("simpson rule hits a frozen gaussian integral") {
  // int_0^2 e^{-t^2} dt = (sqrt(pi)/2) erf(2)
  const double v = csl::integrate([](double t) { return std::exp(-t * t); },
                                  0.0, 2.0, 2000);
  CHECK(v == doctest::Approx(0.88208139076242187).epsilon(1e-12));
}

TEST_CASE("simpson rule validates its arguments") {
  auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS(csl::integrate(f, 1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(csl::integrate(f, 0.0, 1.0, 1), std::invalid_argument);
  CHECK(csl::integrate(f, 2.0, 2.0, 10) == 0.0);
}
