#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "csl/fft.hpp"
#include "csl/rng.hpp"

namespace {

std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += a[j] * std::exp(std::complex<double>(
               0.0, -2.0 * std::numbers::pi * double(k * j) / double(n)));
    out[k] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("power-of-two detection") {
  CHECK(csl::detail::is_pow2(1));
  CHECK(csl::detail::is_pow2(64));
  CHECK_FALSE(csl::detail::is_pow2(0));
  CHECK_FALSE(csl::detail::is_pow2(48));
}

TEST_CASE("fft matches a naive dft on random data") {
  csl::RngStream s(11, 0);
  for (std::size_t n : {2, 8, 64, 128}) {
    std::vector<std::complex<double>> a(n);
    for (auto& z : a) z = {s.normal(), s.normal()};
    auto want = naive_dft(a);
    auto got = a;
    csl::detail::fft_pow2(got, false);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(got[k] - want[k]) < 1e-10 * std::sqrt(double(n)));
  }
}

TEST_CASE("inverse fft round trip") {
  csl::RngStream s(12, 0);
  std::vector<std::complex<double>> a(256);
  for (auto& z : a) z = {s.normal(), s.normal()};
  auto b = a;
  csl::detail::fft_pow2(b, false);
  csl::detail::fft_pow2(b, true);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(b[k] - a[k]) < 1e-12);
}

TEST_CASE("fft of a pure tone is a single bin") {
  const std::size_t n = 64;
  std::vector<std::complex<double>> a(n);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * 5.0 * j / n));
  csl::detail::fft_pow2(a, false);
  for (std::size_t k = 0; k < n; ++k) {
    const double want = (k == 5) ? double(n) : 0.0;
    CHECK(std::abs(a[k]) == doctest::Approx(want).epsilon(1e-10));
  }
}
