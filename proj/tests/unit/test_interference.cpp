#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csl/interference.hpp"
#include "csl/quadrature.hpp"

namespace {

const csl::ClumpParams kDim = csl::ClumpParams::dimensionless();

csl::SlitConfig make_slit(double b_over_a = 1.0, double kb = 10.0) {
  csl::SlitConfig s;
  s.params = kDim;
  s.b = b_over_a * kDim.a;
  s.k = kb / s.b;
  s.L = 1000.0 * s.b;
  s.A_amp = 1.0;
  return s;
}

}  // namespace

TEST_CASE("slit validation enforces the far-screen condition") {
  auto s = make_slit();
  CHECK_NOTHROW(s.validate());
  s.L = 10.0 * s.b;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = make_slit();
  s.b = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("effective two-slit rate limits") {
  const auto small = make_slit(0.01);
  const double want_small =
      kDim.lambda * kDim.N * kDim.N * small.b * small.b / (3.0 * kDim.a * kDim.a);
  CHECK(small.rate() == doctest::Approx(want_small).epsilon(0.01));
  const auto big = make_slit(100.0);
  CHECK(big.rate() == doctest::Approx(kDim.lambda * kDim.N * kDim.N).epsilon(0.01));
}

TEST_CASE("packet separation grows linearly backward from the screen") {
  CHECK(csl::packet_separation(0.0, 3.0, 1.0, 2.0, 4.0, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(csl::packet_separation(0.0, 1.0, 3.0, 2.0, 4.0, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-14));  // sign of k1-k2 is irrelevant
  CHECK_THROWS_AS(csl::packet_separation(0.0, 1.0, 2.0, 1.0, 4.0, 5.0),
                  std::invalid_argument);
}

TEST_CASE("pair exponent with constant separation matches the closed form") {
  const double D = 3.0, t = 2.0;
  const double want =
      kDim.lambda * kDim.N * kDim.N * t * (1.0 - std::exp(-D * D / 4.0));
  CHECK(csl::pair_exponent([&](double) { return D; }, t, kDim, 2000) ==
        doctest::Approx(want).epsilon(1e-12));
  // the separation enters squared, so its sign cannot matter
  CHECK(csl::pair_exponent([&](double) { return -D; }, t, kDim, 2000) ==
        doctest::Approx(want).epsilon(1e-12));
  CHECK(csl::pair_exponent([&](double) { return D; }, 0.0, kDim, 2000) == 0.0);
}

TEST_CASE("mach-zehnder flip probability saturates at one half") {
  CHECK(csl::mach_zehnder_prob(0.0, kDim) == 0.0);
  const double t = 0.7;
  CHECK(csl::mach_zehnder_prob(t, kDim) ==
        doctest::Approx(0.5 * (1.0 - std::exp(-t))).epsilon(1e-14));
  CHECK(csl::mach_zehnder_prob(1e9, kDim) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("two-slit pattern conserves per-fringe intensity") {
  const auto s = make_slit();
  const double period = std::numbers::pi / (s.k * s.b);
  for (double t : {0.0, 0.5, 3.0}) {
    const double avg = csl::integrate(
                           [&](double th) { return csl::two_slit_intensity(th, t, s); },
                           0.0, period, 2000) /
                       period;
    CHECK(avg == doctest::Approx(s.A_amp * s.A_amp).epsilon(1e-10));
  }
}

TEST_CASE("fringe visibility decays as the off-diagonal factor") {
  const auto s = make_slit();
  for (double t : {0.0, 0.4, 1.0, 2.5})
    CHECK(csl::fringe_visibility(t, s) ==
          doctest::Approx(std::exp(-s.rate() * t)).epsilon(1e-6));
}

TEST_CASE("screen density interpolates between coherent and incoherent") {
  const double amp = 1.0 / std::numbers::sqrt2;
  csl::PacketSpec p1{amp, [](double, double) { return std::complex<double>(1.0); },
                     [](double) { return 2.0; }};
  csl::PacketSpec p2{amp, [](double, double) { return std::complex<double>(1.0); },
                     [](double) { return 2.0; }};
  // identical wavevectors: zero separation history, fully coherent
  CHECK(csl::screen_density(0.0, 1.0, {p1, p2}, kDim, 200) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // widely separated packets for a long time: cross term dies
  csl::PacketSpec p3 = p2;
  p3.wavevector = [](double) { return 400.0; };
  CHECK(csl::screen_density(0.0, 30.0, {p1, p3}, kDim, 4000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(csl::screen_density(0.0, 1.0, {}, kDim, 100),
                  std::invalid_argument);
}
