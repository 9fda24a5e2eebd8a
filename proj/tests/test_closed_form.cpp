#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "closed_form.hpp"

using namespace spinphase;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double pair_gp(RegimeLabel regime, double theta) {
  const std::array<double, 1> angles = {theta};
  return gp_closed_form(regime, angles);
}

double quad_gp(double t1, double t2, double t3) {
  const std::array<double, 3> angles = {t1, t2, t3};
  return gp_closed_form(RegimeLabel::FourfoldCritical, angles);
}
}  // namespace

TEST_CASE("pair-regime values at the anchor angles") {
  CHECK(pair_gp(RegimeLabel::AlignedPair, 0.0) == 0.0);  // 2*pi wraps away
  CHECK(pair_gp(RegimeLabel::AlignedPair, kPi / 3.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(pair_gp(RegimeLabel::AlignedPair, kPi / 4.0) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(pair_gp(RegimeLabel::AlignedPair, kPi / 2.0) < 1e-14);

  CHECK(pair_gp(RegimeLabel::EntangledPair, kPi / 2.0) < 1e-14);  // 2*pi wraps away
  CHECK(pair_gp(RegimeLabel::EntangledPair, kPi / 3.0) ==
        doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-14));
  CHECK(pair_gp(RegimeLabel::EntangledPair, 0.0) == 0.0);
}

TEST_CASE("the two pair formulas mirror each other") {
  for (double theta : {0.0, 0.2, 0.7, 1.2, kPi / 2.0}) {
    const double aligned = pair_gp(RegimeLabel::AlignedPair, theta);
    const double entangled = pair_gp(RegimeLabel::EntangledPair, kPi / 2.0 - theta);
    CHECK(std::abs(aligned - entangled) < 1e-13);
  }
}

TEST_CASE("four-fold expression at its landmarks") {
  // the point singled out by the analysis
  CHECK(quad_gp(std::atan(std::sqrt(3.0)), std::atan(std::sqrt(2.0)), kPi / 4.0) ==
        doctest::Approx(kPi).epsilon(1e-14));
  // theta1 = 0 concentrates everything on the last basis ket: pi(1-3) = -2*pi -> 0
  CHECK(quad_gp(0.0, 0.3, 1.1) < 1e-13);
  // theta1 = pi/2, theta2 = 0: pi(1+3) wraps to zero as well
  CHECK(quad_gp(kPi / 2.0, 0.0, 0.5) < 1e-13);
  // generic point against the expression evaluated inline
  const double t1 = 0.7, t2 = 0.8, t3 = 0.9;
  const double raw = kPi * (1.0 - 3.0 * std::cos(t1) * std::cos(t1) +
                            std::sin(t1) * std::sin(t1) *
                                (3.0 * std::cos(t2) * std::cos(t2) -
                                 std::cos(2.0 * t3) * std::sin(t2) * std::sin(t2)));
  const double wrapped = raw - kTwoPi * std::floor(raw / kTwoPi);
  CHECK(quad_gp(t1, t2, t3) == doctest::Approx(wrapped).epsilon(1e-13));
}

TEST_CASE("results live in [0, 2*pi)") {
  for (double theta = 0.0; theta < kPi; theta += 0.1) {
    const double a = pair_gp(RegimeLabel::AlignedPair, theta);
    CHECK(a >= 0.0);
    CHECK(a < kTwoPi);
    const double q = quad_gp(theta, 1.3 * theta, 0.4 * theta);
    CHECK(q >= 0.0);
    CHECK(q < kTwoPi);
  }
}

TEST_CASE("angle-count mismatches are rejected") {
  const std::array<double, 3> three = {0.1, 0.2, 0.3};
  const std::array<double, 1> one = {0.1};
  const std::array<double, 2> two = {0.1, 0.2};
  CHECK_THROWS_AS(gp_closed_form(RegimeLabel::AlignedPair, three), Error);
  CHECK_THROWS_AS(gp_closed_form(RegimeLabel::EntangledPair, two), Error);
  CHECK_THROWS_AS(gp_closed_form(RegimeLabel::FourfoldCritical, one), Error);
}

TEST_CASE("diagonal mixtures have no closed-form phase in any regime") {
  CHECK(mixed_gp_closed_form(RegimeLabel::AlignedPair) == 0.0);
  CHECK(mixed_gp_closed_form(RegimeLabel::EntangledPair) == 0.0);
  CHECK(mixed_gp_closed_form(RegimeLabel::FourfoldCritical) == 0.0);
}
