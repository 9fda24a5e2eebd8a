#include "closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace spinphase {

namespace {

double reduce_2pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double out = std::fmod(angle, two_pi);
  if (out < 0.0) out += two_pi;
  if (out >= two_pi) out = 0.0;
  return out;
}

}  // namespace

double gp_closed_form(RegimeLabel regime, std::span<const double> thetas) {
  const size_t expected = regime == RegimeLabel::FourfoldCritical ? 3 : 1;
  if (thetas.size() != expected)
    fail(ErrorCode::InvalidArgument, "gp_closed_form: expected " + std::to_string(expected) +
                                         " angles, got " + std::to_string(thetas.size()));
  switch (regime) {
    case RegimeLabel::AlignedPair: {
      const double c = std::cos(thetas[0]);
      return reduce_2pi(2.0 * std::numbers::pi * c * c);
    }
    case RegimeLabel::EntangledPair: {
      const double s = std::sin(thetas[0]);
      return reduce_2pi(2.0 * std::numbers::pi * s * s);
    }
    case RegimeLabel::FourfoldCritical: {
      const double c1 = std::cos(thetas[0]), s1 = std::sin(thetas[0]);
      const double c2 = std::cos(thetas[1]), s2 = std::sin(thetas[1]);
      const double value =
          1.0 - 3.0 * c1 * c1 + s1 * s1 * (3.0 * c2 * c2 - std::cos(2.0 * thetas[2]) * s2 * s2);
      return reduce_2pi(std::numbers::pi * value);
    }
  }
  fail(ErrorCode::InvalidArgument, "gp_closed_form: unknown regime");
}

double mixed_gp_closed_form(RegimeLabel) { return 0.0; }

}  // namespace spinphase
