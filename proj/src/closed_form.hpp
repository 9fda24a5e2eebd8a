#pragma once

// Closed-form geometric-phase values for the three ground-space regimes.
// Deliberately limited to scalar trigonometry with no code shared with the
// numeric pipeline, so these can serve as independent regression oracles:
//
//   aligned pair:  2*pi*cos^2(theta)
//   entangled pair: 2*pi*sin^2(theta)
//   four-fold:     pi*(1 - 3 cos^2 t1 + sin^2 t1 (3 cos^2 t2 - cos(2 t3) sin^2 t2))
//
// all reduced to [0, 2*pi). Diagonal mixtures of the ground basis carry no
// geometric phase in any regime.

#include <span>

#include "model.hpp"

namespace spinphase {

// angles: (theta) for the pair regimes, (theta1, theta2, theta3) critical
double gp_closed_form(RegimeLabel regime, std::span<const double> thetas);

double mixed_gp_closed_form(RegimeLabel regime);

}  // namespace spinphase
