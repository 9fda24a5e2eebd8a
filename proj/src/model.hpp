#pragma once

// Driven spin-1 x spin-1/2 anisotropic Heisenberg pair:
//
//   H0 = (J/2) (sx Sx + sy Sy + Delta sz Sz),   H1 = B (sz/2 + Sz)
//
// with hbar = 1, Pauli matrices s on the spin-1/2 and spin-1 matrices S.
// Composite basis index is 3*(spin-1/2 index) + (spin-1 index) with spin-1/2
// ordered (up, down) and spin-1 ordered (m = 1, 0, -1), i.e.
// (|u,1>, |u,0>, |u,-1>, |d,1>, |d,0>, |d,-1>).
//
// The module classifies the B = 0 ground-space regime, returns the analytic
// degenerate ground bases in the sign conventions of the closed-form
// eigenvectors (no extra gauge fixing), and builds pure/mixed initial states
// living on that ground space.

#include <span>
#include <vector>

#include "spin_algebra.hpp"

namespace spinphase {

inline constexpr int kDim = 6;
// handy basis offsets, same ordering as above
inline constexpr int kUpOne = 0;
inline constexpr int kUpZero = 1;
inline constexpr int kUpMinus = 2;
inline constexpr int kDownOne = 3;
inline constexpr int kDownZero = 4;
inline constexpr int kDownMinus = 5;

struct ModelParams {
  double coupling = 1.0;    // J, nonzero for regime classification
  double anisotropy = 0.0;  // Delta
  double field = 0.0;       // B
};

enum class RegimeLabel { AlignedPair, EntangledPair, FourfoldCritical };

struct Regime {
  RegimeLabel label;
  int degeneracy;  // 2 for the pair regimes, 4 at the critical point
};

const char* regime_name(RegimeLabel label);

struct GroundSpace {
  double energy;                   // E0 of H0 (B = 0)
  std::vector<StateVector> basis;  // orthonormal, 6-dim vectors
  Regime regime;
};

ComplexMatrix build_h0(const ModelParams& params);
ComplexMatrix build_h1(const ModelParams& params);

// Regime of the B = 0 ground space. The critical anisotropy is -sign(J);
// |Delta - Delta_c| <= critical window classifies as FourfoldCritical.
Regime classify_regime(double coupling, double anisotropy);

// Closed-form ground basis, cross-checked against the numeric ground space.
// Basis order: aligned (|u,1>, |d,-1>); entangled (|Psi1>, |Psi2>); critical
// (|Psi1>, |Psi2>, |u,1>, |d,-1>) with the pair vectors taken at Delta_c.
GroundSpace analytic_ground_basis(const ModelParams& params);

// Pure state from angles: (theta, phi) on a two-fold ground space gives
// cos(theta) |b0> + sin(theta) e^{i phi} |b1>; (theta1..3, phi1..3) on the
// four-fold space gives amplitudes
//   (s1 s2 c3, s1 s2 s3 e^{i phi1}, s1 c2 e^{i phi2}, c1 e^{i phi3}).
StateVector initial_pure_state(const GroundSpace& ground, std::span<const double> angles);

// Convex mixture sum_k p_k |b_k><b_k| over the ground basis. Weights must be
// nonnegative and sum to 1 within tolerance (then renormalized exactly).
DensityMatrix initial_mixed_state(const GroundSpace& ground, std::span<const double> weights);

}  // namespace spinphase
