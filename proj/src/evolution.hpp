#pragma once

// Exact unitary propagation under a time-independent Hamiltonian and the
// cyclic-period search: the minimal T > 0 making every H1 level splitting on
// the support of rho0 an integer multiple of 2*pi/T, found by rationalizing
// splitting ratios with continued fractions and verified post hoc.

#include "model.hpp"
#include "spin_algebra.hpp"

namespace spinphase {

enum class PeriodMethod { AnalyticCommensurate, NumericScan };

const char* period_method_name(PeriodMethod method);

struct CyclicPeriod {
  double period;       // T
  int winding;         // requested multiple n of the minimal period
  PeriodMethod method;
  bool stationary;     // [rho0, H1] = 0: any T is cyclic, period is the 2*pi/max|h| fallback
};

StateVector evolve_pure(const StateVector& psi0, const ComplexMatrix& hamiltonian, double time);
DensityMatrix evolve_density(const DensityMatrix& rho0, const ComplexMatrix& hamiltonian,
                             double time);

// n-th multiple of the minimal cyclic period of rho0 under the drive H1.
// Stationary rho0 ([rho0, H1] = 0) returns the fallback T = 2*pi/max|h| over
// the support, flagged as such. Raises NoDrive when H1 vanishes on the
// support and Incommensurate when no rational relation exists (or the
// mandatory rho(T) = rho0 verification fails).
CyclicPeriod cyclic_period(const DensityMatrix& rho0, const ComplexMatrix& h1, int winding);

// Drive period of the regime itself: cyclic_period of the uniform
// superposition over the full ground basis. Every ground-space state is
// cyclic at this T, which is the loop the closed-form phases refer to.
CyclicPeriod regime_reference_period(const GroundSpace& ground, const ComplexMatrix& h1,
                                     int winding);

}  // namespace spinphase
