#pragma once

// Geometric phases of cyclic evolutions. The pure-state route takes the
// total phase arg<psi0|U(T)|psi0> minus the dynamical phase
// gamma_d = -int_0^T <psi|H|psi> dt (Simpson quadrature, kept as a structural
// cross-check even though <H> is constant here). For commuting H0 + H1 with
// psi0 in a degenerate H0 eigenspace the reduced route uses
// arg<psi0|e^{-i H1 T}|psi0> + <psi0|H1|psi0> T. Degenerate mixed states get
// the diagonal phase factor and the order-l off-diagonal factors built from
// the parallel-transport operator.

#include <span>
#include <vector>

#include "model.hpp"
#include "spin_algebra.hpp"

namespace spinphase {

struct PhaseResult {
  double total;              // arg of the cyclic overlap, principal value
  double dynamical;          // -integral of <H> over the cycle
  double geometric;          // total - dynamical wrapped to [0, 2*pi)
  Complex factor;            // exp(i * geometric)
  double overlap_magnitude;  // |<psi0|U(T)|psi0>| (1 for a truly cyclic state)
};

struct GpFactor {
  Complex value;     // unit modulus
  double magnitude;  // |z| before normalization
  int order;         // l (1 for the diagonal factor)
};

// z/|z|; |z| below the gp_magnitude tolerance has no well-defined phase.
Complex phase_normalize(Complex z);

// representative of an angle in [0, 2*pi)
double wrap_2pi(double angle);

PhaseResult pure_state_gp(const StateVector& psi0, const ComplexMatrix& hamiltonian,
                          double period, int simpson_panels = 1024);

// Reduced formula for the commuting splitting. When a ground space is given,
// membership of psi0 is checked first.
PhaseResult reduced_gp_commuting(const StateVector& psi0, const ComplexMatrix& h1, double period,
                                 const GroundSpace* ground = nullptr);

// V_par = e^{i E0 T} sum_k e^{i T <b_k|H1|b_k>} |b_k><b_k| + (1 - P_ground).
// Unitary; undoes both the common dynamical phase and each basis vector's
// drive phase, leaving parallel-transported states behind.
ComplexMatrix parallel_transport_operator(const GroundSpace& ground, const ComplexMatrix& h1,
                                          double period);

// Diagonal mixed-state factor
//   Phi[ sum_k p_k <b_k|e^{-i H1 T}|b_k> e^{i T <b_k|H1|b_k>} ].
GpFactor mixed_gp_factor(std::span<const double> weights, const GroundSpace& ground,
                         const ComplexMatrix& h1, double period);

// Order-l off-diagonal factor Phi[ Tr prod_a U V_a rho_a^{1/l} ].
GpFactor off_diagonal_gp_factor(int order, std::span<const DensityMatrix> rhos,
                                const ComplexMatrix& propagator,
                                std::span<const ComplexMatrix> transports);

}  // namespace spinphase
