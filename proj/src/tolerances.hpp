#pragma once

namespace spinphase {

// Every numeric threshold used by the engine lives here so the contracts
// stay consistent between the library, the C API and the test suites.
struct Tolerances {
  double hermitian = 1e-12;          // max|M - M^dag| <= hermitian * max(1, max|M|)
  double state_norm = 1e-12;         // pure-state normalization slack
  double trace = 1e-12;              // density-matrix trace deviation
  double psd_eigenvalue = 1e-12;     // eigenvalues in [-psd_eigenvalue, 0) clamp to 0
  double weight_sum = 1e-12;         // mixture weights renormalized within this
  double eig_residual = 1e-10;       // ||M v - lambda v||
  double unitary = 1e-10;            // ||U^dag U - I||_max for propagators
  double orthonormal = 1e-12;        // ground-basis Gram deviation
  double ground_match = 1e-10;       // analytic vs numeric ground energy / residual
  double projector = 1e-9;           // analytic vs numeric ground projector
  double commutator = 1e-12;         // ||[H0, H1]||_max
  double stationary = 1e-12;         // ||[rho0, H1]||_max stationarity test
  double support_population = 1e-12; // rho0 population defining the support
  double commensurate = 1e-9;        // continued-fraction ratio tolerance
  double period_verify = 1e-9;       // ||rho(T) - rho0||_max after a period
  double gp_magnitude = 1e-10;       // |z| below which a phase factor is undefined
  double critical_delta = 1e-12;     // |Delta - Delta_c| window for the critical regime
  double eigenvalue_group = 1e-9;    // relative window when grouping degenerate levels
  long long denominator_cap = 1000000;
};

inline constexpr Tolerances tol{};

}  // namespace spinphase
