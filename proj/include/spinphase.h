#ifndef SPINPHASE_H
#define SPINPHASE_H

/*
 * C interface to the spinphase engine: exact geometric phases of a driven
 * spin-1 x spin-1/2 anisotropic Heisenberg pair
 *
 *   H = H0 + H1,  H0 = (J/2)(sx Sx + sy Sy + Delta sz Sz),  H1 = B(sz/2 + Sz)
 *
 * in units with hbar = 1. All handles are opaque; every call returns an
 * sp_status and writes results through out-pointers. Matrices are exported
 * row major as interleaved (re, im) doubles in the composite basis
 * (|u,1>, |u,0>, |u,-1>, |d,1>, |d,0>, |d,-1>). Handles are immutable after
 * creation, so sharing them across threads is safe; the error detail string
 * from sp_last_error() is per thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_INVALID_ARGUMENT = 1,
  SP_ERR_NOT_HERMITIAN = 2,
  SP_ERR_NOT_PSD = 3,
  SP_ERR_DIM_MISMATCH = 4,
  SP_ERR_GP_UNDEFINED = 5,   /* phase-factor magnitude below threshold */
  SP_ERR_INCOMMENSURATE = 6, /* level splittings admit no rational relation */
  SP_ERR_NO_DRIVE = 7        /* B = 0 leaves no finite cyclic period */
} sp_status;

typedef enum sp_regime {
  SP_REGIME_ALIGNED_PAIR = 0,
  SP_REGIME_ENTANGLED_PAIR = 1,
  SP_REGIME_FOURFOLD_CRITICAL = 2
} sp_regime;

typedef enum sp_operator {
  SP_OPERATOR_H0 = 0,
  SP_OPERATOR_H1 = 1,
  SP_OPERATOR_H = 2
} sp_operator;

typedef enum sp_period_method {
  SP_PERIOD_ANALYTIC_COMMENSURATE = 0,
  SP_PERIOD_NUMERIC_SCAN = 1
} sp_period_method;

typedef struct sp_model sp_model; /* Hamiltonians + classified ground space */
typedef struct sp_state sp_state; /* pure or mixed state on the ground space */

typedef struct sp_period {
  double t;
  int winding;
  sp_period_method method;
  int stationary; /* nonzero: [rho0, H] = 0, t is the 2*pi/max|h| fallback */
} sp_period;

typedef struct sp_phase {
  double total;      /* arg of the cyclic overlap, principal value */
  double dynamical;  /* -integral of <H> over the cycle */
  double geometric;  /* total - dynamical, in [0, 2*pi) */
  double factor_re;  /* exp(i * geometric) */
  double factor_im;
  double overlap_magnitude;
} sp_phase;

typedef struct sp_gp_factor {
  double value_re; /* unit-modulus phase factor */
  double value_im;
  double magnitude; /* |z| before normalization */
  int order;
} sp_gp_factor;

/* static name for a status code */
const char* sp_status_name(sp_status status);

/* detail message of this thread's most recent failure ("" if none) */
const char* sp_last_error(void);

/* --- model ---------------------------------------------------------- */

/* J must be nonzero; Delta and B are free. */
sp_status sp_model_create(double coupling_j, double anisotropy_delta, double field_b,
                          sp_model** out_model);
void sp_model_destroy(sp_model* model);

sp_status sp_model_regime(const sp_model* model, sp_regime* out_regime, int* out_degeneracy);

/* ground energy of H0 at B = 0 */
sp_status sp_model_ground_energy(const sp_model* model, double* out_energy);

/* six eigenvalues, ascending */
sp_status sp_model_spectrum(const sp_model* model, sp_operator which, double out_eigenvalues[6]);

/* 6x6 matrix, 72 doubles (re, im interleaved, row major) */
sp_status sp_model_operator_matrix(const sp_model* model, sp_operator which,
                                   double out_matrix[72]);

/* U(t) = exp(-i H t) */
sp_status sp_model_propagator(const sp_model* model, double time, double out_matrix[72]);

/* ground basis vectors, one block of 12 doubles (6 amplitudes) per vector;
 * capacity_doubles must be at least 12 * degeneracy */
sp_status sp_model_ground_basis(const sp_model* model, double* out_vectors,
                                size_t capacity_doubles);

/* --- states --------------------------------------------------------- */

/* angle_count is 2 (theta, phi) on a two-fold ground space or 6
 * (theta1..3, phi1..3) on the four-fold one */
sp_status sp_state_create_pure(const sp_model* model, const double* angles, size_t angle_count,
                               sp_state** out_state);

/* one nonnegative weight per ground basis vector, summing to 1 */
sp_status sp_state_create_mixed(const sp_model* model, const double* weights, size_t weight_count,
                                sp_state** out_state);
void sp_state_destroy(sp_state* state);

sp_status sp_state_is_mixed(const sp_state* state, int* out_is_mixed);

/* pure states only: 6 amplitudes as 12 doubles */
sp_status sp_state_vector(const sp_state* state, double out_amplitudes[12]);

/* density matrix of either kind of state */
sp_status sp_state_density(const sp_state* state, double out_matrix[72]);

/* --- periods and phases ---------------------------------------------- */

/* drive period of the regime (full ground support); every ground-space
 * state is cyclic at this T, which is the loop the closed forms refer to */
sp_status sp_regime_period(const sp_model* model, int winding, sp_period* out_period);

/* state-specific minimal commensurate period */
sp_status sp_state_period(const sp_model* model, const sp_state* state, int winding,
                          sp_period* out_period);

/* total/dynamical/geometric phase of a pure cyclic state over one period */
sp_status sp_pure_gp(const sp_model* model, const sp_state* state, double period,
                     int simpson_panels, sp_phase* out_phase);

/* reduced commuting-splitting formula, pure states in the ground space */
sp_status sp_reduced_gp(const sp_model* model, const sp_state* state, double period,
                        sp_phase* out_phase);

/* diagonal mixed-state phase factor, mixed states only */
sp_status sp_mixed_gp(const sp_model* model, const sp_state* state, double period,
                      sp_gp_factor* out_factor);

/* order-l off-diagonal factor; weight_rows holds `order` rows of `degeneracy`
 * mixture weights, each row defining one density matrix on the ground basis */
sp_status sp_off_diagonal_gp(const sp_model* model, double period, int order,
                             const double* weight_rows, sp_gp_factor* out_factor);

/* --- closed forms ----------------------------------------------------- */

/* theta_count is 1 (theta) for the pair regimes, 3 (theta1..3) critical */
sp_status sp_closed_form_gp(sp_regime regime, const double* thetas, size_t theta_count,
                            double* out_gp);

/* diagonal ground-basis mixtures carry no geometric phase */
sp_status sp_closed_form_mixed_gp(sp_regime regime, double* out_gp);

#ifdef __cplusplus
}
#endif

#endif /* SPINPHASE_H */
