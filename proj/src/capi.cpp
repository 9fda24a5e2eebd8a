#include "spinphase.h"

#include <exception>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "closed_form.hpp"
#include "evolution.hpp"
#include "model.hpp"
#include "phase.hpp"
#include "spin_algebra.hpp"

using namespace spinphase;

struct sp_model {
  ModelParams params;
  ComplexMatrix h0, h1, h;
  GroundSpace ground;
};

struct sp_state {
  bool mixed = false;
  std::optional<StateVector> psi;
  DensityMatrix density;
  std::vector<double> weights;  // mixed states keep their mixture weights

  explicit sp_state(DensityMatrix rho) : density(std::move(rho)) {}
};

namespace {

thread_local std::string g_last_error;

sp_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SP_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotHermitian: return SP_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPsd: return SP_ERR_NOT_PSD;
    case ErrorCode::DimMismatch: return SP_ERR_DIM_MISMATCH;
    case ErrorCode::GpUndefined: return SP_ERR_GP_UNDEFINED;
    case ErrorCode::Incommensurate: return SP_ERR_INCOMMENSURATE;
    case ErrorCode::NoDrive: return SP_ERR_NO_DRIVE;
  }
  return SP_ERR_INVALID_ARGUMENT;
}

sp_status set_error(sp_status status, const std::string& detail) {
  g_last_error = detail;
  return status;
}

sp_status invalid(const std::string& detail) { return set_error(SP_ERR_INVALID_ARGUMENT, detail); }

template <typename Fn>
sp_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(SP_ERR_INVALID_ARGUMENT, e.what());
  } catch (...) {
    return set_error(SP_ERR_INVALID_ARGUMENT, "unknown failure");
  }
}

void export_matrix(const ComplexMatrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      *out++ = m(i, j).real();
      *out++ = m(i, j).imag();
    }
}

void export_phase(const PhaseResult& in, sp_phase* out) {
  out->total = in.total;
  out->dynamical = in.dynamical;
  out->geometric = in.geometric;
  out->factor_re = in.factor.real();
  out->factor_im = in.factor.imag();
  out->overlap_magnitude = in.overlap_magnitude;
}

void export_factor(const GpFactor& in, sp_gp_factor* out) {
  out->value_re = in.value.real();
  out->value_im = in.value.imag();
  out->magnitude = in.magnitude;
  out->order = in.order;
}

void export_period(const CyclicPeriod& in, sp_period* out) {
  out->t = in.period;
  out->winding = in.winding;
  out->method = in.method == PeriodMethod::AnalyticCommensurate ? SP_PERIOD_ANALYTIC_COMMENSURATE
                                                                : SP_PERIOD_NUMERIC_SCAN;
  out->stationary = in.stationary ? 1 : 0;
}

sp_regime export_regime(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::AlignedPair: return SP_REGIME_ALIGNED_PAIR;
    case RegimeLabel::EntangledPair: return SP_REGIME_ENTANGLED_PAIR;
    case RegimeLabel::FourfoldCritical: return SP_REGIME_FOURFOLD_CRITICAL;
  }
  return SP_REGIME_ALIGNED_PAIR;
}

std::optional<RegimeLabel> import_regime(sp_regime regime) {
  switch (regime) {
    case SP_REGIME_ALIGNED_PAIR: return RegimeLabel::AlignedPair;
    case SP_REGIME_ENTANGLED_PAIR: return RegimeLabel::EntangledPair;
    case SP_REGIME_FOURFOLD_CRITICAL: return RegimeLabel::FourfoldCritical;
  }
  return std::nullopt;
}

const ComplexMatrix* pick_operator(const sp_model& model, sp_operator which) {
  switch (which) {
    case SP_OPERATOR_H0: return &model.h0;
    case SP_OPERATOR_H1: return &model.h1;
    case SP_OPERATOR_H: return &model.h;
  }
  return nullptr;
}

// the drive period must return every ground-space state to itself under the
// full Hamiltonian; re-verify with H = H0 + H1 before handing it out
void verify_full_cycle(const sp_model& model, const DensityMatrix& rho0, double period) {
  const DensityMatrix evolved = evolve_density(rho0, model.h, period);
  if (max_abs(evolved.entries() - rho0.entries()) > tol.period_verify)
    fail(ErrorCode::Incommensurate,
         "period verification: rho(T) deviates from rho0 under the full Hamiltonian");
}

}  // namespace

const char* sp_status_name(sp_status status) {
  switch (status) {
    case SP_OK: return "OK";
    case SP_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case SP_ERR_NOT_HERMITIAN: return "NOT_HERMITIAN";
    case SP_ERR_NOT_PSD: return "NOT_PSD";
    case SP_ERR_DIM_MISMATCH: return "DIM_MISMATCH";
    case SP_ERR_GP_UNDEFINED: return "GP_UNDEFINED";
    case SP_ERR_INCOMMENSURATE: return "INCOMMENSURATE";
    case SP_ERR_NO_DRIVE: return "NO_DRIVE";
  }
  return "UNKNOWN";
}

const char* sp_last_error(void) { return g_last_error.c_str(); }

sp_status sp_model_create(double coupling_j, double anisotropy_delta, double field_b,
                          sp_model** out_model) {
  if (out_model == nullptr) return invalid("sp_model_create: null out pointer");
  *out_model = nullptr;
  return guarded([&]() {
    auto model = std::make_unique<sp_model>();
    model->params = {coupling_j, anisotropy_delta, field_b};
    model->ground = analytic_ground_basis(model->params);
    model->h0 = build_h0(model->params);
    model->h1 = build_h1(model->params);
    model->h = model->h0 + model->h1;
    *out_model = model.release();
    return SP_OK;
  });
}

void sp_model_destroy(sp_model* model) { delete model; }

sp_status sp_model_regime(const sp_model* model, sp_regime* out_regime, int* out_degeneracy) {
  if (model == nullptr || out_regime == nullptr || out_degeneracy == nullptr)
    return invalid("sp_model_regime: null pointer");
  *out_regime = export_regime(model->ground.regime.label);
  *out_degeneracy = model->ground.regime.degeneracy;
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_model_ground_energy(const sp_model* model, double* out_energy) {
  if (model == nullptr || out_energy == nullptr)
    return invalid("sp_model_ground_energy: null pointer");
  *out_energy = model->ground.energy;
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_model_spectrum(const sp_model* model, sp_operator which,
                            double out_eigenvalues[6]) {
  if (model == nullptr || out_eigenvalues == nullptr)
    return invalid("sp_model_spectrum: null pointer");
  return guarded([&]() {
    const ComplexMatrix* op = pick_operator(*model, which);
    if (op == nullptr) return invalid("sp_model_spectrum: unknown operator selector");
    const HermitianEig eig = hermitian_eig(*op);
    for (int i = 0; i < 6; ++i) out_eigenvalues[i] = eig.eigenvalues(i);
    return SP_OK;
  });
}

sp_status sp_model_operator_matrix(const sp_model* model, sp_operator which,
                                   double out_matrix[72]) {
  if (model == nullptr || out_matrix == nullptr)
    return invalid("sp_model_operator_matrix: null pointer");
  const ComplexMatrix* op = pick_operator(*model, which);
  if (op == nullptr) return invalid("sp_model_operator_matrix: unknown operator selector");
  export_matrix(*op, out_matrix);
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_model_propagator(const sp_model* model, double time, double out_matrix[72]) {
  if (model == nullptr || out_matrix == nullptr)
    return invalid("sp_model_propagator: null pointer");
  return guarded([&]() {
    export_matrix(matrix_exp_unitary(model->h, time), out_matrix);
    return SP_OK;
  });
}

sp_status sp_model_ground_basis(const sp_model* model, double* out_vectors,
                                size_t capacity_doubles) {
  if (model == nullptr || out_vectors == nullptr)
    return invalid("sp_model_ground_basis: null pointer");
  const size_t needed = 12 * model->ground.basis.size();
  if (capacity_doubles < needed)
    return invalid("sp_model_ground_basis: buffer needs " + std::to_string(needed) + " doubles");
  double* out = out_vectors;
  for (const StateVector& b : model->ground.basis)
    for (Eigen::Index i = 0; i < b.dim(); ++i) {
      *out++ = b.amplitudes()(i).real();
      *out++ = b.amplitudes()(i).imag();
    }
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_state_create_pure(const sp_model* model, const double* angles, size_t angle_count,
                               sp_state** out_state) {
  if (model == nullptr || angles == nullptr || out_state == nullptr)
    return invalid("sp_state_create_pure: null pointer");
  *out_state = nullptr;
  return guarded([&]() {
    StateVector psi =
        initial_pure_state(model->ground, std::span<const double>(angles, angle_count));
    auto state = std::make_unique<sp_state>(DensityMatrix::pure(psi));
    state->psi = std::move(psi);
    *out_state = state.release();
    return SP_OK;
  });
}

sp_status sp_state_create_mixed(const sp_model* model, const double* weights, size_t weight_count,
                                sp_state** out_state) {
  if (model == nullptr || weights == nullptr || out_state == nullptr)
    return invalid("sp_state_create_mixed: null pointer");
  *out_state = nullptr;
  return guarded([&]() {
    auto state = std::make_unique<sp_state>(
        initial_mixed_state(model->ground, std::span<const double>(weights, weight_count)));
    state->mixed = true;
    state->weights.assign(weights, weights + weight_count);
    *out_state = state.release();
    return SP_OK;
  });
}

void sp_state_destroy(sp_state* state) { delete state; }

sp_status sp_state_is_mixed(const sp_state* state, int* out_is_mixed) {
  if (state == nullptr || out_is_mixed == nullptr) return invalid("sp_state_is_mixed: null pointer");
  *out_is_mixed = state->mixed ? 1 : 0;
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_state_vector(const sp_state* state, double out_amplitudes[12]) {
  if (state == nullptr || out_amplitudes == nullptr) return invalid("sp_state_vector: null pointer");
  if (!state->psi.has_value())
    return invalid("sp_state_vector: state is mixed, use sp_state_density");
  double* out = out_amplitudes;
  for (Eigen::Index i = 0; i < state->psi->dim(); ++i) {
    *out++ = state->psi->amplitudes()(i).real();
    *out++ = state->psi->amplitudes()(i).imag();
  }
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_state_density(const sp_state* state, double out_matrix[72]) {
  if (state == nullptr || out_matrix == nullptr) return invalid("sp_state_density: null pointer");
  export_matrix(state->density.entries(), out_matrix);
  g_last_error.clear();
  return SP_OK;
}

sp_status sp_regime_period(const sp_model* model, int winding, sp_period* out_period) {
  if (model == nullptr || out_period == nullptr) return invalid("sp_regime_period: null pointer");
  return guarded([&]() {
    const CyclicPeriod period = regime_reference_period(model->ground, model->h1, winding);
    ComplexVector sum = ComplexVector::Zero(kDim);
    for (const StateVector& b : model->ground.basis) sum += b.amplitudes();
    verify_full_cycle(*model, DensityMatrix::pure(StateVector(std::move(sum))), period.period);
    export_period(period, out_period);
    return SP_OK;
  });
}

sp_status sp_state_period(const sp_model* model, const sp_state* state, int winding,
                          sp_period* out_period) {
  if (model == nullptr || state == nullptr || out_period == nullptr)
    return invalid("sp_state_period: null pointer");
  return guarded([&]() {
    const CyclicPeriod period = cyclic_period(state->density, model->h1, winding);
    verify_full_cycle(*model, state->density, period.period);
    export_period(period, out_period);
    return SP_OK;
  });
}

sp_status sp_pure_gp(const sp_model* model, const sp_state* state, double period,
                     int simpson_panels, sp_phase* out_phase) {
  if (model == nullptr || state == nullptr || out_phase == nullptr)
    return invalid("sp_pure_gp: null pointer");
  if (!state->psi.has_value()) return invalid("sp_pure_gp: state is mixed, use sp_mixed_gp");
  return guarded([&]() {
    export_phase(pure_state_gp(*state->psi, model->h, period, simpson_panels), out_phase);
    return SP_OK;
  });
}

sp_status sp_reduced_gp(const sp_model* model, const sp_state* state, double period,
                        sp_phase* out_phase) {
  if (model == nullptr || state == nullptr || out_phase == nullptr)
    return invalid("sp_reduced_gp: null pointer");
  if (!state->psi.has_value()) return invalid("sp_reduced_gp: state is mixed, use sp_mixed_gp");
  return guarded([&]() {
    export_phase(reduced_gp_commuting(*state->psi, model->h1, period, &model->ground), out_phase);
    return SP_OK;
  });
}

sp_status sp_mixed_gp(const sp_model* model, const sp_state* state, double period,
                      sp_gp_factor* out_factor) {
  if (model == nullptr || state == nullptr || out_factor == nullptr)
    return invalid("sp_mixed_gp: null pointer");
  if (!state->mixed) return invalid("sp_mixed_gp: state is pure, use sp_pure_gp or sp_reduced_gp");
  return guarded([&]() {
    export_factor(mixed_gp_factor(state->weights, model->ground, model->h1, period), out_factor);
    return SP_OK;
  });
}

sp_status sp_off_diagonal_gp(const sp_model* model, double period, int order,
                             const double* weight_rows, sp_gp_factor* out_factor) {
  if (model == nullptr || weight_rows == nullptr || out_factor == nullptr)
    return invalid("sp_off_diagonal_gp: null pointer");
  if (order < 1) return invalid("sp_off_diagonal_gp: order must be >= 1");
  return guarded([&]() {
    const size_t deg = model->ground.basis.size();
    std::vector<DensityMatrix> rhos;
    rhos.reserve(static_cast<size_t>(order));
    for (int a = 0; a < order; ++a)
      rhos.push_back(initial_mixed_state(
          model->ground, std::span<const double>(weight_rows + a * deg, deg)));
    const ComplexMatrix transport =
        parallel_transport_operator(model->ground, model->h1, period);
    const std::vector<ComplexMatrix> transports(static_cast<size_t>(order), transport);
    const ComplexMatrix propagator = matrix_exp_unitary(model->h, period);
    export_factor(off_diagonal_gp_factor(order, rhos, propagator, transports), out_factor);
    return SP_OK;
  });
}

sp_status sp_closed_form_gp(sp_regime regime, const double* thetas, size_t theta_count,
                            double* out_gp) {
  if (thetas == nullptr || out_gp == nullptr) return invalid("sp_closed_form_gp: null pointer");
  return guarded([&]() {
    const auto label = import_regime(regime);
    if (!label) return invalid("sp_closed_form_gp: unknown regime");
    *out_gp = gp_closed_form(*label, std::span<const double>(thetas, theta_count));
    return SP_OK;
  });
}

sp_status sp_closed_form_mixed_gp(sp_regime regime, double* out_gp) {
  if (out_gp == nullptr) return invalid("sp_closed_form_mixed_gp: null pointer");
  const auto label = import_regime(regime);
  if (!label) return invalid("sp_closed_form_mixed_gp: unknown regime");
  *out_gp = mixed_gp_closed_form(*label);
  g_last_error.clear();
  return SP_OK;
}
