#include "phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void require_period(double period) {
  if (!(period > 0.0)) fail(ErrorCode::InvalidArgument, "period must be positive");
}

double real_expectation(const ComplexVector& psi, const ComplexMatrix& op) {
  return psi.dot(op * psi).real();
}

void check_ground_membership(const StateVector& psi0, const GroundSpace& ground) {
  ComplexVector projected = ComplexVector::Zero(psi0.dim());
  for (const StateVector& b : ground.basis)
    projected += b.amplitudes() * b.amplitudes().dot(psi0.amplitudes());
  if ((projected - psi0.amplitudes()).norm() > tol.eig_residual)
    fail(ErrorCode::InvalidArgument,
         "reduced_gp_commuting: psi0 does not lie in the supplied ground space");
}

}  // namespace

Complex phase_normalize(Complex z) {
  const double magnitude = std::abs(z);
  if (magnitude < tol.gp_magnitude)
    fail(ErrorCode::GpUndefined, "phase_normalize: magnitude too small for a defined phase");
  return z / magnitude;
}

double wrap_2pi(double angle) {
  double out = std::fmod(angle, kTwoPi);
  if (out < 0.0) out += kTwoPi;
  if (out >= kTwoPi) out = 0.0;  // fmod roundoff can land exactly on 2*pi
  return out;
}

PhaseResult pure_state_gp(const StateVector& psi0, const ComplexMatrix& hamiltonian,
                          double period, int simpson_panels) {
  require_period(period);
  if (simpson_panels < 1) fail(ErrorCode::InvalidArgument, "pure_state_gp: need >= 1 panel");
  if (hamiltonian.rows() != psi0.dim())
    fail(ErrorCode::DimMismatch, "pure_state_gp: state and Hamiltonian dimensions differ");
  if (!is_hermitian(hamiltonian))
    fail(ErrorCode::NotHermitian, "pure_state_gp: Hamiltonian is not Hermitian");

  // one eigendecomposition serves the propagator at every quadrature node
  const HermitianEig eig = hermitian_eig(hamiltonian);
  const ComplexVector coeffs = eig.eigenvectors.adjoint() * psi0.amplitudes();
  const auto evolve = [&](double t) {
    ComplexVector rotated(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      rotated(k) = std::exp(-kI * eig.eigenvalues(k) * t) * coeffs(k);
    return ComplexVector(eig.eigenvectors * rotated);
  };

  Complex overlap = 0.0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    overlap += std::norm(coeffs(k)) * std::exp(-kI * eig.eigenvalues(k) * period);
  const double overlap_magnitude = std::abs(overlap);
  if (overlap_magnitude <= tol.gp_magnitude)
    fail(ErrorCode::GpUndefined,
         "pure_state_gp: |<psi0|U(T)|psi0>| vanishes, total phase undefined");
  const double total = std::arg(overlap);

  // composite Simpson over 2*panels subintervals
  const Eigen::Index nodes = 2 * static_cast<Eigen::Index>(simpson_panels);
  const double h = period / static_cast<double>(nodes);
  double sum = 0.0;
  for (Eigen::Index i = 0; i <= nodes; ++i) {
    const ComplexVector psi_t = evolve(h * static_cast<double>(i));
    const double energy = psi_t.dot(hamiltonian * psi_t).real();
    const double weight = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += weight * energy;
  }
  const double dynamical = -(h / 3.0) * sum;

  const double geometric = wrap_2pi(total - dynamical);
  return {total, dynamical, geometric, std::exp(kI * geometric), overlap_magnitude};
}

PhaseResult reduced_gp_commuting(const StateVector& psi0, const ComplexMatrix& h1, double period,
                                 const GroundSpace* ground) {
  require_period(period);
  if (h1.rows() != psi0.dim())
    fail(ErrorCode::DimMismatch, "reduced_gp_commuting: state and drive dimensions differ");
  if (ground != nullptr) check_ground_membership(psi0, *ground);

  const ComplexMatrix u1 = matrix_exp_unitary(h1, period);
  const Complex overlap = psi0.amplitudes().dot(u1 * psi0.amplitudes());
  const double overlap_magnitude = std::abs(overlap);
  if (overlap_magnitude <= tol.gp_magnitude)
    fail(ErrorCode::GpUndefined,
         "reduced_gp_commuting: |<psi0|exp(-i H1 T)|psi0>| vanishes, phase undefined");
  const double total = std::arg(overlap);
  const double dynamical = -real_expectation(psi0.amplitudes(), h1) * period;
  const double geometric = wrap_2pi(total - dynamical);
  return {total, dynamical, geometric, std::exp(kI * geometric), overlap_magnitude};
}

ComplexMatrix parallel_transport_operator(const GroundSpace& ground, const ComplexMatrix& h1,
                                          double period) {
  require_period(period);
  const Eigen::Index dim = h1.rows();
  if (dim != ground.basis.front().dim())
    fail(ErrorCode::DimMismatch, "parallel_transport_operator: dimensions differ");
  if (!is_hermitian(h1))
    fail(ErrorCode::NotHermitian, "parallel_transport_operator: drive is not Hermitian");

  ComplexMatrix projector = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix transported = ComplexMatrix::Zero(dim, dim);
  for (const StateVector& b : ground.basis) {
    const ComplexVector& v = b.amplitudes();
    projector += v * v.adjoint();
    transported += std::exp(kI * real_expectation(v, h1) * period) * (v * v.adjoint());
  }
  return std::exp(kI * ground.energy * period) * transported +
         (ComplexMatrix::Identity(dim, dim) - projector);
}

GpFactor mixed_gp_factor(std::span<const double> weights, const GroundSpace& ground,
                         const ComplexMatrix& h1, double period) {
  require_period(period);
  if (weights.size() != ground.basis.size())
    fail(ErrorCode::DimMismatch, "mixed_gp_factor: one weight per ground basis vector");
  const ComplexMatrix u1 = matrix_exp_unitary(h1, period);
  Complex z = 0.0;
  for (size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0.0) fail(ErrorCode::InvalidArgument, "mixed_gp_factor: negative weight");
    const ComplexVector& v = ground.basis[k].amplitudes();
    z += weights[k] * v.dot(u1 * v) * std::exp(kI * real_expectation(v, h1) * period);
  }
  const double magnitude = std::abs(z);
  return {phase_normalize(z), magnitude, 1};
}

GpFactor off_diagonal_gp_factor(int order, std::span<const DensityMatrix> rhos,
                                const ComplexMatrix& propagator,
                                std::span<const ComplexMatrix> transports) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "off_diagonal_gp_factor: order must be >= 1");
  if (rhos.size() != static_cast<size_t>(order) || transports.size() != static_cast<size_t>(order))
    fail(ErrorCode::DimMismatch,
         "off_diagonal_gp_factor: need exactly `order` density matrices and transports");
  const Eigen::Index dim = propagator.rows();
  if (propagator.cols() != dim)
    fail(ErrorCode::DimMismatch, "off_diagonal_gp_factor: propagator must be square");
  if (max_abs(propagator.adjoint() * propagator - ComplexMatrix::Identity(dim, dim)) > tol.unitary)
    fail(ErrorCode::InvalidArgument, "off_diagonal_gp_factor: propagator is not unitary");

  ComplexMatrix product = ComplexMatrix::Identity(dim, dim);
  for (int a = 0; a < order; ++a) {
    if (rhos[a].dim() != dim || transports[a].rows() != dim || transports[a].cols() != dim)
      fail(ErrorCode::DimMismatch, "off_diagonal_gp_factor: dimension mismatch at factor " +
                                       std::to_string(a));
    if (max_abs(transports[a].adjoint() * transports[a] - ComplexMatrix::Identity(dim, dim)) >
        tol.unitary)
      fail(ErrorCode::InvalidArgument,
           "off_diagonal_gp_factor: transport " + std::to_string(a) + " is not unitary");
    product = product * propagator * transports[a] * psd_root(rhos[a], order);
  }
  const Complex z = product.trace();
  const double magnitude = std::abs(z);
  return {phase_normalize(z), magnitude, order};
}

}  // namespace spinphase
