#include "model.hpp"

#include <cmath>
#include <string>

namespace spinphase {

namespace {

ComplexVector basis_state(int index) {
  ComplexVector v = ComplexVector::Zero(kDim);
  v(index) = 1.0;
  return v;
}

// pair eigenvectors of the m = -1/2 and m = +1/2 blocks, written with the
// |d,0> (resp. |u,0>) amplitude positive; which energy branch they sit on
// depends on sign(J)
StateVector pair_vector_minus(double delta, double sign) {
  // sign = +1: |d,0> - ((Delta + root)/(2 sqrt 2)) |u,-1>   (J > 0 branch)
  // sign = -1: ((root - Delta)/(2 sqrt 2)) |u,-1> + |d,0>   (J < 0 branch)
  const double root = std::sqrt(delta * delta + 8.0);
  ComplexVector v = ComplexVector::Zero(kDim);
  if (sign > 0) {
    v(kDownZero) = 1.0;
    v(kUpMinus) = -(delta + root) / (2.0 * std::sqrt(2.0));
  } else {
    v(kUpMinus) = (root - delta) / (2.0 * std::sqrt(2.0));
    v(kDownZero) = 1.0;
  }
  return StateVector(std::move(v));
}

StateVector pair_vector_plus(double delta, double sign) {
  // sign = +1: |d,1> + ((Delta - root)/(2 sqrt 2)) |u,0>    (J > 0 branch)
  // sign = -1: ((root + Delta)/(2 sqrt 2)) |u,0> + |d,1>    (J < 0 branch)
  const double root = std::sqrt(delta * delta + 8.0);
  ComplexVector v = ComplexVector::Zero(kDim);
  if (sign > 0) {
    v(kDownOne) = 1.0;
    v(kUpZero) = (delta - root) / (2.0 * std::sqrt(2.0));
  } else {
    v(kUpZero) = (root + delta) / (2.0 * std::sqrt(2.0));
    v(kDownOne) = 1.0;
  }
  return StateVector(std::move(v));
}

void verify_against_numeric_ground(const GroundSpace& ground, const ComplexMatrix& h0) {
  const HermitianEig eig = hermitian_eig(h0);
  if (std::abs(ground.energy - eig.eigenvalues(0)) > tol.ground_match)
    fail(ErrorCode::InvalidArgument,
         "analytic_ground_basis: analytic energy disagrees with the numeric spectrum");
  for (size_t a = 0; a < ground.basis.size(); ++a) {
    const ComplexVector& v = ground.basis[a].amplitudes();
    if ((h0 * v - ground.energy * v).norm() > tol.ground_match)
      fail(ErrorCode::InvalidArgument,
           "analytic_ground_basis: basis vector fails the eigenvector residual check");
    for (size_t b = 0; b < a; ++b)
      if (std::abs(ground.basis[b].amplitudes().dot(v)) > tol.orthonormal)
        fail(ErrorCode::InvalidArgument, "analytic_ground_basis: basis is not orthogonal");
  }
}

}  // namespace

const char* regime_name(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::AlignedPair: return "ALIGNED_PAIR";
    case RegimeLabel::EntangledPair: return "ENTANGLED_PAIR";
    case RegimeLabel::FourfoldCritical: return "FOURFOLD_CRITICAL";
  }
  return "UNKNOWN";
}

ComplexMatrix build_h0(const ModelParams& params) {
  const SpinHalfOperators s = spin_half_operators();
  const SpinOneOperators big = spin_one_operators();
  const double j = params.coupling;
  return 0.5 * j *
         (kron(s.x, big.x) + kron(s.y, big.y) + params.anisotropy * kron(s.z, big.z));
}

ComplexMatrix build_h1(const ModelParams& params) {
  const SpinHalfOperators s = spin_half_operators();
  const SpinOneOperators big = spin_one_operators();
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  return params.field * (0.5 * kron(s.z, id3) + kron(id2, big.z));
}

Regime classify_regime(double coupling, double anisotropy) {
  if (coupling == 0.0)
    fail(ErrorCode::InvalidArgument, "classify_regime: J = 0 has no exchange ground space");
  const double critical = coupling > 0.0 ? -1.0 : 1.0;
  if (std::abs(anisotropy - critical) <= tol.critical_delta)
    return {RegimeLabel::FourfoldCritical, 4};
  // aligned pair wins on the far side of the critical anisotropy
  const bool aligned = coupling > 0.0 ? anisotropy < critical : anisotropy > critical;
  return aligned ? Regime{RegimeLabel::AlignedPair, 2} : Regime{RegimeLabel::EntangledPair, 2};
}

GroundSpace analytic_ground_basis(const ModelParams& params) {
  const double j = params.coupling;
  const double delta = params.anisotropy;
  const Regime regime = classify_regime(j, delta);
  const double sign = j > 0.0 ? 1.0 : -1.0;

  GroundSpace ground;
  ground.regime = regime;
  switch (regime.label) {
    case RegimeLabel::AlignedPair:
      ground.energy = 0.5 * j * delta;
      ground.basis.emplace_back(basis_state(kUpOne));
      ground.basis.emplace_back(basis_state(kDownMinus));
      break;
    case RegimeLabel::EntangledPair:
      ground.energy = 0.25 * j * (-delta - sign * std::sqrt(delta * delta + 8.0));
      ground.basis.push_back(pair_vector_minus(delta, sign));
      ground.basis.push_back(pair_vector_plus(delta, sign));
      break;
    case RegimeLabel::FourfoldCritical: {
      const double critical = -sign;
      ground.energy = 0.5 * j * critical;
      ground.basis.push_back(pair_vector_minus(critical, sign));
      ground.basis.push_back(pair_vector_plus(critical, sign));
      ground.basis.emplace_back(basis_state(kUpOne));
      ground.basis.emplace_back(basis_state(kDownMinus));
      break;
    }
  }
  verify_against_numeric_ground(ground, build_h0(params));
  return ground;
}

StateVector initial_pure_state(const GroundSpace& ground, std::span<const double> angles) {
  const int deg = ground.regime.degeneracy;
  const size_t expected = deg == 2 ? 2 : 6;
  if (angles.size() != expected)
    fail(ErrorCode::InvalidArgument,
         "initial_pure_state: ground degeneracy " + std::to_string(deg) + " expects " +
             std::to_string(expected) + " angles, got " + std::to_string(angles.size()));

  ComplexVector v = ComplexVector::Zero(kDim);
  if (deg == 2) {
    const double theta = angles[0], phi = angles[1];
    v = std::cos(theta) * ground.basis[0].amplitudes() +
        std::sin(theta) * std::exp(Complex(0.0, phi)) * ground.basis[1].amplitudes();
  } else {
    const double t1 = angles[0], t2 = angles[1], t3 = angles[2];
    const double p1 = angles[3], p2 = angles[4], p3 = angles[5];
    const Complex a0 = std::sin(t1) * std::sin(t2) * std::cos(t3);
    const Complex a1 = std::sin(t1) * std::sin(t2) * std::sin(t3) * std::exp(Complex(0.0, p1));
    const Complex a2 = std::sin(t1) * std::cos(t2) * std::exp(Complex(0.0, p2));
    const Complex a3 = std::cos(t1) * std::exp(Complex(0.0, p3));
    v = a0 * ground.basis[0].amplitudes() + a1 * ground.basis[1].amplitudes() +
        a2 * ground.basis[2].amplitudes() + a3 * ground.basis[3].amplitudes();
  }
  return StateVector(std::move(v));
}

DensityMatrix initial_mixed_state(const GroundSpace& ground, std::span<const double> weights) {
  const size_t deg = static_cast<size_t>(ground.regime.degeneracy);
  if (weights.size() != deg)
    fail(ErrorCode::InvalidArgument,
         "initial_mixed_state: expected " + std::to_string(deg) + " weights, got " +
             std::to_string(weights.size()));
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) fail(ErrorCode::InvalidArgument, "initial_mixed_state: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.weight_sum)
    fail(ErrorCode::InvalidArgument, "initial_mixed_state: weights must sum to 1");
  ComplexMatrix rho = ComplexMatrix::Zero(kDim, kDim);
  for (size_t k = 0; k < deg; ++k) {
    const ComplexVector& b = ground.basis[k].amplitudes();
    rho += (weights[k] / sum) * (b * b.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

}  // namespace spinphase
