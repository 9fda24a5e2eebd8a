#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "closed_form.hpp"
#include "evolution.hpp"
#include "phase.hpp"
#include "test_util.hpp"

using namespace spinphase;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

struct Pipeline {
  GroundSpace ground;
  ComplexMatrix h0, h1, h;
  double period;
};

Pipeline make_pipeline(double coupling, double anisotropy, double field) {
  const ModelParams params{coupling, anisotropy, field};
  Pipeline p{analytic_ground_basis(params), build_h0(params), build_h1(params),
             ComplexMatrix(), 0.0};
  p.h = p.h0 + p.h1;
  p.period = regime_reference_period(p.ground, p.h1, 1).period;
  return p;
}
}  // namespace

TEST_CASE("wrap_2pi and phase_normalize basics") {
  CHECK(wrap_2pi(0.0) == 0.0);
  CHECK(wrap_2pi(kTwoPi) == 0.0);
  CHECK(wrap_2pi(kTwoPi + 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(wrap_2pi(-0.5) == doctest::Approx(kTwoPi - 0.5).epsilon(1e-14));
  CHECK(wrap_2pi(7.0 * kPi) == doctest::Approx(kPi).epsilon(1e-12));

  CHECK(std::abs(phase_normalize(Complex(0.0, 2.0)) - kI) < 1e-15);
  CHECK(std::abs(phase_normalize(Complex(3.0, 4.0)) - Complex(0.6, 0.8)) < 1e-15);
  CHECK(code_of([] { phase_normalize(Complex(1e-12, 0.0)); }) == ErrorCode::GpUndefined);
}

TEST_CASE("aligned pair reproduces 2*pi*cos^2(theta)") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  CHECK(p.period == doctest::Approx(kTwoPi / 3.0).epsilon(1e-14));

  const std::array<double, 2> angles = {kPi / 3.0, 0.5};
  const StateVector psi = initial_pure_state(p.ground, angles);
  const PhaseResult result = pure_state_gp(psi, p.h, p.period);
  CHECK(result.geometric == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(result.overlap_magnitude == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(result.factor - std::exp(kI * (kPi / 2.0))) < 1e-12);

  // a lone basis ket acquires no geometric phase
  const std::array<double, 2> north = {0.0, 0.0};
  const PhaseResult trivial = pure_state_gp(initial_pure_state(p.ground, north), p.h, p.period);
  CHECK(std::abs(trivial.factor - Complex(1.0)) < 1e-12);
}

TEST_CASE("entangled pair reproduces 2*pi*sin^2(theta)") {
  for (double coupling : {1.0, -1.0}) {
    const Pipeline p = make_pipeline(coupling, 0.0, 1.0);
    CHECK(p.period == doctest::Approx(kTwoPi).epsilon(1e-14));
    for (double theta : {0.4, 1.1}) {
      const std::array<double, 2> angles = {theta, 1.7};
      const PhaseResult result =
          pure_state_gp(initial_pure_state(p.ground, angles), p.h, p.period);
      const double target = kTwoPi * std::sin(theta) * std::sin(theta);
      CHECK(std::abs(result.factor - std::exp(kI * target)) < 1e-12);
    }
  }
}

TEST_CASE("four-fold special point carries a pi phase") {
  const Pipeline p = make_pipeline(1.0, -1.0, 1.0);
  const std::array<double, 6> magic = {std::atan(std::sqrt(3.0)), std::atan(std::sqrt(2.0)),
                                       kPi / 4.0, 0.0, 0.0, 0.0};
  const PhaseResult result = pure_state_gp(initial_pure_state(p.ground, magic), p.h, p.period);
  CHECK(std::abs(result.factor - std::exp(kI * kPi)) < 1e-12);
  CHECK(result.geometric == doctest::Approx(kPi).epsilon(1e-10));
  // and the closed form agrees
  const std::array<double, 3> thetas = {magic[0], magic[1], magic[2]};
  CHECK(gp_closed_form(RegimeLabel::FourfoldCritical, thetas) ==
        doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("a flipped dynamical-phase sign would be caught by the regression") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  const std::array<double, 2> angles = {kPi / 3.0, 0.0};
  const PhaseResult result = pure_state_gp(initial_pure_state(p.ground, angles), p.h, p.period);
  const double target = kTwoPi * std::cos(kPi / 3.0) * std::cos(kPi / 3.0);  // pi/2
  CHECK(std::abs(std::exp(kI * result.geometric) - std::exp(kI * target)) < 1e-12);
  const double mutated = wrap_2pi(result.total + result.dynamical);
  CHECK(std::abs(std::exp(kI * mutated) - std::exp(kI * target)) > 0.5);
}

TEST_CASE("reduced formula agrees with the full propagation") {
  testutil::Rng rng(101);
  for (double anisotropy : {-2.0, 0.0, -1.0}) {
    const Pipeline p = make_pipeline(1.0, anisotropy, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> angles;
      if (p.ground.regime.degeneracy == 2)
        angles = {rng.uniform(0.0, kPi), rng.uniform(0.0, kTwoPi)};
      else
        angles = {rng.uniform(0.0, kPi),    rng.uniform(0.0, kPi),
                  rng.uniform(0.0, kPi),    rng.uniform(0.0, kTwoPi),
                  rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
      const StateVector psi = initial_pure_state(p.ground, angles);
      const PhaseResult full = pure_state_gp(psi, p.h, p.period);
      const PhaseResult reduced = reduced_gp_commuting(psi, p.h1, p.period, &p.ground);
      CHECK(std::abs(full.factor - reduced.factor) < 1e-12);
    }
  }
  // membership check rejects a state outside the ground space
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  ComplexVector excited = ComplexVector::Zero(kDim);
  excited(kUpZero) = 1.0;
  CHECK(code_of([&] { reduced_gp_commuting(StateVector(excited), p.h1, p.period, &p.ground); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("pure_state_gp validates its inputs and detects dead overlaps") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  const std::array<double, 2> angles = {kPi / 4.0, 0.0};
  const StateVector psi = initial_pure_state(p.ground, angles);
  CHECK(code_of([&] { pure_state_gp(psi, p.h, -1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { pure_state_gp(psi, p.h, p.period, 0); }) == ErrorCode::InvalidArgument);

  // halfway through the cycle the equal-weight superposition is orthogonal
  // to where it started: no phase to speak of
  CHECK(code_of([&] { pure_state_gp(psi, p.h, p.period / 2.0); }) == ErrorCode::GpUndefined);
}

TEST_CASE("parallel transport operator has the expected matrix") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);  // T = 2*pi/3, E0 = -1
  const ComplexMatrix v = parallel_transport_operator(p.ground, p.h1, p.period);
  // e^{i E0 T} e^{+- i pi} on the two stretched kets; identity elsewhere
  const Complex ground_phase = std::exp(kI * (-p.period)) * std::exp(kI * kPi);
  CHECK(std::abs(v(kUpOne, kUpOne) - ground_phase) < 1e-13);
  CHECK(std::abs(v(kDownMinus, kDownMinus) - ground_phase) < 1e-13);
  CHECK(std::abs(v(kUpZero, kUpZero) - Complex(1.0)) < 1e-15);
  CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(kDim, kDim)) < 1e-13);

  // V undoes the cyclic evolution on every ground state: U(T) V = 1 there
  const ComplexMatrix u = matrix_exp_unitary(p.h, p.period);
  for (const StateVector& b : p.ground.basis)
    CHECK((u * v * b.amplitudes() - b.amplitudes()).norm() < 1e-12);
}

TEST_CASE("diagonal ground mixtures carry no geometric phase in this model") {
  testutil::Rng rng(7);
  for (double coupling : {1.0, -1.0}) {
    for (double anisotropy : {-2.0, 0.0, -1.0}) {
      const Pipeline p = make_pipeline(coupling, coupling > 0 ? anisotropy : -anisotropy, 1.0);
      const int deg = p.ground.regime.degeneracy;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> weights(static_cast<size_t>(deg));
        double sum = 0.0;
        for (double& w : weights) {
          w = rng.uniform(0.05, 1.0);
          sum += w;
        }
        for (double& w : weights) w /= sum;
        const GpFactor factor = mixed_gp_factor(weights, p.ground, p.h1, p.period);
        CHECK(std::abs(factor.value - Complex(1.0)) < 1e-13);
        CHECK(factor.order == 1);
      }
    }
  }
}

// A synthetic commuting pair with a non-diagonal drive block on the ground
// space. Every quantity is reproduced by hand from 2x2 trigonometry, making
// this an oracle for the propagator, the transport operator and both
// mixed-state factors in a regime where none of them are trivially 1.
namespace synthetic {

const double kGroundEnergy = -1.0;
const double kT = 1.3;

ComplexMatrix h0() {
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  const std::array<double, 6> diag = {-1.0, -1.0, 0.0, 0.5, 1.5, 2.5};
  for (int i = 0; i < 6; ++i) m(i, i) = diag[static_cast<size_t>(i)];
  return m;
}

// ground block 0.15*I + v.sigma with v = (0.3, 0.2, 0.25); diagonal tail
ComplexMatrix h1() {
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  m(0, 0) = 0.4;
  m(0, 1) = Complex(0.3, -0.2);
  m(1, 0) = Complex(0.3, 0.2);
  m(1, 1) = -0.1;
  m(2, 2) = 0.7;
  m(3, 3) = 1.1;
  m(4, 4) = -0.3;
  m(5, 5) = 0.2;
  return m;
}

GroundSpace ground() {
  ComplexVector e0 = ComplexVector::Zero(6), e1 = ComplexVector::Zero(6);
  e0(0) = 1.0;
  e1(1) = 1.0;
  return {kGroundEnergy,
          {StateVector(e0), StateVector(e1)},
          Regime{RegimeLabel::AlignedPair, 2}};
}

// exp(-i t (c I + v.sigma)) on the ground block, by the su(2) identity
std::array<Complex, 4> ground_block_exp(double t) {
  const double c = 0.15, vx = 0.3, vy = 0.2, vz = 0.25;
  const double len = std::sqrt(vx * vx + vy * vy + vz * vz);
  const Complex scale = std::exp(-kI * c * t);
  const double cosl = std::cos(len * t), sinl = std::sin(len * t);
  return {scale * (cosl - kI * sinl * vz / len), scale * (-kI * sinl * (vx - kI * vy) / len),
          scale * (-kI * sinl * (vx + kI * vy) / len), scale * (cosl + kI * sinl * vz / len)};
}

ComplexMatrix propagator_oracle() {
  ComplexMatrix u = ComplexMatrix::Zero(6, 6);
  const auto block = ground_block_exp(kT);
  const Complex ground_shift = std::exp(-kI * kGroundEnergy * kT);
  u(0, 0) = ground_shift * block[0];
  u(0, 1) = ground_shift * block[1];
  u(1, 0) = ground_shift * block[2];
  u(1, 1) = ground_shift * block[3];
  const std::array<double, 4> tail = {0.0 + 0.7, 0.5 + 1.1, 1.5 - 0.3, 2.5 + 0.2};
  for (int i = 0; i < 4; ++i) u(i + 2, i + 2) = std::exp(-kI * tail[static_cast<size_t>(i)] * kT);
  return u;
}

ComplexMatrix transport_oracle() {
  ComplexMatrix v = ComplexMatrix::Identity(6, 6);
  const Complex common = std::exp(kI * kGroundEnergy * kT);
  v(0, 0) = common * std::exp(kI * 0.4 * kT);   // <e0|H1|e0>
  v(1, 1) = common * std::exp(kI * -0.1 * kT);  // <e1|H1|e1>
  return v;
}

}  // namespace synthetic

TEST_CASE("synthetic commuting pair: propagator and transport match 2x2 trigonometry") {
  const ComplexMatrix h = synthetic::h0() + synthetic::h1();
  CHECK(max_abs(synthetic::h0() * synthetic::h1() - synthetic::h1() * synthetic::h0()) == 0.0);
  CHECK(max_abs(matrix_exp_unitary(h, synthetic::kT) - synthetic::propagator_oracle()) < 1e-13);
  CHECK(max_abs(parallel_transport_operator(synthetic::ground(), synthetic::h1(), synthetic::kT) -
                synthetic::transport_oracle()) < 1e-14);
}

TEST_CASE("synthetic commuting pair: diagonal mixed factor matches the hand formula") {
  const GroundSpace g = synthetic::ground();
  const std::array<double, 2> weights = {0.3, 0.7};
  const GpFactor factor = mixed_gp_factor(weights, g, synthetic::h1(), synthetic::kT);

  const auto block = synthetic::ground_block_exp(synthetic::kT);  // exp(-i H1 T) on the block
  const Complex z = 0.3 * block[0] * std::exp(kI * 0.4 * synthetic::kT) +
                    0.7 * block[3] * std::exp(kI * -0.1 * synthetic::kT);
  CHECK(factor.magnitude == doctest::Approx(std::abs(z)).epsilon(1e-13));
  CHECK(std::abs(factor.value - z / std::abs(z)) < 1e-13);
  // here the factor is genuinely nontrivial
  CHECK(factor.magnitude < 0.95);
  CHECK(std::abs(factor.value - Complex(1.0)) > 0.005);

  // order-1 off-diagonal factor reduces to the same number
  const std::vector<DensityMatrix> rhos = {initial_mixed_state(g, weights)};
  const ComplexMatrix u = matrix_exp_unitary(synthetic::h0() + synthetic::h1(), synthetic::kT);
  const std::vector<ComplexMatrix> transports = {
      parallel_transport_operator(g, synthetic::h1(), synthetic::kT)};
  const GpFactor off = off_diagonal_gp_factor(1, rhos, u, transports);
  CHECK(std::abs(off.value - factor.value) < 1e-13);
  CHECK(off.magnitude == doctest::Approx(factor.magnitude).epsilon(1e-12));
}

TEST_CASE("synthetic commuting pair: order-2 factor matches a hand-rolled trace") {
  const GroundSpace g = synthetic::ground();
  const std::array<double, 2> w1 = {0.3, 0.7}, w2 = {0.6, 0.4};
  const ComplexMatrix u_lib = matrix_exp_unitary(synthetic::h0() + synthetic::h1(), synthetic::kT);
  const ComplexMatrix v_lib = parallel_transport_operator(g, synthetic::h1(), synthetic::kT);
  const std::vector<DensityMatrix> rhos = {initial_mixed_state(g, w1),
                                           initial_mixed_state(g, w2)};
  const std::vector<ComplexMatrix> transports = {v_lib, v_lib};
  const GpFactor off = off_diagonal_gp_factor(2, rhos, u_lib, transports);

  // oracle: plain loops over std::array storage, no shared linear algebra
  using Flat = std::array<Complex, 36>;
  const auto to_flat = [](const ComplexMatrix& m) {
    Flat f{};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) f[static_cast<size_t>(i * 6 + j)] = m(i, j);
    return f;
  };
  const auto mul = [](const Flat& a, const Flat& b) {
    Flat out{};
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k)
        for (int j = 0; j < 6; ++j)
          out[static_cast<size_t>(i * 6 + j)] +=
              a[static_cast<size_t>(i * 6 + k)] * b[static_cast<size_t>(k * 6 + j)];
    return out;
  };
  const Flat u = to_flat(synthetic::propagator_oracle());
  const Flat v = to_flat(synthetic::transport_oracle());
  Flat root1{}, root2{};
  root1[0] = std::sqrt(0.3);
  root1[7] = std::sqrt(0.7);
  root2[0] = std::sqrt(0.6);
  root2[7] = std::sqrt(0.4);
  const Flat product = mul(mul(mul(u, v), root1), mul(mul(u, v), root2));
  Complex trace = 0.0;
  for (int i = 0; i < 6; ++i) trace += product[static_cast<size_t>(i * 7)];
  CHECK(off.magnitude == doctest::Approx(std::abs(trace)).epsilon(1e-12));
  CHECK(std::abs(off.value - trace / std::abs(trace)) < 1e-12);
}

TEST_CASE("orthogonal pure projectors make the order-2 factor undefined here") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  const ComplexMatrix u = matrix_exp_unitary(p.h, p.period);
  const ComplexMatrix v = parallel_transport_operator(p.ground, p.h1, p.period);
  const std::vector<DensityMatrix> rhos = {DensityMatrix::pure(p.ground.basis[0]),
                                           DensityMatrix::pure(p.ground.basis[1])};
  const std::vector<ComplexMatrix> transports = {v, v};
  CHECK(code_of([&] { off_diagonal_gp_factor(2, rhos, u, transports); }) ==
        ErrorCode::GpUndefined);
  // U V acts as the identity on the ground space, so the trace really is a
  // product of orthogonal projectors
  const Complex trace =
      (u * v * rhos[0].entries() * u * v * rhos[1].entries()).trace();
  CHECK(std::abs(trace) < 1e-14);

  // overlapping mixtures instead give the classical fidelity-like overlap,
  // which normalizes to one
  const std::array<double, 2> w1 = {0.3, 0.7}, w2 = {0.6, 0.4};
  const std::vector<DensityMatrix> mixed = {initial_mixed_state(p.ground, w1),
                                            initial_mixed_state(p.ground, w2)};
  const GpFactor off = off_diagonal_gp_factor(2, mixed, u, transports);
  CHECK(std::abs(off.value - Complex(1.0)) < 1e-13);
  const double overlap = std::sqrt(0.3 * 0.6) + std::sqrt(0.7 * 0.4);
  CHECK(off.magnitude == doctest::Approx(overlap).epsilon(1e-12));
}

TEST_CASE("off_diagonal_gp_factor validates its inputs") {
  const Pipeline p = make_pipeline(1.0, -2.0, 1.0);
  const ComplexMatrix u = matrix_exp_unitary(p.h, p.period);
  const ComplexMatrix v = parallel_transport_operator(p.ground, p.h1, p.period);
  const std::array<double, 2> w = {0.5, 0.5};
  const std::vector<DensityMatrix> one = {initial_mixed_state(p.ground, w)};
  const std::vector<ComplexMatrix> single = {v};
  CHECK(code_of([&] { off_diagonal_gp_factor(0, one, u, single); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { off_diagonal_gp_factor(2, one, u, single); }) == ErrorCode::DimMismatch);
  CHECK(code_of([&] { off_diagonal_gp_factor(1, one, 2.0 * u, single); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("phase factors are gauge and scale invariant") {
  const Pipeline p = make_pipeline(1.0, 0.0, 1.0);
  const std::array<double, 2> base = {0.8, 0.0};
  const PhaseResult reference = pure_state_gp(initial_pure_state(p.ground, base), p.h, p.period);

  // relative phase phi drops out
  for (double phi : {0.9, 2.3, kPi}) {
    const std::array<double, 2> angles = {0.8, phi};
    const PhaseResult result =
        pure_state_gp(initial_pure_state(p.ground, angles), p.h, p.period);
    CHECK(std::abs(result.factor - reference.factor) < 1e-12);
  }

  // a global phase on the state drops out
  const StateVector psi = initial_pure_state(p.ground, base);
  const StateVector rotated(std::exp(kI * 0.7) * psi.amplitudes());
  const PhaseResult result = pure_state_gp(rotated, p.h, p.period);
  CHECK(std::abs(result.factor - reference.factor) < 1e-12);

  // B sets the clock but not the loop: factors agree across drive strengths
  for (double field : {0.25, 4.0}) {
    const Pipeline q = make_pipeline(1.0, 0.0, field);
    const PhaseResult scaled =
        pure_state_gp(initial_pure_state(q.ground, base), q.h, q.period);
    CHECK(std::abs(scaled.factor - reference.factor) < 1e-11);
  }
}

TEST_CASE("Simpson dynamical phase equals -T<H> for these stationary loops") {
  const Pipeline p = make_pipeline(1.0, -1.0, 1.0);
  const std::array<double, 6> angles = {0.7, 0.8, 0.9, 0.2, 0.4, 0.6};
  const StateVector psi = initial_pure_state(p.ground, angles);
  const PhaseResult result = pure_state_gp(psi, p.h, p.period);
  const double expectation =
      psi.amplitudes().dot(p.h * psi.amplitudes()).real();
  CHECK(std::abs(result.dynamical + expectation * p.period) < 1e-12);
  // and is insensitive to the panel count on a constant integrand
  const PhaseResult coarse = pure_state_gp(psi, p.h, p.period, 16);
  CHECK(std::abs(coarse.dynamical - result.dynamical) < 1e-12);
}
