#include "evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

namespace spinphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rational {
  long long num;
  long long den;
};

// best continued-fraction approximation p/q to x in (0, 1] with q <= cap
std::optional<Rational> rationalize(double x, double tolerance, long long cap) {
  long long p_prev = 1, q_prev = 0;  // convergent k-1
  long long p = static_cast<long long>(std::floor(x)), q = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tolerance)
      return Rational{p, q};
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const double a_floor = std::floor(inv);
    // stop before the next denominator can pass the cap (also dodges overflow:
    // for x <= 1 the numerators never exceed the denominators)
    if (a_floor * static_cast<double>(q) + static_cast<double>(q_prev) >
        static_cast<double>(cap))
      break;
    const long long a = static_cast<long long>(a_floor);
    const long long p_next = a * p + p_prev;
    const long long q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    frac = inv - a_floor;
  }
  if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tolerance)
    return Rational{p, q};
  return std::nullopt;
}

double max_abs_commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a * b - b * a);
}

}  // namespace

const char* period_method_name(PeriodMethod method) {
  switch (method) {
    case PeriodMethod::AnalyticCommensurate: return "ANALYTIC_COMMENSURATE";
    case PeriodMethod::NumericScan: return "NUMERIC_SCAN";
  }
  return "UNKNOWN";
}

StateVector evolve_pure(const StateVector& psi0, const ComplexMatrix& hamiltonian, double time) {
  if (hamiltonian.rows() != psi0.dim())
    fail(ErrorCode::DimMismatch, "evolve_pure: state and Hamiltonian dimensions differ");
  return StateVector(matrix_exp_unitary(hamiltonian, time) * psi0.amplitudes());
}

DensityMatrix evolve_density(const DensityMatrix& rho0, const ComplexMatrix& hamiltonian,
                             double time) {
  if (hamiltonian.rows() != rho0.dim())
    fail(ErrorCode::DimMismatch, "evolve_density: state and Hamiltonian dimensions differ");
  const ComplexMatrix u = matrix_exp_unitary(hamiltonian, time);
  return DensityMatrix(u * rho0.entries() * u.adjoint());
}

CyclicPeriod cyclic_period(const DensityMatrix& rho0, const ComplexMatrix& h1, int winding) {
  if (winding < 1) fail(ErrorCode::InvalidArgument, "cyclic_period: winding must be >= 1");
  if (h1.rows() != rho0.dim())
    fail(ErrorCode::DimMismatch, "cyclic_period: state and drive dimensions differ");

  const HermitianEig eig = hermitian_eig(h1);
  const double h_scale = std::max(1.0, std::abs(eig.eigenvalues.cwiseAbs().maxCoeff()));

  // populations per distinct drive level
  const ComplexMatrix rho_tilde =
      eig.eigenvectors.adjoint() * rho0.entries() * eig.eigenvectors;
  std::vector<double> levels;
  std::vector<double> populations;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double h = eig.eigenvalues(i);
    const double pop = rho_tilde(i, i).real();
    if (!levels.empty() && h - levels.back() <= tol.eigenvalue_group * h_scale) {
      populations.back() += pop;
    } else {
      levels.push_back(h);
      populations.push_back(pop);
    }
  }
  std::vector<double> support;
  for (size_t g = 0; g < levels.size(); ++g)
    if (populations[g] > tol.support_population) support.push_back(levels[g]);
  if (support.empty())
    fail(ErrorCode::InvalidArgument, "cyclic_period: rho0 has no populated drive level");

  const bool stationary =
      max_abs_commutator(rho0.entries(), h1) <= tol.stationary * h_scale || support.size() < 2;
  if (stationary) {
    double h_max = 0.0;
    for (double h : support) h_max = std::max(h_max, std::abs(h));
    if (h_max <= tol.stationary)
      fail(ErrorCode::NoDrive, "cyclic_period: drive vanishes on the support of rho0");
    return {winding * kTwoPi / h_max, winding, PeriodMethod::NumericScan, true};
  }

  // distinct positive splittings on the support
  std::vector<double> diffs;
  for (size_t a = 0; a < support.size(); ++a)
    for (size_t b = 0; b < a; ++b) diffs.push_back(support[a] - support[b]);
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end(),
                          [&](double x, double y) { return std::abs(x - y) <= 1e-12 * h_scale; }),
              diffs.end());

  const double d_max = diffs.back();
  std::vector<Rational> ratios;
  for (double d : diffs) {
    const auto r = rationalize(d / d_max, tol.commensurate, tol.denominator_cap);
    if (!r)
      fail(ErrorCode::Incommensurate,
           "cyclic_period: level splittings admit no rational relation within tolerance");
    ratios.push_back(*r);
  }
  long long q_lcm = 1;
  for (const Rational& r : ratios) {
    q_lcm = std::lcm(q_lcm, r.den);
    if (q_lcm > 1000000000000LL)
      fail(ErrorCode::Incommensurate, "cyclic_period: common denominator overflows the cap");
  }
  long long g = 0;
  for (const Rational& r : ratios) g = std::gcd(g, r.num * (q_lcm / r.den));

  const double t_min = kTwoPi * static_cast<double>(q_lcm) / (static_cast<double>(g) * d_max);
  const double period = winding * t_min;

  // mandatory verification: a bad rationalization must not leak out
  const ComplexMatrix u = matrix_exp_unitary(h1, period);
  if (max_abs(u * rho0.entries() * u.adjoint() - rho0.entries()) > tol.period_verify)
    fail(ErrorCode::Incommensurate,
         "cyclic_period: rho(T) deviates from rho0 beyond tolerance at the rationalized period");
  return {period, winding, PeriodMethod::AnalyticCommensurate, false};
}

CyclicPeriod regime_reference_period(const GroundSpace& ground, const ComplexMatrix& h1,
                                     int winding) {
  ComplexVector sum = ComplexVector::Zero(ground.basis.front().dim());
  for (const StateVector& b : ground.basis) sum += b.amplitudes();
  return cyclic_period(DensityMatrix::pure(StateVector(std::move(sum))), h1, winding);
}

}  // namespace spinphase
