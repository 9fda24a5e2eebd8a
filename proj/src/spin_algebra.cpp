#include "spin_algebra.hpp"

#include <cmath>
#include <string>

namespace spinphase {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols())
    fail(ErrorCode::DimMismatch, std::string(who) + ": matrix must be square and non-empty");
}

void require_hermitian(const ComplexMatrix& m, const char* who) {
  require_square(m, who);
  if (!is_hermitian(m))
    fail(ErrorCode::NotHermitian,
         std::string(who) + ": matrix is not Hermitian within tolerance");
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) fail(ErrorCode::DimMismatch, "StateVector: empty amplitude vector");
  const double norm = amplitudes_.norm();
  if (norm < tol.state_norm) fail(ErrorCode::InvalidArgument, "StateVector: vanishing norm");
  amplitudes_ /= norm;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  require_hermitian(entries_, "DensityMatrix");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  const double trace = entries_.trace().real();
  if (std::abs(trace - 1.0) > tol.trace)
    fail(ErrorCode::InvalidArgument, "DensityMatrix: trace deviates from 1 beyond tolerance");
  entries_ /= trace;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol.psd_eigenvalue)
    fail(ErrorCode::NotPsd, "DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

SpinHalfOperators spin_half_operators() {
  SpinHalfOperators ops;
  ops.x = ComplexMatrix::Zero(2, 2);
  ops.y = ComplexMatrix::Zero(2, 2);
  ops.z = ComplexMatrix::Zero(2, 2);
  ops.x(0, 1) = 1.0;
  ops.x(1, 0) = 1.0;
  ops.y(0, 1) = -kI;
  ops.y(1, 0) = kI;
  ops.z(0, 0) = 1.0;
  ops.z(1, 1) = -1.0;
  return ops;
}

SpinOneOperators spin_one_operators() {
  const double s = 1.0 / std::sqrt(2.0);
  SpinOneOperators ops;
  ops.x = ComplexMatrix::Zero(3, 3);
  ops.y = ComplexMatrix::Zero(3, 3);
  ops.z = ComplexMatrix::Zero(3, 3);
  ops.x(0, 1) = s;
  ops.x(1, 0) = s;
  ops.x(1, 2) = s;
  ops.x(2, 1) = s;
  ops.y(0, 1) = -kI * s;
  ops.y(1, 0) = kI * s;
  ops.y(1, 2) = -kI * s;
  ops.y(2, 1) = kI * s;
  ops.z(0, 0) = 1.0;
  ops.z(2, 2) = -1.0;
  return ops;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0 || b.size() == 0) fail(ErrorCode::DimMismatch, "kron: empty factor");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron_vec(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() == 0 || v.size() == 0) fail(ErrorCode::DimMismatch, "kron_vec: empty factor");
  ComplexVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u(i) * v;
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::InvalidArgument, "hermitian_eig: eigensolver did not converge");
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    auto col = out.eigenvectors.col(k);
    Eigen::Index imax = 0;
    double best = std::abs(col(0));
    for (Eigen::Index i = 1; i < col.size(); ++i) {
      const double a = std::abs(col(i));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    col *= std::conj(col(imax)) / best;
    col(imax) = Complex(col(imax).real(), 0.0);  // kill residual imaginary dust
  }
  return out;
}

ComplexMatrix matrix_exp_unitary(const ComplexMatrix& hamiltonian, double time) {
  const HermitianEig eig = hermitian_eig(hamiltonian);
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(-kI * eig.eigenvalues(k) * time);
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix psd_root(const ComplexMatrix& rho, int order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "psd_root: order must be >= 1");
  const HermitianEig eig = hermitian_eig(rho);
  RealVector roots(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    double lambda = eig.eigenvalues(k);
    if (lambda < -tol.psd_eigenvalue)
      fail(ErrorCode::NotPsd, "psd_root: negative eigenvalue beyond tolerance");
    if (lambda < 0.0) lambda = 0.0;
    roots(k) = order == 1 ? lambda : std::pow(lambda, 1.0 / order);
  }
  ComplexMatrix out =
      eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (out + out.adjoint()).eval();
}

ComplexMatrix psd_root(const DensityMatrix& rho, int order) { return psd_root(rho.entries(), order); }

}  // namespace spinphase
