#pragma once

// Dense complex linear algebra on small Hilbert spaces: spin operator
// constructors, Kronecker products, Hermitian eigendecomposition with a fixed
// eigenvector gauge, unitary propagators and PSD matrix roots.

#include <Eigen/Dense>
#include <complex>

#include "error.hpp"
#include "tolerances.hpp"

namespace spinphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = tol.hermitian);

// Normalized pure state. The constructor rescales to unit norm and rejects
// vectors with (numerically) vanishing norm.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite operator. Construction
// validates all three properties and symmetrizes roundoff.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);
  static DensityMatrix pure(const StateVector& psi);
  const ComplexMatrix& entries() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  ComplexMatrix entries_;
};

struct SpinHalfOperators {
  ComplexMatrix x, y, z;  // Pauli matrices, basis (up, down)
};

struct SpinOneOperators {
  ComplexMatrix x, y, z;  // spin-1 matrices, basis (m = 1, 0, -1)
};

SpinHalfOperators spin_half_operators();
SpinOneOperators spin_one_operators();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron_vec(const ComplexVector& u, const ComplexVector& v);

struct HermitianEig {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, matching order
};

// Eigendecomposition of a Hermitian matrix. Each eigenvector is gauge fixed
// so its largest-magnitude component is real and positive (ties resolved by
// the lowest index), which makes repeated runs reproducible.
HermitianEig hermitian_eig(const ComplexMatrix& m);

// exp(-i * hamiltonian * time) through the eigendecomposition.
ComplexMatrix matrix_exp_unitary(const ComplexMatrix& hamiltonian, double time);

// Principal l-th root of a PSD matrix. Eigenvalues in [-psd_eigenvalue, 0)
// are clamped to zero; anything lower is rejected as not PSD.
ComplexMatrix psd_root(const ComplexMatrix& rho, int order);
ComplexMatrix psd_root(const DensityMatrix& rho, int order);

}  // namespace spinphase
