#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace clobs {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using BlochVector = Eigen::Vector3d;

// Construction-time validation of states, observables and fit residuals.
inline constexpr double kStateTol = 1e-12;
// Acceptance threshold for unitarity of machine matrices.
inline constexpr double kUnitaryTol = 1e-10;

// Largest entrywise modulus of a - b. All matrix comparisons go through this.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kStateTol) {
  return approx_equal(m, m.adjoint().eval(), tol);
}

// ‖U†U − I‖_max
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return max_abs_diff((u.adjoint() * u).eval(), Plain::Identity(u.rows(), u.cols()));
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kUnitaryTol) {
  return unitarity_defect(u) <= tol;
}

/// Pauli matrix σ_j, j ∈ {0,1,2,3}, with σ_0 the identity.
const Matrix2& pauli(int j);

/// Kronecker product with the signal qubit as the first factor.
Matrix4 tensor(const Matrix2& a, const Matrix2& b);

enum class Subsystem { signal, probe };

/// Reduce a two-qubit operator to the kept subsystem. Preserves the trace.
Matrix2 partial_trace(const Matrix4& r, Subsystem keep);

/// Validated density operator of fixed dimension (2 for one qubit, 4 for a
/// signal⊗probe pair). Construction rejects anything that is not unit-trace,
/// Hermitian and positive semidefinite within `tol`.
template <int N>
class DensityMatrix {
 public:
  using MatrixType = Eigen::Matrix<Complex, N, N>;

  explicit DensityMatrix(const MatrixType& m, double tol = kStateTol);

  const MatrixType& matrix() const { return mat_; }

 private:
  MatrixType mat_;
};

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;

using QubitState = DensityMatrix<2>;
using JointState = DensityMatrix<4>;

/// ϱ = ½(σ₀ + s·σ). Rejects ‖s‖ > 1 + kStateTol.
QubitState bloch_to_state(const BlochVector& s);

/// s_j = Tr[ϱ σ_j]. Inverse of bloch_to_state.
BlochVector state_to_bloch(const QubitState& rho);

QubitState reduce(const JointState& r, Subsystem keep);

/// Tr[ϱ X] for Hermitian X. The imaginary residue must stay below kStateTol;
/// anything larger signals a contract violation and throws.
template <int N>
double expectation(const DensityMatrix<N>& rho,
                   const Eigen::Matrix<Complex, N, N>& x);

/// Tr[ϱ X²] − Tr[ϱ X]². A variance, not a standard deviation.
template <int N>
double variance(const DensityMatrix<N>& rho,
                const Eigen::Matrix<Complex, N, N>& x);

/// R = U (ϱ ⊗ ϱ_p) U†. U must be unitary within kUnitaryTol.
JointState evolve(const QubitState& rho, const QubitState& probe,
                  const Matrix4& u);

/// Angles of the entangling kernel, canonicalized into (−2π, 2π] (the kernel
/// has period 4π in each angle).
struct CartanParams {
  CartanParams(double t1, double t2, double t3);

  double theta1;
  double theta2;
  double theta3;
};

/// U_E = exp[(i/2) Σ_j θ_j σ_j⊗σ_j], evaluated as the closed-form product
/// Π_j [cos(θ_j/2)·I + i·sin(θ_j/2)·σ_j⊗σ_j]; the factors commute pairwise.
Matrix4 cartan_kernel(const CartanParams& p);

}  // namespace clobs
