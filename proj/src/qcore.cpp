#include "clobs/qcore.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace clobs {

const Matrix2& pauli(int j) {
  static const Matrix2 sigma[4] = {
      Matrix2::Identity(),
      (Matrix2() << 0, 1, 1, 0).finished(),
      (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Matrix2() << 1, 0, 0, -1).finished(),
  };
  if (j < 0 || j > 3) {
    throw std::domain_error("pauli: index " + std::to_string(j) +
                            " out of range 0..3");
  }
  return sigma[j];
}

Matrix4 tensor(const Matrix2& a, const Matrix2& b) {
  return Eigen::kroneckerProduct(a, b);
}

Matrix2 partial_trace(const Matrix4& r, Subsystem keep) {
  Matrix2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (keep == Subsystem::signal) {
        out(i, j) = r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1);
      } else {
        out(i, j) = r(i, j) + r(2 + i, 2 + j);
      }
    }
  }
  return out;
}

template <int N>
DensityMatrix<N>::DensityMatrix(const MatrixType& m, double tol) : mat_(m) {
  const double trace_defect = std::abs(m.trace() - Complex(1, 0));
  if (trace_defect > tol) {
    throw std::domain_error("density matrix: trace deviates from 1 by " +
                            std::to_string(trace_defect));
  }
  if (!is_hermitian(m, tol)) {
    throw std::domain_error("density matrix: not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<MatrixType> es(m, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -tol) {
    throw std::domain_error("density matrix: negative eigenvalue " +
                            std::to_string(lambda_min));
  }
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

QubitState bloch_to_state(const BlochVector& s) {
  if (s.norm() > 1.0 + kStateTol) {
    throw std::domain_error("bloch_to_state: |s| = " + std::to_string(s.norm()) +
                            " exceeds 1, not a state");
  }
  Matrix2 m = 0.5 * (pauli(0) + s(0) * pauli(1) + s(1) * pauli(2) + s(2) * pauli(3));
  // Clip the rounding-level negative eigenvalue a unit-norm s can produce.
  return QubitState(m, 10 * kStateTol);
}

BlochVector state_to_bloch(const QubitState& rho) {
  BlochVector s;
  for (int j = 1; j <= 3; ++j) {
    s(j - 1) = expectation(rho, pauli(j));
  }
  return s;
}

QubitState reduce(const JointState& r, Subsystem keep) {
  return QubitState(partial_trace(r.matrix(), keep), 10 * kStateTol);
}

namespace {

double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) > kStateTol) {
    throw std::logic_error(std::string(what) + ": imaginary residue " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

template <int N>
double expectation(const DensityMatrix<N>& rho,
                   const Eigen::Matrix<Complex, N, N>& x) {
  if (!is_hermitian(x)) {
    throw std::domain_error("expectation: observable is not Hermitian");
  }
  return real_part_checked((rho.matrix() * x).trace(), "expectation");
}

template <int N>
double variance(const DensityMatrix<N>& rho,
                const Eigen::Matrix<Complex, N, N>& x) {
  if (!is_hermitian(x)) {
    throw std::domain_error("variance: observable is not Hermitian");
  }
  const double mean = real_part_checked((rho.matrix() * x).trace(), "variance");
  const double second =
      real_part_checked((rho.matrix() * x * x).trace(), "variance");
  const double v = second - mean * mean;
  if (v < -kStateTol) {
    throw std::logic_error("variance: negative value " + std::to_string(v));
  }
  return v < 0 ? 0.0 : v;
}

template double expectation<2>(const DensityMatrix<2>&, const Matrix2&);
template double expectation<4>(const DensityMatrix<4>&, const Matrix4&);
template double variance<2>(const DensityMatrix<2>&, const Matrix2&);
template double variance<4>(const DensityMatrix<4>&, const Matrix4&);

JointState evolve(const QubitState& rho, const QubitState& probe,
                  const Matrix4& u) {
  const double defect = unitarity_defect(u);
  if (defect > kUnitaryTol) {
    throw std::domain_error("evolve: ‖U†U − I‖ = " + std::to_string(defect) +
                            ", not unitary");
  }
  const Matrix4 in = tensor(rho.matrix(), probe.matrix());
  return JointState(u * in * u.adjoint(), 10 * kStateTol);
}

namespace {

// Wrap into (−2π, 2π], the fundamental period of the half-angle kernel.
double canonical_angle(double t) {
  if (!std::isfinite(t)) {
    throw std::domain_error("CartanParams: angle is not finite");
  }
  double r = std::remainder(t, 4.0 * M_PI);
  if (r <= -2.0 * M_PI) {
    r += 4.0 * M_PI;
  }
  return r;
}

}  // namespace

CartanParams::CartanParams(double t1, double t2, double t3)
    : theta1(canonical_angle(t1)),
      theta2(canonical_angle(t2)),
      theta3(canonical_angle(t3)) {}

Matrix4 cartan_kernel(const CartanParams& p) {
  const double angles[3] = {p.theta1, p.theta2, p.theta3};
  Matrix4 u = Matrix4::Identity();
  for (int j = 0; j < 3; ++j) {
    const Matrix4 ss = tensor(pauli(j + 1), pauli(j + 1));
    u = u * (std::cos(angles[j] / 2) * Matrix4::Identity() +
             Complex(0, 1) * std::sin(angles[j] / 2) * ss);
  }
  return u;
}

}  // namespace clobs
