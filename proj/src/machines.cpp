#include "clobs/machines.hpp"

#include <cmath>

namespace clobs {

namespace {

Eigen::Matrix<double, 8, 1> stack_real(const Matrix2& m) {
  Eigen::Matrix<double, 8, 1> v;
  int k = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      v(k) = m(i, j).real();
      v(4 + k) = m(i, j).imag();
      ++k;
    }
  }
  return v;
}

void require_theta_inside(double theta) {
  if (!(theta > 0.0 && theta < M_PI_2)) {
    throw std::domain_error(
        "theta = " + std::to_string(theta) +
        ": added noise diverges at the boundary, need 0 < theta < pi/2");
  }
}

QubitState probe_ket0() { return bloch_to_state(BlochVector(0, 0, 1)); }

}  // namespace

ObservableClass::ObservableClass(const Matrix2& generator_a,
                                 const Matrix2& generator_b, std::string label)
    : a_(generator_a), b_(generator_b), label_(std::move(label)) {
  if (!is_hermitian(a_) || !is_hermitian(b_)) {
    throw std::domain_error("ObservableClass: generators must be Hermitian");
  }
}

double ObservableClass::membership_residual(const Matrix2& x) const {
  Eigen::Matrix<double, 8, 2> basis;
  basis.col(0) = stack_real(a_);
  basis.col(1) = stack_real(b_);
  const Eigen::Matrix<double, 8, 1> rhs = stack_real(x);
  const Eigen::Vector2d coeff =
      basis.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rhs);
  return (basis * coeff - rhs).norm();
}

bool ObservableClass::contains(const Matrix2& x, double tol) const {
  return is_hermitian(x) && membership_residual(x) <= tol;
}

bool ObservableClass::generators_commute(double tol) const {
  return approx_equal((a_ * b_).eval(), (b_ * a_).eval(), tol);
}

const Matrix2& flip_unitary() {
  static const Matrix2 f = Complex(0, 1) / std::sqrt(2.0) * (pauli(1) + pauli(2));
  return f;
}

ObservableClass nc_class() {
  return ObservableClass(pauli(1), pauli(2), "x1*s1 + x2*s2");
}

CloningMachineSpec machine_nc(double theta) {
  require_theta_inside(theta);
  const Matrix4 u = tensor(pauli(0), flip_unitary()) *
                    cartan_kernel(CartanParams(theta, -theta, 0));
  return CloningMachineSpec{"nc",
                            u,
                            probe_ket0(),
                            nc_class(),
                            1.0 / std::cos(theta),
                            1.0 / std::sin(theta),
                            theta};
}

CloningMachineSpec machine_conjugated(const Matrix2& v, double theta) {
  require_theta_inside(theta);
  const double defect = unitarity_defect(v);
  if (defect > kUnitaryTol) {
    throw std::domain_error("machine_conjugated: V is not unitary, defect " +
                            std::to_string(defect));
  }
  CloningMachineSpec base = machine_nc(theta);
  const Matrix4 u = tensor(v.adjoint(), v.adjoint()) * base.unitary *
                    tensor(v, pauli(0));
  ObservableClass cls(v.adjoint() * pauli(1) * v, v.adjoint() * pauli(2) * v,
                      "c*V'.s1.V + d*V'.s2.V");
  return CloningMachineSpec{"conjugated", u,    probe_ket0(),      cls,
                            base.predicted_g1,  base.predicted_g2, theta};
}

CloningMachineSpec machine_phase_covariant(double theta) {
  require_theta_inside(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Basis order |ab⟩ → index 2a+b, signal first.
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = 1;
  u(3, 3) = 1;
  u(2, 2) = c;
  u(1, 2) = s;
  u(2, 1) = -s;
  u(1, 1) = c;
  return CloningMachineSpec{"phase-covariant",
                            u,
                            probe_ket0(),
                            nc_class(),
                            1.0 / c,
                            1.0 / s,
                            theta};
}

CloningMachineSpec machine_sign_flipped(double theta) {
  CloningMachineSpec base = machine_nc(theta);
  return CloningMachineSpec{"sign-flipped",
                            tensor(pauli(3), pauli(3)) * base.unitary,
                            base.probe,
                            base.observable_class,
                            -*base.predicted_g1,
                            -*base.predicted_g2,
                            theta};
}

CloningMachineSpec machine_commuting() {
  Matrix4 cnot = Matrix4::Zero();
  cnot(0, 0) = 1;
  cnot(1, 1) = 1;
  cnot(2, 3) = 1;
  cnot(3, 2) = 1;
  return CloningMachineSpec{"commuting",
                            cnot,
                            probe_ket0(),
                            ObservableClass(pauli(3), pauli(3), "x*s3"),
                            1.0,
                            1.0,
                            std::nullopt};
}

CloneMarginals universal_clone_marginal(const BlochVector& s) {
  if (s.norm() > 1.0 + kStateTol) {
    throw std::domain_error("universal_clone_marginal: |s| > 1");
  }
  const double eta = 2.0 / 3.0;
  CloneMarginals out;
  out.mean1 = eta * s(0);
  out.mean2 = eta * s(1);
  out.variance1 = 1.0 - out.mean1 * out.mean1;
  out.variance2 = 1.0 - out.mean2 * out.mean2;
  return out;
}

MarginalCloneModel universal_clone_model() {
  return MarginalCloneModel{2.0 / 3.0,
                            "symmetric universal state cloner marginal"};
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"nc", "x1*s1 + x2*s2", "g1 = 1/cos(theta), g2 = 1/sin(theta)", true},
      {"conjugated", "c*V'.s1.V + d*V'.s2.V (V = Hadamard)",
       "g1 = 1/cos(theta), g2 = 1/sin(theta)", true},
      {"phase-covariant", "x1*s1 + x2*s2",
       "g1 = 1/cos(theta), g2 = 1/sin(theta)", true},
      {"sign-flipped", "x1*s1 + x2*s2",
       "g1 = -1/cos(theta), g2 = -1/sin(theta)", true},
      {"commuting", "x*s3", "g1 = g2 = 1", false},
      {"universal-marginal", "whole Bloch vector",
       "shrink 2/3 per clone (not a unitary machine)", false},
  };
  return entries;
}

CloningMachineSpec make_catalog_machine(const std::string& name,
                                        std::optional<double> theta) {
  const bool has_theta = theta.has_value();
  auto need_theta = [&]() -> double {
    if (!has_theta) {
      throw std::invalid_argument("machine '" + name + "' requires --theta");
    }
    return *theta;
  };
  if (name == "nc") return machine_nc(need_theta());
  if (name == "conjugated") {
    const Matrix2 hadamard =
        (Matrix2() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    return machine_conjugated(hadamard, need_theta());
  }
  if (name == "phase-covariant") return machine_phase_covariant(need_theta());
  if (name == "sign-flipped") return machine_sign_flipped(need_theta());
  if (name == "commuting") return machine_commuting();
  if (name == "universal-marginal") {
    throw std::invalid_argument(
        "universal-marginal is a marginal clone model, not a unitary machine");
  }
  throw std::invalid_argument("unknown machine '" + name + "'");
}

}  // namespace clobs
