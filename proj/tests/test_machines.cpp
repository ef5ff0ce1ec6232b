#include "clobs/machines.hpp"

#include <cmath>

#include <doctest.h>

#include "clobs/verify.hpp"

using namespace clobs;

TEST_CASE("observable class membership") {
  const ObservableClass nc = nc_class();
  RandomStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = 4 * rng.uniform01() - 2;
    const double d = 4 * rng.uniform01() - 2;
    const Matrix2 member = c * pauli(1) + d * pauli(2);
    CHECK(nc.membership_residual(member) <= 1e-12);
    CHECK(nc.contains(member));
  }
  CHECK_FALSE(nc.contains(pauli(3)));
  CHECK_FALSE(nc.contains(pauli(0)));
  CHECK_FALSE(nc.generators_commute());
  CHECK(ObservableClass(pauli(3), pauli(3), "x*s3").generators_commute());
  CHECK_THROWS_AS(
      ObservableClass((Matrix2() << 0, 1, 0, 0).finished(), pauli(1), "bad"),
      std::domain_error);
}

TEST_CASE("flip unitary exchanges the equatorial Paulis") {
  const Matrix2& f = flip_unitary();
  CHECK(is_unitary(f, 1e-15));
  CHECK(approx_equal((f.adjoint() * pauli(1) * f).eval(), pauli(2), 1e-15));
  CHECK(approx_equal((f.adjoint() * pauli(2) * f).eval(), pauli(1), 1e-15));
}

TEST_CASE("nc machine") {
  SUBCASE("predicted noises") {
    const CloningMachineSpec quarter = machine_nc(M_PI / 4);
    CHECK(*quarter.predicted_g1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(*quarter.predicted_g2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const CloningMachineSpec third = machine_nc(M_PI / 3);
    CHECK(*third.predicted_g1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(*third.predicted_g2 ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  }

  SUBCASE("construction identity and unitarity") {
    const double theta = 0.9;
    const CloningMachineSpec spec = machine_nc(theta);
    CHECK(is_unitary(spec.unitary));
    const Matrix4 peeled =
        tensor(pauli(0), flip_unitary().adjoint().eval()) * spec.unitary;
    CHECK(approx_equal(peeled, cartan_kernel(CartanParams(theta, -theta, 0)),
                       1e-12));
  }

  SUBCASE("boundary angles are rejected") {
    CHECK_THROWS_AS(machine_nc(0.0), std::domain_error);
    CHECK_THROWS_AS(machine_nc(M_PI_2), std::domain_error);
    CHECK_THROWS_AS(machine_nc(-0.3), std::domain_error);
    CHECK_THROWS_AS(machine_nc(2.0), std::domain_error);
  }

  SUBCASE("shrinks the equatorial Bloch components by cos and sin") {
    RandomStream rng(17);
    for (double theta = 0.15; theta < M_PI_2; theta += 0.2) {
      const CloningMachineSpec spec = machine_nc(theta);
      for (int trial = 0; trial < 5; ++trial) {
        const BlochVector s = random_bloch(rng);
        const JointState r = evolve(bloch_to_state(s), spec.probe, spec.unitary);
        const BlochVector out1 = state_to_bloch(reduce(r, Subsystem::signal));
        const BlochVector out2 = state_to_bloch(reduce(r, Subsystem::probe));
        for (int j = 0; j < 2; ++j) {
          CHECK(std::abs(out1(j) - std::cos(theta) * s(j)) <= 1e-10);
          CHECK(std::abs(out2(j) - std::sin(theta) * s(j)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("conjugated machine") {
  SUBCASE("identity conjugation reproduces machine_nc") {
    const CloningMachineSpec base = machine_nc(0.8);
    const CloningMachineSpec conj = machine_conjugated(pauli(0), 0.8);
    CHECK(max_abs_diff(conj.unitary, base.unitary) <= 1e-15);
    CHECK(max_abs_diff(conj.observable_class.generator_a(), pauli(1)) <= 1e-15);
    CHECK(max_abs_diff(conj.observable_class.generator_b(), pauli(2)) <= 1e-15);
    CHECK(conj.predicted_g1 == base.predicted_g1);
  }

  SUBCASE("conjugation by F maps the nc class onto itself") {
    const CloningMachineSpec spec = machine_conjugated(flip_unitary(), 0.8);
    // generators come out exchanged; the span is unchanged
    CHECK(approx_equal(spec.observable_class.generator_a(), pauli(2), 1e-14));
    CHECK(approx_equal(spec.observable_class.generator_b(), pauli(1), 1e-14));
    CHECK(spec.observable_class.membership_residual(pauli(1)) <= 1e-12);
    CHECK(spec.observable_class.membership_residual(pauli(2)) <= 1e-12);
  }

  SUBCASE("non-unitary conjugation is rejected") {
    CHECK_THROWS_AS(machine_conjugated((Matrix2() << 1, 0, 0, 2).finished(), 0.8),
                    std::domain_error);
  }
}

TEST_CASE("phase covariant machine") {
  for (double theta : {M_PI / 6, M_PI / 4, M_PI / 3, 1.1}) {
    CAPTURE(theta);
    const CloningMachineSpec spec = machine_phase_covariant(theta);
    CHECK(is_unitary(spec.unitary));
    Eigen::Vector4cd ket00 = Eigen::Vector4cd::Zero();
    ket00(0) = 1;
    CHECK(max_abs_diff((spec.unitary * ket00).eval(), ket00) <= 1e-15);
    Eigen::Vector4cd ket10 = Eigen::Vector4cd::Zero();
    ket10(2) = 1;
    Eigen::Vector4cd target = Eigen::Vector4cd::Zero();
    target(2) = std::cos(theta);
    target(1) = std::sin(theta);
    CHECK(max_abs_diff((spec.unitary * ket10).eval(), target) <= 1e-15);
  }
  CHECK_THROWS_AS(machine_phase_covariant(0.0), std::domain_error);
}

TEST_CASE("sign flipped machine") {
  const double theta = M_PI / 4;
  const CloningMachineSpec spec = machine_sign_flipped(theta);
  CHECK(*spec.predicted_g1 == doctest::Approx(-std::sqrt(2.0)));
  CHECK(*spec.predicted_g2 == doctest::Approx(-std::sqrt(2.0)));
  CHECK(approx_equal(spec.unitary,
                     (tensor(pauli(3), pauli(3)) * machine_nc(theta).unitary).eval(),
                     1e-15));

  SUBCASE("fails the phase-covariant state transformation on |1>") {
    Eigen::Vector4cd ket10 = Eigen::Vector4cd::Zero();
    ket10(2) = 1;
    Eigen::Vector4cd target = Eigen::Vector4cd::Zero();
    target(2) = std::cos(theta);
    target(1) = std::sin(theta);
    const Eigen::Vector4cd out = spec.unitary * ket10;
    // compare projectors so a global phase cannot mask the failure
    const Matrix4 out_proj = out * out.adjoint();
    const Matrix4 target_proj = target * target.adjoint();
    CHECK(max_abs_diff(out_proj, target_proj) > 0.5);
  }
}

TEST_CASE("commuting machine clones sigma3 exactly") {
  const CloningMachineSpec spec = machine_commuting();
  CHECK(*spec.predicted_g1 == 1.0);
  CHECK(*spec.predicted_g2 == 1.0);
  CHECK(is_unitary(spec.unitary, 1e-15));

  SUBCASE("CNOT on |00>") {
    const JointState r =
        evolve(bloch_to_state(BlochVector(0, 0, 1)), spec.probe, spec.unitary);
    Matrix4 expected = Matrix4::Zero();
    expected(0, 0) = 1;
    CHECK(approx_equal(r.matrix(), expected, 1e-15));
  }

  SUBCASE("sigma3 means are copied") {
    const JointState r = evolve(bloch_to_state(BlochVector(0, 0, 0.7)),
                                spec.probe, spec.unitary);
    CHECK(expectation(r, tensor(pauli(3), pauli(0))) ==
          doctest::Approx(0.7).epsilon(1e-12));
    CHECK(expectation(r, tensor(pauli(0), pauli(3))) ==
          doctest::Approx(0.7).epsilon(1e-12));
  }

  SUBCASE("sigma1 means are not cloned") {
    const JointState r = evolve(bloch_to_state(BlochVector(1, 0, 0)),
                                spec.probe, spec.unitary);
    CHECK(std::abs(expectation(r, tensor(pauli(1), pauli(0)))) < 0.5);
    CHECK(std::abs(expectation(r, tensor(pauli(0), pauli(1)))) < 0.5);
  }
}

TEST_CASE("universal cloner marginals") {
  const CloneMarginals pole = universal_clone_marginal(BlochVector(0, 0, 1));
  CHECK(pole.mean1 == 0.0);
  CHECK(pole.mean2 == 0.0);
  CHECK(pole.variance1 == 1.0);
  CHECK(pole.variance2 == 1.0);

  const CloneMarginals equator = universal_clone_marginal(BlochVector(1, 0, 0));
  CHECK(equator.mean1 == doctest::Approx(2.0 / 3.0));

  const CloneMarginals mixed = universal_clone_marginal(BlochVector(0, 0, 0));
  CHECK(mixed.mean1 == 0.0);
  CHECK(mixed.variance1 == 1.0);

  CHECK_THROWS_AS(universal_clone_marginal(BlochVector(0.8, 0.8, 0.8)),
                  std::domain_error);
  CHECK(universal_clone_model().shrink_factor == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("machine catalog") {
  CHECK(catalog().size() == 6);
  for (const CatalogEntry& entry : catalog()) {
    if (entry.name == "universal-marginal") {
      CHECK_THROWS_AS(make_catalog_machine(entry.name, 0.5),
                      std::invalid_argument);
      continue;
    }
    const CloningMachineSpec spec = make_catalog_machine(
        entry.name, entry.takes_theta ? std::optional<double>(0.6) : std::nullopt);
    CHECK(spec.name == entry.name);
    CHECK(unitarity_defect(spec.unitary) <= 1e-10);
    if (spec.predicted_g1) {
      CHECK(std::abs(*spec.predicted_g1) >= 1.0);
      CHECK(std::abs(*spec.predicted_g2) >= 1.0);
    }
  }
  CHECK_THROWS_AS(make_catalog_machine("nope", 0.4), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog_machine("nc", std::nullopt),
                  std::invalid_argument);
}
