#include "clobs/verify.hpp"

#include <cmath>

#include "clobs/format.hpp"

namespace clobs {

BlochVector random_bloch(RandomStream& rng) {
  const double z = 1.0 - 2.0 * rng.uniform01();
  const double phi = 2.0 * M_PI * rng.uniform01();
  const double r = std::cbrt(rng.uniform01());
  const double rho = std::sqrt(1.0 - z * z);
  return r * BlochVector(rho * std::cos(phi), rho * std::sin(phi), z);
}

Matrix2 random_unitary2(RandomStream& rng) {
  const double u = rng.uniform01();
  const double alpha = 2.0 * M_PI * rng.uniform01();
  const double beta = 2.0 * M_PI * rng.uniform01();
  const Complex a = std::sqrt(1.0 - u) * std::exp(Complex(0, alpha));
  const Complex b = std::sqrt(u) * std::exp(Complex(0, beta));
  Matrix2 w;
  w << a, -std::conj(b), b, std::conj(a);
  return w;
}

std::vector<QubitState> sample_states(const StateSamplingPlan& plan) {
  std::vector<QubitState> states;
  if (plan.include_fiducials) {
    states.push_back(bloch_to_state(BlochVector(0, 0, 0)));
    states.push_back(bloch_to_state(BlochVector(1, 0, 0)));
    states.push_back(bloch_to_state(BlochVector(0, 1, 0)));
    states.push_back(bloch_to_state(BlochVector(0, 0, 1)));
  }
  RandomStream rng(plan.seed);
  for (int i = 0; i < plan.n_states; ++i) {
    states.push_back(bloch_to_state(random_bloch(rng)));
  }
  return states;
}

OutputMeans output_means(const CloningMachineSpec& spec, const QubitState& rho,
                         const Matrix2& x, bool force) {
  if (!force && !spec.observable_class.contains(x)) {
    throw std::domain_error(
        "output_means: observable outside the machine class (residual " +
        std::to_string(spec.observable_class.membership_residual(x)) + ")");
  }
  const JointState r = evolve(rho, spec.probe, spec.unitary);
  return OutputMeans{expectation(rho, x),
                     expectation(r, tensor(x, pauli(0))),
                     expectation(r, tensor(pauli(0), x))};
}

CloningCheck check_cloning(const CloningMachineSpec& spec, double tol,
                           const StateSamplingPlan& plan) {
  if (tol <= 0) {
    throw std::domain_error("check_cloning: tol must be positive");
  }
  const Matrix2 gens[2] = {spec.observable_class.generator_a(),
                           spec.observable_class.generator_b()};
  double worst = 0.0;
  for (const QubitState& rho : sample_states(plan)) {
    const JointState r = evolve(rho, spec.probe, spec.unitary);
    for (const Matrix2& x : gens) {
      const double in = expectation(rho, x);
      worst = std::max(worst, std::abs(expectation(r, tensor(x, pauli(0))) - in));
      worst = std::max(worst, std::abs(expectation(r, tensor(pauli(0), x)) - in));
    }
  }
  return CloningCheck{worst <= tol, worst};
}

NoiseReport estimate_noises(const CloningMachineSpec& spec, int n_states,
                            std::uint64_t seed, double tol) {
  if (n_states < 4) {
    throw std::domain_error(
        "estimate_noises: need at least 4 states (means are affine in the "
        "Bloch vector)");
  }
  RandomStream rng(seed);
  const Matrix2 gens[2] = {spec.observable_class.generator_a(),
                           spec.observable_class.generator_b()};
  struct Row {
    double in, out1, out2;
  };
  std::vector<Row> rows;
  rows.reserve(2 * n_states);
  double num1 = 0, num2 = 0, den = 0;
  for (int i = 0; i < n_states; ++i) {
    const QubitState rho = bloch_to_state(random_bloch(rng));
    const JointState r = evolve(rho, spec.probe, spec.unitary);
    for (const Matrix2& x : gens) {
      const Row row{expectation(rho, x),
                    expectation(r, tensor(x, pauli(0))),
                    expectation(r, tensor(pauli(0), x))};
      num1 += row.in * row.out1;
      num2 += row.in * row.out2;
      den += row.in * row.in;
      rows.push_back(row);
    }
  }
  if (den == 0) {
    throw std::runtime_error(
        "estimate_noises: all sampled input means vanish, cannot fit");
  }
  const double eta1 = num1 / den;
  const double eta2 = num2 / den;
  if (std::abs(eta1) < 1e-9 || std::abs(eta2) < 1e-9) {
    throw std::runtime_error(
        "estimate_noises: information destroyed (shrink factor " +
        std::to_string(std::min(std::abs(eta1), std::abs(eta2))) +
        "), added noise undefined");
  }
  NoiseReport report;
  report.g1_fit = 1.0 / eta1;
  report.g2_fit = 1.0 / eta2;
  report.samples_used = n_states;
  report.residual_max = 0.0;
  for (const Row& row : rows) {
    report.residual_max = std::max(
        report.residual_max, std::abs(row.in - report.g1_fit * row.out1));
    report.residual_max = std::max(
        report.residual_max, std::abs(row.in - report.g2_fit * row.out2));
  }
  report.state_independent = report.residual_max <= tol;
  return report;
}

bool check_covariance(const CloningMachineSpec& spec, const Matrix2& w,
                      int n_states, std::uint64_t seed, double tol) {
  const double defect = unitarity_defect(w);
  if (defect > kUnitaryTol) {
    throw std::domain_error("check_covariance: W is not unitary, defect " +
                            std::to_string(defect));
  }
  CloningMachineSpec transformed{
      spec.name + "+conj",
      tensor(w.adjoint(), w.adjoint()) * spec.unitary * tensor(w, pauli(0)),
      spec.probe,
      ObservableClass(w.adjoint() * spec.observable_class.generator_a() * w,
                      w.adjoint() * spec.observable_class.generator_b() * w,
                      spec.observable_class.label() + " conjugated"),
      spec.predicted_g1,
      spec.predicted_g2,
      spec.theta};
  const NoiseReport ref = estimate_noises(spec, n_states, seed, tol);
  const NoiseReport got = estimate_noises(transformed, n_states, seed, tol);
  return std::abs(got.g1_fit - ref.g1_fit) <= tol &&
         std::abs(got.g2_fit - ref.g2_fit) <= tol;
}

double nccm_residual(const CartanParams& p, double g1, double g2) {
  const Matrix4 u = tensor(pauli(0), flip_unitary()) * cartan_kernel(p);
  const Matrix2 ket0_proj = 0.5 * (pauli(0) + pauli(3));
  const Matrix4 probe_side = tensor(pauli(0), ket0_proj);
  const struct {
    double g;
    Matrix4 observable;
    Matrix2 target;
  } equations[4] = {
      {g1, tensor(pauli(1), pauli(0)), pauli(1)},
      {g1, tensor(pauli(2), pauli(0)), pauli(2)},
      {g2, tensor(pauli(0), pauli(1)), pauli(1)},
      {g2, tensor(pauli(0), pauli(2)), pauli(2)},
  };
  double worst = 0.0;
  for (const auto& eq : equations) {
    const Matrix2 reduced = partial_trace(
        probe_side * u.adjoint() * eq.observable * u, Subsystem::signal);
    worst = std::max(worst,
                     (eq.g * reduced - eq.target).operatorNorm());
  }
  return worst;
}

Matrix4 su4_from_params(const Eigen::Matrix<double, 15, 1>& t) {
  Matrix4 h = Matrix4::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0) continue;
      h += t(k++) * tensor(pauli(i), pauli(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix4> es(h);
  const Eigen::Vector4d w = es.eigenvalues();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) {
    phases(i) = std::exp(Complex(0, w(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

NoGoObjective::NoGoObjective(const Matrix2& gen_a, const Matrix2& gen_b) {
  if (!is_hermitian(gen_a) || !is_hermitian(gen_b)) {
    throw std::domain_error("NoGoObjective: generators must be Hermitian");
  }
  const Matrix2 gens[2] = {gen_a, gen_b};
  for (int g = 0; g < 2; ++g) {
    signal_obs_[g] = tensor(gens[g], pauli(0));
    probe_obs_[g] = tensor(pauli(0), gens[g]);
  }
  const BlochVector fiducials[4] = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Matrix2 ket0_proj = 0.5 * (pauli(0) + pauli(3));
  for (int s = 0; s < 4; ++s) {
    const QubitState rho = bloch_to_state(fiducials[s]);
    joint_inputs_[s] = tensor(rho.matrix(), ket0_proj);
    for (int g = 0; g < 2; ++g) {
      input_means_[s][g] = expectation(rho, gens[g]);
    }
  }
}

double NoGoObjective::at_unitary(const Matrix4& u) const {
  double total = 0.0;
  for (int s = 0; s < 4; ++s) {
    const Matrix4 r = u * joint_inputs_[s] * u.adjoint();
    for (int g = 0; g < 2; ++g) {
      const double in = input_means_[s][g];
      const double d1 = (r * signal_obs_[g]).trace().real() - in;
      const double d2 = (r * probe_obs_[g]).trace().real() - in;
      total += d1 * d1 + d2 * d2;
    }
  }
  return total;
}

double NoGoObjective::operator()(const Eigen::Matrix<double, 15, 1>& t) const {
  return at_unitary(su4_from_params(t));
}

NoGoResult nogo_search(const NoGoOptions& options) {
  if (options.restarts < 1) {
    throw std::domain_error("nogo_search: restarts must be >= 1");
  }
  const NoGoObjective objective(options.generator_a, options.generator_b);
  NoGoResult result;
  result.best_residual = std::numeric_limits<double>::infinity();
  result.restarts = options.restarts;
  result.evaluations = 0;
  result.seed = options.seed;
  auto wrapped = [&objective](const Eigen::VectorXd& x) {
    return objective(Eigen::Matrix<double, 15, 1>(x));
  };
  for (int k = 0; k < options.restarts; ++k) {
    RandomStream rng(options.seed + static_cast<std::uint64_t>(k));
    Eigen::VectorXd start(15);
    for (int i = 0; i < 15; ++i) {
      start(i) = M_PI * (2.0 * rng.uniform01() - 1.0);
    }
    const NelderMeadResult run = nelder_mead(wrapped, start, options.optimizer);
    result.evaluations += run.evaluations;
    if (run.best_value < result.best_residual) {
      result.best_residual = run.best_value;
      for (int i = 0; i < 15; ++i) {
        result.best_parameters[static_cast<std::size_t>(i)] = run.best_point(i);
      }
    }
  }
  return result;
}

std::string to_json(const NoiseReport& report) {
  std::string out = "{";
  out += "\"g1_fit\": " + format_float(report.g1_fit);
  out += ", \"g2_fit\": " + format_float(report.g2_fit);
  out += ", \"residual_max\": " + format_float(report.residual_max);
  out += ", \"samples_used\": " + std::to_string(report.samples_used);
  out += ", \"state_independent\": ";
  out += report.state_independent ? "true" : "false";
  out += "}";
  return out;
}

std::string to_json(const NoGoResult& result) {
  std::string out = "{";
  out += "\"best_residual\": " + format_float(result.best_residual);
  out += ", \"best_parameters\": [";
  for (std::size_t i = 0; i < result.best_parameters.size(); ++i) {
    if (i) out += ", ";
    out += format_float(result.best_parameters[i]);
  }
  out += "]";
  out += ", \"restarts\": " + std::to_string(result.restarts);
  out += ", \"evaluations\": " + std::to_string(result.evaluations);
  out += ", \"seed\": " + std::to_string(result.seed);
  out += ", \"probe\": \"pure |0><0| only; mixed-probe output means are convex "
         "mixtures of pure-probe ones\"";
  out += ", \"caveat\": \"numerical evidence of infeasibility, not a proof\"";
  out += "}";
  return out;
}

}  // namespace clobs
