#include "clobs/jointmeas.hpp"

#include <cmath>
#include <limits>

#include "clobs/format.hpp"
#include "clobs/verify.hpp"

namespace clobs {

double measured_variance(double g, double clone_mean) {
  if (std::abs(g) < 1.0 - kStateTol) {
    throw std::domain_error("measured_variance: |g| < 1 is not a valid noise");
  }
  if (std::abs(clone_mean) > 1.0 + kStateTol) {
    throw std::domain_error("measured_variance: |clone mean| > 1");
  }
  const double m = std::clamp(clone_mean, -1.0, 1.0);
  return g * g * (1.0 - m * m);
}

UncertaintyReport uncertainty_product(const CloningMachineSpec& spec,
                                      const QubitState& rho,
                                      const UncertaintyOptions& options) {
  const Matrix2& gen_a = spec.observable_class.generator_a();
  const Matrix2& gen_b = spec.observable_class.generator_b();
  if (!approx_equal((gen_a * gen_a).eval(), pauli(0), kStateTol) ||
      !approx_equal((gen_b * gen_b).eval(), pauli(0), kStateTol)) {
    throw std::domain_error(
        "uncertainty_product: generators must square to the identity "
        "(±1-outcome observables)");
  }
  if (!options.allow_commuting && spec.observable_class.generators_commute()) {
    throw std::domain_error(
        "uncertainty_product: generators commute; not a noncommuting joint "
        "measurement (pass allow_commuting for the diagnostic)");
  }
  const NoiseReport noises =
      estimate_noises(spec, options.n_states, options.seed, options.tol);
  const JointState r = evolve(rho, spec.probe, spec.unitary);

  UncertaintyReport report;
  report.theta_used =
      spec.theta ? *spec.theta : std::numeric_limits<double>::quiet_NaN();
  report.input_bloch = state_to_bloch(rho);
  report.g1 = noises.g1_fit;
  report.g2 = noises.g2_fit;
  report.di1 = variance(rho, gen_a);
  report.di2 = variance(rho, gen_b);
  report.dm1 = measured_variance(noises.g1_fit,
                                 expectation(r, tensor(gen_a, pauli(0))));
  report.dm2 = measured_variance(noises.g2_fit,
                                 expectation(r, tensor(pauli(0), gen_b)));
  report.product = report.dm1 * report.dm2;
  report.bound = product_bound(report.di1, report.di2);
  report.saturated = std::abs(report.product - report.bound) <= 1e-9;
  return report;
}

double optimal_theta(double di1, double di2) {
  if (!(di1 > 0) || !(di2 > 0)) {
    throw std::domain_error(
        "optimal_theta: zero intrinsic variance (generator eigenstate) has "
        "no finite optimal trade-off");
  }
  return std::atan(std::pow(di1 / di2, 0.25));
}

double predicted_product(double theta, double di1, double di2) {
  const double t = std::tan(theta);
  return (t * t + di1) * (1.0 / (t * t) + di2);
}

double product_bound(double di1, double di2) {
  const double root = std::sqrt(di1 * di2) + 1.0;
  return root * root;
}

ComparisonRecord compare_with_universal(const QubitState& rho) {
  const double di1 = variance(rho, pauli(1));
  const double di2 = variance(rho, pauli(2));
  if (std::abs(di1 * di2 - 1.0) > 1e-9) {
    throw std::domain_error(
        "compare_with_universal: input is not a minimum uncertainty state "
        "(need Δiσ1·Δiσ2 = 1, got " + std::to_string(di1 * di2) + ")");
  }
  ComparisonRecord record;
  record.input_bloch = state_to_bloch(rho);
  record.di1 = di1;
  record.di2 = di2;
  record.theta_opt = optimal_theta(di1, di2);

  const CloningMachineSpec machine = machine_nc(record.theta_opt);
  const UncertaintyReport obs = uncertainty_product(machine, rho);
  record.observable_product = obs.product;
  record.observable_shrink1 = 1.0 / obs.g1;
  record.observable_shrink2 = 1.0 / obs.g2;

  const CloneMarginals clone = universal_clone_marginal(record.input_bloch);
  const double g_universal = 1.0 / universal_clone_model().shrink_factor;
  record.universal_product = measured_variance(g_universal, clone.mean1) *
                             measured_variance(g_universal, clone.mean2);
  record.universal_shrink = universal_clone_model().shrink_factor;
  record.paper_universal_product = 4.5;
  record.discrepancy =
      std::abs(record.universal_product - record.paper_universal_product) >
      1e-9;
  return record;
}

std::string to_json(const UncertaintyReport& report) {
  std::string out = "{";
  out += "\"theta\": ";
  out += std::isnan(report.theta_used) ? "null" : format_float(report.theta_used);
  out += ", \"input_bloch\": [" + format_float(report.input_bloch(0)) + ", " +
         format_float(report.input_bloch(1)) + ", " +
         format_float(report.input_bloch(2)) + "]";
  out += ", \"g1\": " + format_float(report.g1);
  out += ", \"g2\": " + format_float(report.g2);
  out += ", \"dm1\": " + format_float(report.dm1);
  out += ", \"dm2\": " + format_float(report.dm2);
  out += ", \"di1\": " + format_float(report.di1);
  out += ", \"di2\": " + format_float(report.di2);
  out += ", \"product\": " + format_float(report.product);
  out += ", \"bound\": " + format_float(report.bound);
  out += ", \"saturated\": ";
  out += report.saturated ? "true" : "false";
  out += "}";
  return out;
}

std::string to_json(const ComparisonRecord& record) {
  std::string out = "{";
  out += "\"input_bloch\": [" + format_float(record.input_bloch(0)) + ", " +
         format_float(record.input_bloch(1)) + ", " +
         format_float(record.input_bloch(2)) + "]";
  out += ", \"di1\": " + format_float(record.di1);
  out += ", \"di2\": " + format_float(record.di2);
  out += ", \"theta_opt\": " + format_float(record.theta_opt);
  out += ", \"observable_product\": " + format_float(record.observable_product);
  out += ", \"observable_shrink1\": " + format_float(record.observable_shrink1);
  out += ", \"observable_shrink2\": " + format_float(record.observable_shrink2);
  out += ", \"universal_product\": " + format_float(record.universal_product);
  out += ", \"universal_shrink\": " + format_float(record.universal_shrink);
  out += ", \"paper_universal_product\": " +
         format_float(record.paper_universal_product);
  out += ", \"discrepancy\": ";
  out += record.discrepancy ? "true" : "false";
  out += "}";
  return out;
}

std::string csv_header() {
  return "theta,g1,g2,dm1,dm2,product,bound,saturated\n";
}

std::string csv_row(const UncertaintyReport& report) {
  std::string out;
  out += format_float(report.theta_used);
  out += ',';
  out += format_float(report.g1);
  out += ',';
  out += format_float(report.g2);
  out += ',';
  out += format_float(report.dm1);
  out += ',';
  out += format_float(report.dm2);
  out += ',';
  out += format_float(report.product);
  out += ',';
  out += format_float(report.bound);
  out += ',';
  out += report.saturated ? "true" : "false";
  out += '\n';
  return out;
}

}  // namespace clobs
