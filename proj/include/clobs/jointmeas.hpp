#pragma once

#include <cstdint>
#include <string>

#include "clobs/machines.hpp"
#include "clobs/qcore.hpp"

namespace clobs {

struct UncertaintyReport {
  double theta_used;  // NaN for machines without an angle
  BlochVector input_bloch;
  double g1;
  double g2;
  double dm1;  // Δm of generator A measured on output 1, rescaled by g1
  double dm2;  // Δm of generator B measured on output 2, rescaled by g2
  double di1;  // intrinsic variance of A at the input
  double di2;  // intrinsic variance of B at the input
  double product;
  double bound;  // (√(Δi1·Δi2) + 1)²
  bool saturated;
};

struct UncertaintyOptions {
  int n_states = 50;       // sampling for the internal noise fit
  std::uint64_t seed = 0;
  double tol = 1e-9;
  /// Diagnostic mode: allow classes whose generators commute (the report is
  /// then not a noncommuting joint measurement and the bound does not apply).
  bool allow_commuting = false;
};

/// Variance of the rescaled single-clone estimator g·(±1 outcome):
/// g²(1 − clone_mean²). Requires |g| ≥ 1 and |clone_mean| ≤ 1.
double measured_variance(double g, double clone_mean);

/// Simulates the machine on ϱ, measures generator A on output 1 and B on
/// output 2, rescales by the fitted noises and reports the variance product
/// next to its lower bound.
UncertaintyReport uncertainty_product(const CloningMachineSpec& spec,
                                      const QubitState& rho,
                                      const UncertaintyOptions& options = {});

/// θ* = arctan((Δi1/Δi2)^{1/4}); the trade-off that saturates the bound.
/// Degenerate (zero) intrinsic variances are rejected.
double optimal_theta(double di1, double di2);

/// (tan²θ + Δi1)(cot²θ + Δi2): the measured product of the nc machine as a
/// function of θ and the intrinsic input variances.
double predicted_product(double theta, double di1, double di2);

/// (√(Δi1·Δi2) + 1)²
double product_bound(double di1, double di2);

struct ComparisonRecord {
  BlochVector input_bloch;
  double di1;
  double di2;
  double theta_opt;
  double observable_product;        // cloning-of-observables machine at θ*
  double observable_shrink1;        // 1/g1 = cos θ*
  double observable_shrink2;        // 1/g2 = sin θ*
  double universal_product;         // marginal-estimator model, g = 3/2
  double universal_shrink;          // 2/3
  double paper_universal_product;   // the claimed 9/2
  bool discrepancy;                 // model value differs from the claim
};

/// Observable cloner (at the optimal θ) vs. the symmetric universal state
/// cloner on a minimum-uncertainty input (Δi1·Δi2 = 1 within 1e-9). The
/// marginal-model product is reported side by side with the claimed 9/2;
/// a mismatch sets the discrepancy flag and is never silently adjusted.
ComparisonRecord compare_with_universal(const QubitState& rho);

std::string to_json(const UncertaintyReport& report);
std::string to_json(const ComparisonRecord& record);

/// CSV schema: theta,g1,g2,dm1,dm2,product,bound,saturated with 17
/// significant digits and LF line endings.
std::string csv_header();
std::string csv_row(const UncertaintyReport& report);

}  // namespace clobs
