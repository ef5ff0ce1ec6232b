#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clobs/machines.hpp"
#include "clobs/nelder_mead.hpp"
#include "clobs/qcore.hpp"

namespace clobs {

/// Seeded random stream. Doubles are derived from the raw engine words by
/// fixed arithmetic so that sequences are reproducible bit for bit.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform over the solid Bloch ball.
BlochVector random_bloch(RandomStream& rng);

/// Haar-distributed element of SU(2).
Matrix2 random_unitary2(RandomStream& rng);

struct StateSamplingPlan {
  int n_states = 50;
  std::uint64_t seed = 0;
  /// Also test the maximally mixed state and the three Pauli +1 eigenstates.
  bool include_fiducials = true;
};

std::vector<QubitState> sample_states(const StateSamplingPlan& plan);

struct OutputMeans {
  double input;  // Tr[ϱX]
  double out1;   // Tr[R(X⊗I)]
  double out2;   // Tr[R(I⊗X)]
};

/// Mean of X at the input and on both outputs. X must belong to the
/// machine's class unless `force` enables the diagnostic mode.
OutputMeans output_means(const CloningMachineSpec& spec, const QubitState& rho,
                         const Matrix2& x, bool force = false);

struct CloningCheck {
  bool ok;
  double worst_residual;
};

/// Defining equations: |X̄₁ − X̄| ≤ tol and |X̄₂ − X̄| ≤ tol for both
/// generators on every sampled state. Generators suffice: means are linear
/// in X.
CloningCheck check_cloning(const CloningMachineSpec& spec, double tol,
                           const StateSamplingPlan& plan);

struct NoiseReport {
  double g1_fit;
  double g2_fit;
  double residual_max;
  int samples_used;
  bool state_independent;
};

/// Least-squares fit of the added noises over n_states random states and
/// both generators. The fit runs on the shrink factors 1/g and is inverted
/// afterwards; a shrink below 1e-9 in magnitude means the machine destroyed
/// the information and is reported as an error instead of a divergent g.
NoiseReport estimate_noises(const CloningMachineSpec& spec, int n_states,
                            std::uint64_t seed, double tol);

/// Unitary covariance: the triple ((W†⊗W†)U(W⊗I), ϱ_p, W†XW) must show the
/// same fitted noises as the original machine, within tol.
bool check_covariance(const CloningMachineSpec& spec, const Matrix2& w,
                      int n_states, std::uint64_t seed, double tol);

/// Max operator-norm residual of the four cloning equations for the machine
/// (I⊗F)·cartan_kernel(p) with probe |0⟩⟨0| and class generators σ₁, σ₂.
double nccm_residual(const CartanParams& p, double g1, double g2);

/// Exponential-map coordinates on SU(4): U = exp(i Σ_k t_k P_k) over the 15
/// two-qubit Pauli products (identity excluded). Surjective for t ∈ [−π,π]¹⁵.
Matrix4 su4_from_params(const Eigen::Matrix<double, 15, 1>& t);

/// Cloning infeasibility of one unitary: the sum, over four affinely
/// spanning fiducial states and both class generators, of the squared mean
/// deviations on the two outputs. Zero iff (U, |0⟩⟨0|, class) is a perfect
/// cloning machine.
class NoGoObjective {
 public:
  NoGoObjective(const Matrix2& gen_a, const Matrix2& gen_b);

  double operator()(const Eigen::Matrix<double, 15, 1>& t) const;
  double at_unitary(const Matrix4& u) const;

 private:
  std::array<Matrix4, 2> signal_obs_;
  std::array<Matrix4, 2> probe_obs_;
  std::array<Matrix4, 4> joint_inputs_;
  std::array<std::array<double, 2>, 4> input_means_;
};

struct NoGoOptions {
  int restarts = 200;
  std::uint64_t seed = 42;
  NelderMeadOptions optimizer;
  /// Extra descents from the incumbent with a tight start simplex; the
  /// plain schedule stagnates one to two decades short in flat basins.
  int polish_runs = 2;
  Matrix2 generator_a = pauli(1);
  Matrix2 generator_b = pauli(2);
};

struct NoGoResult {
  double best_residual;
  std::array<double, 15> best_parameters;
  int restarts;
  long long evaluations;
  std::uint64_t seed;
};

/// Multi-start simplex descent over the full 15-parameter SU(4) family with
/// the probe fixed pure |0⟩⟨0|. Restart k draws its start uniformly from
/// [−π,π]¹⁵ with stream seed+k, so results do not depend on scheduling.
NoGoResult nogo_search(const NoGoOptions& options);

std::string to_json(const NoiseReport& report);
std::string to_json(const NoGoResult& result);

}  // namespace clobs
