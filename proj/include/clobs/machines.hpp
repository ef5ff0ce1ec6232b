#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clobs/qcore.hpp"

namespace clobs {

/// Two-parameter observable class {c·A + d·B} with real coefficients c, d.
class ObservableClass {
 public:
  ObservableClass(const Matrix2& generator_a, const Matrix2& generator_b,
                  std::string label);

  const Matrix2& generator_a() const { return a_; }
  const Matrix2& generator_b() const { return b_; }
  const std::string& label() const { return label_; }

  /// Frobenius residual of the best real-coefficient fit X ≈ c·A + d·B.
  double membership_residual(const Matrix2& x) const;
  bool contains(const Matrix2& x, double tol = 1e-10) const;
  bool generators_commute(double tol = kStateTol) const;

 private:
  Matrix2 a_;
  Matrix2 b_;
  std::string label_;
};

/// A cloning machine (U, ϱ_p, X) together with the added noises it is
/// expected to show; predicted_g* are empty for machines without a
/// closed-form prediction.
struct CloningMachineSpec {
  std::string name;
  Matrix4 unitary;
  QubitState probe;
  ObservableClass observable_class;
  std::optional<double> predicted_g1;
  std::optional<double> predicted_g2;
  std::optional<double> theta;
};

/// Clone marginal of a shrink channel: output Bloch vector = η · input.
struct MarginalCloneModel {
  double shrink_factor;
  std::string description;
};

/// σ₁ and σ₂ means and raw variances of one clone of the universal cloner.
struct CloneMarginals {
  double mean1;
  double mean2;
  double variance1;
  double variance2;
};

/// F = (i/√2)(σ₁ + σ₂); conjugation by F exchanges σ₁ and σ₂.
const Matrix2& flip_unitary();

/// The noncommuting class {x₁σ₁ + x₂σ₂}.
ObservableClass nc_class();

/// T = (I⊗F)·exp[iθ/2(σ₁⊗σ₁ − σ₂⊗σ₂)] with probe |0⟩⟨0|; added noises
/// g₁ = 1/cosθ, g₂ = 1/sinθ. θ must lie strictly inside (0, π/2).
CloningMachineSpec machine_nc(double theta);

/// U_V = (V†⊗V†)(I⊗F)U_nc(V⊗I) for the class {c·V†σ₁V + d·V†σ₂V}; same
/// added noises as machine_nc(θ).
CloningMachineSpec machine_conjugated(const Matrix2& v, double theta);

/// Phase-covariant state cloner acting as |00⟩ → |00⟩ and
/// |10⟩ → cosθ|10⟩ + sinθ|01⟩, completed unitarily on span{|10⟩,|01⟩}
/// (|01⟩ → −sinθ|10⟩ + cosθ|01⟩) and as identity on |11⟩.
CloningMachineSpec machine_phase_covariant(double theta);

/// (σ₃⊗σ₃)·T(θ): optimal machine with negative noises −1/cosθ, −1/sinθ.
CloningMachineSpec machine_sign_flipped(double theta);

/// Controlled-NOT with the signal as control; clones {x·σ₃} perfectly.
CloningMachineSpec machine_commuting();

/// Per-clone output of the symmetric universal state cloner, which shrinks
/// the whole Bloch vector by 2/3. Marginal model only; inter-clone
/// correlations are not represented.
CloneMarginals universal_clone_marginal(const BlochVector& s);

MarginalCloneModel universal_clone_model();

struct CatalogEntry {
  std::string name;
  std::string class_label;
  std::string noise_formula;
  bool takes_theta;
};

/// Stable machine names exposed to the CLI.
const std::vector<CatalogEntry>& catalog();

/// Build a catalog machine by name. "conjugated" uses the fixed conjugation
/// V = Hadamard; "universal-marginal" is not a unitary machine and is
/// rejected here. Unknown names throw std::invalid_argument.
CloningMachineSpec make_catalog_machine(const std::string& name,
                                        std::optional<double> theta);

}  // namespace clobs
