#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dechist/histories.hpp"

namespace dechist {

enum class Provenance { operator_form, path_sum };

std::string to_string(Provenance p);

enum class Criterion { medium, weak, linear_positivity };

/// Accepts "medium", "weak", "lp" / "linear-positivity"; anything else is a
/// usage_error.
Criterion criterion_from_string(const std::string& name);
std::string to_string(Criterion c);

/// The interference matrix D(alpha, alpha') over an ordered history set.
/// A plain carrier: shape is enforced at construction; hermiticity is
/// measured by check_axioms, never assumed.
class DecoherenceMatrix {
 public:
  DecoherenceMatrix(Matrix entries, std::vector<std::string> labels, Provenance provenance,
                    std::vector<HistoryIndex> indices = {});

  const Matrix& entries() const { return entries_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Provenance provenance() const { return provenance_; }
  /// Index tuples when the labels came from a tuple enumeration
  /// (grid histories or region classes); empty for free-form labels.
  const std::vector<HistoryIndex>& indices() const { return indices_; }
  std::size_t size() const { return labels_.size(); }

  double hermiticity_residual() const;

 private:
  Matrix entries_;
  std::vector<std::string> labels_;
  Provenance provenance_;
  std::vector<HistoryIndex> indices_;
};

struct AxiomReport {
  double hermiticity_residual = 0.0;
  double normalization_residual = 0.0;
  double positivity_min_diagonal = 0.0;
  double superposition_residual = 0.0;
  bool pass = false;
};

struct DecoherenceVerdict {
  Criterion criterion = Criterion::medium;
  double epsilon = 0.0;
  double max_violation = 0.0;
  bool decoherent = false;
  std::vector<std::string> labels;
  /// Present exactly when decoherent; aligned with labels.
  std::optional<std::vector<double>> probabilities;
};

/// D(alpha, alpha') = Tr(C_alpha rho C_alpha'^dag). Refuses grids whose
/// class operators do not sum to the identity.
DecoherenceMatrix build_decoherence_functional(const HistoryGrid& g);

/// D from an explicit operator set (the superposition check's second route,
/// also used for coarse-grained operator sets).
DecoherenceMatrix decoherence_from_operators(const std::vector<Matrix>& ops,
                                             const std::vector<std::string>& labels,
                                             const DensityState& state, Provenance provenance,
                                             std::vector<HistoryIndex> indices = {});

/// Matrix-level axioms (i)-(iii) only; superposition_residual is 0 since no
/// coarse grainings are tested without a grid.
AxiomReport check_axioms(const DecoherenceMatrix& d, const Tolerances& tol = {});

/// Full axiom battery. Condition (iv) is checked against the identity map,
/// the all-to-one map, every single-slot marginal, and any extra maps
/// supplied: coarse_grain_D(d, m) must equal the functional rebuilt from
/// coarse_grain_operators(g, m).
AxiomReport check_axioms(const DecoherenceMatrix& d, const HistoryGrid& g,
                         std::span<const CoarseGrainingMap> extra_maps = {},
                         const Tolerances& tol = {});

/// D(bar, bar') = double sum of D over the cells' preimages, summed in
/// domain (lexicographic) order.
DecoherenceMatrix coarse_grain_D(const DecoherenceMatrix& d, const CoarseGrainingMap& m);

/// Applies a decoherence criterion at threshold epsilon.
///   medium: max |off-diagonal| <= eps
///   weak:   max |Re off-diagonal| <= eps
///   linear positivity: candidate p(alpha) = Re of the row sum
///     (equal to Re Tr(C_alpha rho) by the row-sum identity); requires
///     min p >= -eps.
/// Probabilities are present iff decoherent: Re D(alpha,alpha) for
/// medium/weak, the row-sum candidates for linear positivity.
DecoherenceVerdict decide(const DecoherenceMatrix& d, Criterion criterion, double epsilon,
                          const Tolerances& tol = {});

/// Linear-positivity candidates computed directly from the class operators:
/// p(alpha) = Re Tr(C_alpha rho). Independent of build_decoherence_functional.
DecoherenceVerdict linear_positivity_probs(const HistoryGrid& g, double epsilon = 1e-8);

struct BranchRecordsResult {
  /// Present iff the branch vectors are pairwise orthogonal (normalized
  /// overlap <= epsilon); aligned with the lexicographic enumeration.
  std::optional<std::vector<Projector>> records;
  /// Largest normalized overlap |<b_a, b_b>| / (|b_a| |b_b|) over distinct
  /// nonzero branches. This is what exceeded epsilon when records is empty.
  double max_overlap = 0.0;
  std::vector<std::string> labels;
};

/// Record projectors for a pure initial state: R_alpha projects onto the
/// normalized branch C_alpha |psi>, the zero projector for null branches.
/// Mixed states are refused with unsupported_state_error.
BranchRecordsResult branch_records(const HistoryGrid& g, double epsilon = 1e-8,
                                   const Tolerances& tol = {});

}  // namespace dechist
