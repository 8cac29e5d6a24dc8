#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dechist/decoherence.hpp"

namespace dechist {

/// Discrete configuration space: M sites, N time steps of length dt, exact
/// short-time propagator K = exp(-i H dt), and the initial density matrix.
/// A fine-grained history is a site sequence (q_0, ..., q_N); its amplitude
/// is the product of propagator elements along it, the action phase living
/// in the K factors.
class LatticeModel {
 public:
  LatticeModel(Hamiltonian h, int slice_count, double dt, DensityState initial_state,
               Tolerances tol = {});

  int sites() const { return hamiltonian_.dimension(); }
  int slice_count() const { return slice_count_; }
  double dt() const { return dt_; }
  /// K(b, a) = <b| exp(-i H dt) |a>.
  const Matrix& propagator() const { return propagator_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  const DensityState& initial_state() const { return initial_state_; }
  const Tolerances& tolerances() const { return tol_; }

  /// M^(N+1), saturating just past the enumeration cap.
  std::uint64_t path_count() const;

 private:
  Hamiltonian hamiltonian_;
  int slice_count_;
  double dt_;
  DensityState initial_state_;
  Tolerances tol_;
  Matrix propagator_;
};

/// One fine-grained history: the site occupied at each slice.
struct FinePath {
  std::vector<int> sites_at_slices;  // length N+1

  friend bool operator==(const FinePath&, const FinePath&) = default;
};

/// Exhaustive, exclusive classes over all M^(N+1) paths, materialized as a
/// class id per lexicographic path rank.
class PathPartition {
 public:
  PathPartition(std::vector<std::string> labels, std::vector<std::int32_t> class_of_rank,
                std::vector<HistoryIndex> indices = {});

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t class_count() const { return labels_.size(); }
  int class_of(std::uint64_t path_rank) const {
    return class_of_rank_.at(static_cast<std::size_t>(path_rank));
  }
  std::uint64_t path_count() const { return class_of_rank_.size(); }
  /// Region tuples when the classes came from instantaneous regions;
  /// empty for predicate partitions.
  const std::vector<HistoryIndex>& indices() const { return indices_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::int32_t> class_of_rank_;
  std::vector<HistoryIndex> indices_;
};

/// Product of propagator elements along the path; 1 for a zero-step path.
Complex path_amplitude(const LatticeModel& m, const FinePath& p);

/// All site sequences in lexicographic order (slice 0 most significant).
std::vector<FinePath> enumerate_paths(const LatticeModel& m);

/// slice index -> site groups partitioning [0, M) at that slice.
using RegionSets = std::map<int, std::vector<std::vector<int>>>;

/// Classes labelled by the tuple of region indices the path hits at the
/// constrained slices. Unconstrained slices are free.
PathPartition region_partition(const LatticeModel& m, const RegionSets& region_sets);

/// Classes from an arbitrary total labeler over paths; alternatives that
/// are not tied to any single moment of time. Exhaustiveness is by full
/// enumeration.
PathPartition predicate_partition(const LatticeModel& m,
                                  const std::function<std::string(const FinePath&)>& labeler);

/// Double path sum: D(c, c') = sum over paths q in c, q' in c' with the same
/// final site of A[q] conj(A[q']) rho(q_0, q'_0). Paths accumulate in
/// lexicographic order.
DecoherenceMatrix build_D_pathsum(const LatticeModel& m, const PathPartition& partition);

/// Merge partition classes under a map over the class labels.
PathPartition coarsen(const PathPartition& partition, const CoarseGrainingMap& m);

/// The same instantaneous alternatives expressed as a projector grid
/// (region projectors, Heisenberg-evolved at the constrained slice times).
HistoryGrid lattice_history_grid(const LatticeModel& m, const RegionSets& region_sets);

/// || D_pathsum - D_operator ||_max for instantaneous region alternatives.
/// The two routes are algebraically identical; the deviation measures
/// implementation error only.
double operator_equivalence_oracle(const LatticeModel& m, const RegionSets& region_sets);

/// Condition (iv) for the path formulation: largest deviation between
/// coarse_grain_D of the fine matrix and build_D_pathsum of the merged
/// partition, over the supplied label maps.
double pathsum_superposition_residual(const LatticeModel& m, const PathPartition& partition,
                                      std::span<const CoarseGrainingMap> maps);

}  // namespace dechist
