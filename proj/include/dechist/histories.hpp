#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dechist/hilbert.hpp"

namespace dechist {

/// Hard cap on the number of histories (or paths) any full enumeration
/// may produce.
inline constexpr std::uint64_t kMaxEnumeration = 1'000'000;

/// One coarse-grained history: a choice of alternative at each time slot,
/// earliest slot first.
struct HistoryIndex {
  std::vector<int> alphas;

  /// Canonical display form, e.g. "(0,1)". Used as the matrix row label
  /// and as the key in reports and coarse-graining maps.
  std::string to_label() const;

  friend bool operator==(const HistoryIndex&, const HistoryIndex&) = default;
  friend auto operator<=>(const HistoryIndex&, const HistoryIndex&) = default;
};

/// Ordered times with one projection family per time, plus the dynamics and
/// the initial state. Construction enforces every invariant, so downstream
/// operations can assume a well-formed grid.
class HistoryGrid {
 public:
  HistoryGrid(std::vector<double> times, std::vector<ProjectionFamily> families, Hamiltonian h,
              DensityState state, Tolerances tol = {});

  /// Diagnostic factory: skips the per-family completeness/exclusivity gate
  /// (shapes and times are still enforced), for measuring the completeness
  /// residual of a broken grid. build_decoherence_functional still refuses
  /// such grids.
  static HistoryGrid with_unchecked_families(std::vector<double> times,
                                             std::vector<ProjectionFamily> families, Hamiltonian h,
                                             DensityState state, Tolerances tol = {});

  int dimension() const { return hamiltonian_.dimension(); }
  std::size_t slot_count() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const ProjectionFamily& family(std::size_t j) const { return families_.at(j); }
  const std::vector<ProjectionFamily>& families() const { return families_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  const DensityState& state() const { return state_; }
  const Tolerances& tolerances() const { return tol_; }

  std::uint64_t history_count() const;
  bool valid_index(const HistoryIndex& a) const;

  /// Heisenberg-evolved members of family j: U(t_j)^dag P_k U(t_j).
  const std::vector<Matrix>& heisenberg_family(std::size_t j) const;

 private:
  HistoryGrid(std::vector<double> times, std::vector<ProjectionFamily> families, Hamiltonian h,
              DensityState state, Tolerances tol, bool check_families);

  std::vector<double> times_;
  std::vector<ProjectionFamily> families_;
  Hamiltonian hamiltonian_;
  DensityState state_;
  Tolerances tol_;
  std::vector<std::vector<Matrix>> heisenberg_;  // precomputed at construction
};

/// All index tuples of a grid, lexicographic (earliest slot most significant).
std::vector<HistoryIndex> enumerate_histories(const HistoryGrid& g);

/// C_alpha = P_{alpha_n}(t_n) ... P_{alpha_1}(t_1), latest time leftmost.
Matrix class_operator(const HistoryGrid& g, const HistoryIndex& a);

/// || sum_alpha C_alpha - I ||_max, summed in lexicographic index order.
double completeness_check(const HistoryGrid& g);

/// A total, single-valued assignment of source labels to coarser bar-labels.
/// The domain is an explicit ordered label list: the lexicographic history
/// enumeration for grids, class labels for path partitions. Preimages are
/// materialized, not predicate-defined.
class CoarseGrainingMap {
 public:
  static CoarseGrainingMap from_labels(std::vector<std::string> domain,
                                       const std::vector<std::string>& assigned);
  static CoarseGrainingMap from_function(const HistoryGrid& g,
                                         const std::function<std::string(const HistoryIndex&)>& f);
  /// Explicit cells; throws coverage_error naming any unassigned or
  /// doubly-assigned index.
  static CoarseGrainingMap from_cells(
      const HistoryGrid& g,
      const std::vector<std::pair<std::string, std::vector<HistoryIndex>>>& cells);
  static CoarseGrainingMap identity(const HistoryGrid& g);
  static CoarseGrainingMap identity(std::vector<std::string> domain);
  static CoarseGrainingMap all_to_one(const HistoryGrid& g, const std::string& label = "all");
  static CoarseGrainingMap all_to_one(std::vector<std::string> domain,
                                      const std::string& label = "all");
  /// Marginal on one time slot: alpha -> (alpha_slot).
  static CoarseGrainingMap by_slot(const HistoryGrid& g, std::size_t slot);

  const std::vector<std::string>& domain() const { return domain_; }
  /// Bar labels in order of first appearance over the domain.
  const std::vector<std::string>& cell_labels() const { return cell_labels_; }
  std::size_t cell_count() const { return cell_labels_.size(); }
  int cell_of(std::size_t domain_pos) const { return cell_of_.at(domain_pos); }
  const std::string& label_of(std::size_t domain_pos) const {
    return cell_labels_.at(static_cast<std::size_t>(cell_of_.at(domain_pos)));
  }
  /// Domain positions per cell, ascending.
  std::vector<std::vector<std::size_t>> preimages() const;

  /// Composition: relabel this map's cells, yielding the composite
  /// domain -> relabel(cell) map. Throws coverage_error if a cell label
  /// is missing from the relabelling.
  CoarseGrainingMap then(const std::map<std::string, std::string>& relabel) const;

 private:
  CoarseGrainingMap() = default;
  std::vector<std::string> domain_;
  std::vector<int> cell_of_;
  std::vector<std::string> cell_labels_;
};

struct CoarseOperators {
  std::vector<std::string> labels;
  std::vector<Matrix> operators;
};

/// C_bar = sum over the cell's histories of C_alpha, summed in
/// lexicographic order. The map must cover exactly the grid's enumeration.
CoarseOperators coarse_grain_operators(const HistoryGrid& g, const CoarseGrainingMap& m);

}  // namespace dechist
