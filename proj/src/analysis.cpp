#include <chrono>

#include "dechist/report.hpp"

namespace dechist {

AnalysisReport run_analysis(const AnalysisConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport report;
  report.config = config.document;

  if (config.grid) {
    const HistoryGrid& grid = *config.grid;
    const DecoherenceMatrix fine = build_decoherence_functional(grid);
    std::vector<CoarseGrainingMap> extra;
    if (config.coarse_grain) extra.push_back(*config.coarse_grain);
    report.axioms = check_axioms(fine, grid, extra);
    const DecoherenceMatrix analyzed =
        config.coarse_grain ? coarse_grain_D(fine, *config.coarse_grain) : fine;
    report.provenance = analyzed.provenance();
    report.labels = analyzed.labels();
    report.entries = analyzed.entries();
    report.verdict = decide(analyzed, config.criterion, config.epsilon);
  } else {
    const LatticeModel& lattice = *config.lattice;
    const PathPartition& partition = *config.partition;
    const DecoherenceMatrix d = build_D_pathsum(lattice, partition);
    report.axioms = check_axioms(d);
    // Condition (iv) for the path formulation: merging classes commutes
    // with building D.
    std::vector<CoarseGrainingMap> merges;
    merges.push_back(CoarseGrainingMap::identity(partition.labels()));
    merges.push_back(CoarseGrainingMap::all_to_one(partition.labels()));
    if (partition.class_count() >= 3) {
      std::vector<std::string> assigned = partition.labels();
      assigned[1] = assigned[0];
      merges.push_back(CoarseGrainingMap::from_labels(partition.labels(), assigned));
    }
    report.axioms.superposition_residual =
        pathsum_superposition_residual(lattice, partition, merges);
    report.axioms.pass = report.axioms.pass &&
                         report.axioms.superposition_residual <=
                             lattice.tolerances().structural_tol;
    report.provenance = d.provenance();
    report.labels = d.labels();
    report.entries = d.entries();
    report.verdict = decide(d, config.criterion, config.epsilon);
  }

  const auto end = std::chrono::steady_clock::now();
  report.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return report;
}

}  // namespace dechist
