#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dechist/pathsum.hpp"

namespace dechist {

/// A fully validated analysis request: the normalized config document plus
/// the constructed model objects, so run_analysis never re-validates.
struct AnalysisConfig {
  std::string model_kind;  // qubit | spin-pair | lattice-particle
  std::optional<HilbertSpace> space;

  // exactly one of grid / lattice is set
  std::optional<HistoryGrid> grid;
  std::optional<CoarseGrainingMap> coarse_grain;  // grid mode only

  std::optional<LatticeModel> lattice;
  std::optional<PathPartition> partition;
  RegionSets region_sets;     // populated for region partitions
  bool region_based = false;  // true when the partition is instantaneous

  Criterion criterion = Criterion::medium;
  double epsilon = 1e-8;

  std::string output_format = "json";  // json | csv
  std::string output_path;             // empty: derive from the input name

  nlohmann::json document;  // normalized echo of the config
};

/// Parse and validate a config document. Throws config_error carrying every
/// schema violation (each prefixed with the JSON path of the offending
/// field), or an error subtype for structural problems found while building
/// the model objects.
AnalysisConfig load_config(const std::string& text);

/// All schema violations of a document, empty when valid. Never throws for
/// schema problems; malformed JSON yields a single position-annotated entry.
std::vector<std::string> validate_config(const std::string& text);

}  // namespace dechist
