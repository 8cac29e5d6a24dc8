#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dechist/config.hpp"

namespace dechist {

/// Everything a run produces: the analyzed matrix, axiom residuals, the
/// verdict, and the config echo. JSON serialization is lossless at full
/// double precision and byte-stable across a parse/emit round trip.
struct AnalysisReport {
  nlohmann::json config;  // normalized config echo
  Provenance provenance = Provenance::operator_form;
  std::vector<std::string> labels;
  Matrix entries;
  AxiomReport axioms;
  DecoherenceVerdict verdict;
  double elapsed_ms = 0.0;

  nlohmann::json to_json() const;
  static AnalysisReport from_json(const nlohmann::json& j);

  std::string to_json_text() const;  // to_json().dump(2) + newline
  std::string to_csv_text() const;   // flattened entries + verdict footer
};

/// Runs the configured analysis end to end: builds the matrix by the
/// requested formulation, checks the axioms, applies the criterion.
/// Deterministic given the config (timing metadata aside).
AnalysisReport run_analysis(const AnalysisConfig& config);

/// Writes the report to destination in the given format ("json" or "csv").
void emit_report(const AnalysisReport& report, const std::string& format,
                 const std::string& destination);

/// Reads a JSON report back; from_json(parse(read(path))).
AnalysisReport read_report(const std::string& path);

}  // namespace dechist
