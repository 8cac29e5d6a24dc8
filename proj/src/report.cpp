#include "dechist/report.hpp"

#include <fstream>
#include <map>
#include <sstream>

using nlohmann::json;

namespace dechist {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

/// Shortest round-trip decimal form, shared by the JSON and CSV emitters.
std::string number_text(double x) { return json(x).dump(); }

std::string csv_quoted(const std::string& label) {
  std::string out = "\"";
  for (const char c : label) {
    if (c == '"') out += '"';  // CSV doubles embedded quotes
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

json AnalysisReport::to_json() const {
  json matrix;
  matrix["provenance"] = to_string(provenance);
  matrix["labels"] = labels;
  json rows = json::array();
  for (Eigen::Index r = 0; r < entries.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < entries.cols(); ++c) {
      row.push_back(complex_to_json(entries(r, c)));
    }
    rows.push_back(std::move(row));
  }
  matrix["entries"] = std::move(rows);

  json ax;
  ax["hermiticity_residual"] = axioms.hermiticity_residual;
  ax["normalization_residual"] = axioms.normalization_residual;
  ax["positivity_min_diagonal"] = axioms.positivity_min_diagonal;
  ax["superposition_residual"] = axioms.superposition_residual;
  ax["pass"] = axioms.pass;

  json verdict_json;
  verdict_json["criterion"] = to_string(verdict.criterion);
  verdict_json["epsilon"] = verdict.epsilon;
  verdict_json["max_violation"] = verdict.max_violation;
  verdict_json["decoherent"] = verdict.decoherent;
  if (verdict.probabilities) {
    json probs;
    for (std::size_t a = 0; a < verdict.labels.size(); ++a) {
      probs[verdict.labels[a]] = (*verdict.probabilities)[a];
    }
    verdict_json["probabilities"] = std::move(probs);
  } else {
    verdict_json["probabilities"] = nullptr;
  }

  json out;
  out["config"] = config;
  out["decoherence_matrix"] = std::move(matrix);
  out["axioms"] = std::move(ax);
  out["verdict"] = std::move(verdict_json);
  out["timing"] = json{{"elapsed_ms", elapsed_ms}};
  return out;
}

AnalysisReport AnalysisReport::from_json(const json& j) {
  AnalysisReport r;
  r.config = j.at("config");
  const json& matrix = j.at("decoherence_matrix");
  const std::string prov = matrix.at("provenance").get<std::string>();
  r.provenance = prov == "path-sum" ? Provenance::path_sum : Provenance::operator_form;
  r.labels = matrix.at("labels").get<std::vector<std::string>>();
  const json& rows = matrix.at("entries");
  const std::size_t n = r.labels.size();
  r.entries = Matrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      r.entries(a, b) = complex_from_json(rows.at(a).at(b));
    }
  }
  const json& ax = j.at("axioms");
  r.axioms.hermiticity_residual = ax.at("hermiticity_residual").get<double>();
  r.axioms.normalization_residual = ax.at("normalization_residual").get<double>();
  r.axioms.positivity_min_diagonal = ax.at("positivity_min_diagonal").get<double>();
  r.axioms.superposition_residual = ax.at("superposition_residual").get<double>();
  r.axioms.pass = ax.at("pass").get<bool>();

  const json& verdict_json = j.at("verdict");
  r.verdict.criterion = criterion_from_string(verdict_json.at("criterion").get<std::string>());
  r.verdict.epsilon = verdict_json.at("epsilon").get<double>();
  r.verdict.max_violation = verdict_json.at("max_violation").get<double>();
  r.verdict.decoherent = verdict_json.at("decoherent").get<bool>();
  r.verdict.labels = r.labels;
  if (!verdict_json.at("probabilities").is_null()) {
    const json& probs = verdict_json.at("probabilities");
    std::vector<double> p;
    p.reserve(r.labels.size());
    for (const auto& label : r.labels) p.push_back(probs.at(label).get<double>());
    r.verdict.probabilities = std::move(p);
  }
  r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
  return r;
}

std::string AnalysisReport::to_json_text() const { return to_json().dump(2) + "\n"; }

std::string AnalysisReport::to_csv_text() const {
  std::ostringstream os;
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < entries.cols(); ++c) {
      os << csv_quoted(labels[static_cast<std::size_t>(r)]) << ","
         << csv_quoted(labels[static_cast<std::size_t>(c)]) << ","
         << number_text(entries(r, c).real()) << "," << number_text(entries(r, c).imag())
         << "\n";
    }
  }
  os << "criterion," << to_string(verdict.criterion) << "\n";
  os << "epsilon," << number_text(verdict.epsilon) << "\n";
  os << "decoherent," << (verdict.decoherent ? "true" : "false") << "\n";
  os << "max_violation," << number_text(verdict.max_violation) << "\n";
  if (verdict.probabilities) {
    for (std::size_t a = 0; a < verdict.probabilities->size(); ++a) {
      os << "p," << a << "," << number_text((*verdict.probabilities)[a]) << "\n";
    }
  }
  return os.str();
}

void emit_report(const AnalysisReport& report, const std::string& format,
                 const std::string& destination) {
  if (format != "json" && format != "csv") {
    throw usage_error("unknown report format '" + format + "' (expected json or csv)");
  }
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw io_error("cannot open '" + destination + "' for writing");
  out << (format == "json" ? report.to_json_text() : report.to_csv_text());
  if (!out.good()) throw io_error("failed while writing '" + destination + "'");
}

AnalysisReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return AnalysisReport::from_json(json::parse(buffer.str()));
}

}  // namespace dechist
