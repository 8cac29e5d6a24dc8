#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dechist/models.hpp"
#include "dechist/report.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes (stable scripting contract):
//   0  decoherent verdict (or plain success for non-analyze commands)
//   2  not-decoherent verdict
//   1  any error
constexpr int kExitDecoherent = 0;
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotDecoherent = 2;

/// Resolves a config argument: a model-zoo preset name or a file path.
std::string read_config_text(const std::string& arg) {
  if (const dechist::ModelPreset* preset = dechist::find_preset(arg)) {
    return preset->config_text;
  }
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw dechist::io_error("cannot open config '" + arg + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Relative output paths land in DECHIST_OUT_DIR when it is set.
std::string resolve_output_path(const std::string& path) {
  const char* out_dir = std::getenv("DECHIST_OUT_DIR");
  if (!out_dir || *out_dir == '\0') return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(out_dir) / p).string();
}

std::string default_output_name(const std::string& config_arg, const std::string& format) {
  const fs::path stem = fs::path(config_arg).stem();
  return (stem.empty() ? fs::path("report") : stem).string() + ".report." + format;
}

int run_analyze(const std::string& config_arg, const std::string& criterion_flag,
                double epsilon_flag, const std::string& format_flag, const std::string& out_flag) {
  dechist::AnalysisConfig config = dechist::load_config(read_config_text(config_arg));
  if (!criterion_flag.empty()) {
    config.criterion = dechist::criterion_from_string(criterion_flag);
    config.document["analysis"]["criterion"] = dechist::to_string(config.criterion);
  }
  if (epsilon_flag > 0.0) {
    config.epsilon = epsilon_flag;
    config.document["analysis"]["epsilon"] = epsilon_flag;
  }
  if (!format_flag.empty()) {
    if (format_flag != "json" && format_flag != "csv") {
      throw dechist::usage_error("--format must be json or csv");
    }
    config.output_format = format_flag;
    config.document["output"]["format"] = format_flag;
  }
  if (!out_flag.empty()) {
    config.output_path = out_flag;
    config.document["output"]["path"] = out_flag;
  }

  const dechist::AnalysisReport report = dechist::run_analysis(config);

  std::string destination = config.output_path.empty()
                                ? default_output_name(config_arg, config.output_format)
                                : config.output_path;
  destination = resolve_output_path(destination);
  dechist::emit_report(report, config.output_format, destination);

  std::cout << "criterion:     " << dechist::to_string(report.verdict.criterion) << "\n"
            << "epsilon:       " << report.verdict.epsilon << "\n"
            << "histories:     " << report.labels.size() << "\n"
            << "max violation: " << report.verdict.max_violation << "\n"
            << "axioms:        " << (report.axioms.pass ? "pass" : "FAIL") << "\n"
            << "decoherent:    " << (report.verdict.decoherent ? "yes" : "no") << "\n";
  if (report.verdict.probabilities) {
    std::cout << "probabilities:\n";
    for (std::size_t a = 0; a < report.labels.size(); ++a) {
      std::cout << "  p" << report.labels[a] << " = " << (*report.verdict.probabilities)[a]
                << "\n";
    }
  }
  std::cout << "report:        " << destination << "\n";
  return report.verdict.decoherent ? kExitDecoherent : kExitNotDecoherent;
}

int run_validate(const std::string& config_arg) {
  const std::vector<std::string> violations = dechist::validate_config(read_config_text(config_arg));
  if (violations.empty()) {
    std::cout << "valid\n";
    return kExitOk;
  }
  std::cout << "invalid: " << violations.size() << " violation"
            << (violations.size() == 1 ? "" : "s") << "\n";
  for (const auto& s : violations) std::cout << "  " << s << "\n";
  return kExitError;
}

int run_list_models() {
  for (const auto& preset : dechist::model_zoo()) {
    std::cout << preset.name << "\n    " << preset.description << "\n";
  }
  return kExitOk;
}

int run_oracle(const std::string& config_arg) {
  dechist::AnalysisConfig config = dechist::load_config(read_config_text(config_arg));
  if (!config.lattice || !config.region_based) {
    throw dechist::usage_error(
        "oracle needs a lattice config with an instantaneous (regions or final_site) partition");
  }
  const double deviation =
      dechist::operator_equivalence_oracle(*config.lattice, config.region_sets);
  std::cout << "max |D_pathsum - D_operator| = " << deviation << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decoherent-histories workbench: decoherence functionals, criteria, probabilities"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string criterion_flag;
  double epsilon_flag = 0.0;
  std::string format_flag;
  std::string out_flag;

  CLI::App* analyze = app.add_subcommand("analyze", "run a config and emit a report");
  analyze->add_option("config", config_arg, "config file or preset name")->required();
  analyze->add_option("--criterion", criterion_flag, "medium | weak | lp");
  analyze->add_option("--epsilon", epsilon_flag, "decoherence threshold (> 0)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", format_flag, "json | csv");
  analyze->add_option("--out", out_flag, "report destination path");

  CLI::App* validate = app.add_subcommand("validate", "check a config against the schema");
  validate->add_option("config", config_arg, "config file or preset name")->required();

  app.add_subcommand("list-models", "list the bundled model presets");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the path-sum and operator forms on a lattice config");
  oracle->add_option("config", config_arg, "config file or preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      return run_analyze(config_arg, criterion_flag, epsilon_flag, format_flag, out_flag);
    }
    if (validate->parsed()) return run_validate(config_arg);
    if (oracle->parsed()) return run_oracle(config_arg);
    return run_list_models();
  } catch (const dechist::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
