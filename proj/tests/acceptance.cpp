// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Needs the CLI binary and the presets directory:
//   dechist_acceptance --cli <path> --presets <dir> --scratch <dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dechist/models.hpp"
#include "dechist/report.hpp"
#include "support/test_support.hpp"

using namespace dechist;
using namespace testsupport;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string cli;
  fs::path presets;
  fs::path scratch;
};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& info) {
    if (detail.empty()) detail = info;
  }
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared suite state: grids from criterion 1 feed criteria 2, 4, 6, 7.
struct Suite {
  std::vector<HistoryGrid> grids;
  std::vector<DecoherenceMatrix> functionals;
};

Outcome criterion1_axioms(Suite& suite) {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    suite.grids.push_back(random_grid(rng, 6, 3));
    const HistoryGrid& g = suite.grids.back();
    suite.functionals.push_back(build_decoherence_functional(g));
    const AxiomReport report = check_axioms(suite.functionals.back(), g);
    worst = std::max({worst, report.hermiticity_residual, report.normalization_residual,
                      report.superposition_residual, -report.positivity_min_diagonal});
    if (report.hermiticity_residual > 1e-10) outcome.fail("hermiticity > 1e-10");
    if (report.normalization_residual > 1e-10) outcome.fail("normalization > 1e-10");
    if (report.superposition_residual > 1e-10) outcome.fail("superposition > 1e-10");
    if (report.positivity_min_diagonal < -1e-10) outcome.fail("diagonal below -1e-10");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) outcome.fail("runtime " + std::to_string(elapsed) + "s >= 30s");
  std::ostringstream note;
  note << "100 grids, worst residual " << worst << ", " << elapsed << "s";
  outcome.note(note.str());
  return outcome;
}

Outcome criterion2_superposition(const Suite& suite) {
  Outcome outcome;
  std::mt19937_64 rng(515151);
  double worst = 0.0;
  for (std::size_t i = 0; i < suite.grids.size(); ++i) {
    const HistoryGrid& g = suite.grids[i];
    const DecoherenceMatrix& d = suite.functionals[i];
    for (int k = 0; k < 5; ++k) {
      const CoarseGrainingMap m = random_map(rng, g);
      const DecoherenceMatrix summed = coarse_grain_D(d, m);
      const CoarseOperators ops = coarse_grain_operators(g, m);
      const DecoherenceMatrix rebuilt =
          decoherence_from_operators(ops.operators, ops.labels, g.state(), d.provenance());
      worst = std::max(worst, max_abs(summed.entries() - rebuilt.entries()));
    }
  }
  if (worst > 1e-10) outcome.fail("max deviation " + std::to_string(worst));
  std::ostringstream note;
  note << "500 maps, max deviation " << worst;
  outcome.note(note.str());
  return outcome;
}

Outcome criterion3_canonical(const Suite&) {
  Outcome outcome;
  const HistoryGrid g = xz_grid();
  const DecoherenceMatrix d = build_decoherence_functional(g);
  // brute-force oracle rebuild (independent matrix exponential and assembly)
  const Matrix oracle = oracle_decoherence(g);
  if (max_abs(d.entries() - oracle) > 1e-12) outcome.fail("does not match the oracle");
  for (int a = 0; a < 4; ++a) {
    if (std::abs(d.entries()(a, a).real() - 0.25) > 1e-12) outcome.fail("diagonal != 0.250");
  }
  // (+,0) vs (-,0): lexicographic positions 0 and 2
  if (std::abs(std::abs(d.entries()(0, 2)) - 0.25) > 1e-12) {
    outcome.fail("|D((+,0),(-,0))| != 0.250");
  }
  const DecoherenceVerdict fine = decide(d, Criterion::medium, 1e-6);
  if (fine.decoherent) outcome.fail("fine-grained set wrongly decoherent");
  const DecoherenceMatrix coarse = coarse_grain_D(d, CoarseGrainingMap::by_slot(g, 1));
  const DecoherenceVerdict v = decide(coarse, Criterion::medium, 1e-8);
  if (!v.decoherent) outcome.fail("final-z coarse graining fails to decohere");
  if (!v.probabilities || std::abs((*v.probabilities)[0] - 1.0) > 1e-12 ||
      std::abs((*v.probabilities)[1] - 0.0) > 1e-12) {
    outcome.fail("coarse probabilities != {1, 0}");
  }
  outcome.note("matches the 2x2 oracle; fine interference 0.25; coarse p = {1, 0}");
  return outcome;
}

Outcome criterion4_born(const Suite&) {
  Outcome outcome;
  std::mt19937_64 rng(626262);
  double worst_offdiag = 0.0, worst_prob = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 5);
    const ProjectionFamily family = random_family(rng, dim);
    const DensityState rho(random_density(rng, dim));
    std::uniform_real_distribution<double> time_dist(0.1, 2.0);
    HistoryGrid g({time_dist(rng)}, {family}, Hamiltonian(random_hermitian(rng, dim)), rho);
    const DecoherenceMatrix d = build_decoherence_functional(g);
    for (std::size_t a = 0; a < d.size(); ++a) {
      for (std::size_t b = 0; b < d.size(); ++b) {
        if (a != b) worst_offdiag = std::max(worst_offdiag, std::abs(d.entries()(a, b)));
      }
    }
    const DecoherenceVerdict v = decide(d, Criterion::medium, 1e-8);
    if (!v.decoherent || !v.probabilities) {
      outcome.fail("single-time set not decoherent");
      continue;
    }
    for (std::size_t k = 0; k < family.size(); ++k) {
      // Born rule with the Heisenberg projector at the grid's single time
      const Projector moved = heisenberg_projector(family.member(k), g.hamiltonian(), g.times()[0]);
      const double born = (moved.matrix() * rho.matrix()).trace().real();
      worst_prob = std::max(worst_prob, std::abs((*v.probabilities)[k] - born));
    }
  }
  if (worst_offdiag > 1e-12) outcome.fail("off-diagonal above 1e-12");
  if (worst_prob > 1e-12) outcome.fail("probability deviates from Tr(P rho)");
  std::ostringstream note;
  note << "50 families, max off-diagonal " << worst_offdiag << ", max Born deviation "
       << worst_prob;
  outcome.note(note.str());
  return outcome;
}

Outcome criterion5_equivalence() {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(737373);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int sites = 2 + static_cast<int>(rng() % 4);   // M <= 5
    const int slices = 1 + static_cast<int>(rng() % 4);  // N <= 4
    std::uniform_real_distribution<double> dt_dist(0.2, 0.8);
    LatticeModel model(Hamiltonian(random_hermitian(rng, sites)), slices, dt_dist(rng),
                       DensityState(random_density(rng, sites)));
    // random instantaneous regions, capped so the class count stays small
    RegionSets regions;
    std::uint64_t classes = 1;
    for (int slice = 0; slice <= slices; ++slice) {
      if (rng() % 2 == 0) continue;
      std::uniform_int_distribution<int> cell_dist(1, std::min(sites, 3));
      const int cells = cell_dist(rng);
      if (classes * static_cast<std::uint64_t>(cells) > 256) break;
      classes *= static_cast<std::uint64_t>(cells);
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(cells));
      for (int site = 0; site < sites; ++site) {
        if (site < cells) {
          groups[static_cast<std::size_t>(site)].push_back(site);
        } else {
          std::uniform_int_distribution<int> pick(0, cells - 1);
          groups[static_cast<std::size_t>(pick(rng))].push_back(site);
        }
      }
      regions.emplace(slice, std::move(groups));
    }
    worst = std::max(worst, operator_equivalence_oracle(model, regions));
  }
  const double elapsed = seconds_since(start);
  if (worst > 1e-9) outcome.fail("max deviation " + std::to_string(worst));
  if (elapsed >= 60.0) outcome.fail("runtime " + std::to_string(elapsed) + "s >= 60s");
  std::ostringstream note;
  note << "50 lattices, max deviation " << worst << ", " << elapsed << "s";
  outcome.note(note.str());
  return outcome;
}

Outcome criterion6_hierarchy(const Suite& suite) {
  Outcome outcome;
  double worst_rowsum = 0.0, worst_agreement = 0.0;
  int decoherent_sets = 0;

  // additional exactly-decoherent grids so the check has real subjects
  std::vector<HistoryGrid> extra;
  std::mt19937_64 rng(848484);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    const ProjectionFamily family = ProjectionFamily::from_basis(random_unitary(rng, dim));
    extra.push_back(HistoryGrid({0.6, 1.7}, {family, family}, Hamiltonian::zero(dim),
                                DensityState(random_density(rng, dim))));
  }

  auto inspect = [&](const HistoryGrid& g, const DecoherenceMatrix& d) {
    const auto histories = enumerate_histories(g);
    for (std::size_t a = 0; a < histories.size(); ++a) {
      const Complex row_sum = d.entries().row(a).sum();
      const Complex trace = (class_operator(g, histories[a]) * g.state().matrix()).trace();
      worst_rowsum = std::max(worst_rowsum, std::abs(row_sum - trace));
    }
    const DecoherenceVerdict medium = decide(d, Criterion::medium, 1e-8);
    if (!medium.decoherent) return;
    ++decoherent_sets;
    const DecoherenceVerdict weak = decide(d, Criterion::weak, 1e-8);
    const DecoherenceVerdict lp_matrix = decide(d, Criterion::linear_positivity, 1e-8);
    const DecoherenceVerdict lp_direct = linear_positivity_probs(g);
    if (!weak.decoherent) outcome.fail("a medium set fails weak");
    if (!lp_matrix.decoherent || !lp_direct.decoherent) outcome.fail("a medium set fails LP");
    for (std::size_t a = 0; a < d.size(); ++a) {
      worst_agreement = std::max(
          worst_agreement, std::abs((*weak.probabilities)[a] - (*medium.probabilities)[a]));
      worst_agreement = std::max(worst_agreement, std::abs((*lp_matrix.probabilities)[a] -
                                                           (*medium.probabilities)[a]));
      worst_agreement = std::max(worst_agreement, std::abs((*lp_direct.probabilities)[a] -
                                                           (*medium.probabilities)[a]));
    }
  };

  for (std::size_t i = 0; i < suite.grids.size(); ++i) inspect(suite.grids[i], suite.functionals[i]);
  for (const HistoryGrid& g : extra) inspect(g, build_decoherence_functional(g));

  if (decoherent_sets == 0) outcome.fail("no medium-decoherent sets appeared");
  if (worst_rowsum > 1e-10) outcome.fail("row-sum identity violated");
  if (worst_agreement > 1e-10) outcome.fail("criterion probabilities disagree");
  std::ostringstream note;
  note << decoherent_sets << " decoherent sets, row-sum residual " << worst_rowsum
       << ", probability spread " << worst_agreement;
  outcome.note(note.str());
  return outcome;
}

Outcome criterion7_records() {
  Outcome outcome;
  std::mt19937_64 rng(959595);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    // medium-decoherent pure-state sets: a repeated random basis family
    // under trivial dynamics, or a random single-time family
    const ProjectionFamily family = ProjectionFamily::from_basis(random_unitary(rng, dim));
    Vector psi = random_complex(rng, dim, 1);
    psi.normalize();
    const bool repeated = trial % 2 == 0;
    const HistoryGrid g =
        repeated ? HistoryGrid({0.5, 1.4}, {family, family}, Hamiltonian::zero(dim),
                               DensityState::pure(psi))
                 : HistoryGrid({0.9}, {random_family(rng, dim)},
                               Hamiltonian(random_hermitian(rng, dim)), DensityState::pure(psi));
    const DecoherenceVerdict medium =
        decide(build_decoherence_functional(g), Criterion::medium, 1e-8);
    if (!medium.decoherent) continue;
    const BranchRecordsResult result = branch_records(g, 1e-8);
    if (!result.records) {
      outcome.fail("records refused on a medium-decoherent pure set");
      continue;
    }
    ++checked;
    const auto histories = enumerate_histories(g);
    const Vector state = g.state().pure_vector();
    for (std::size_t a = 0; a < histories.size(); ++a) {
      for (std::size_t b = 0; b < histories.size(); ++b) {
        const Vector branch = class_operator(g, histories[b]) * state;
        const Vector projected = (*result.records)[a].matrix() * branch;
        const double deviation =
            (a == b) ? (projected - branch).norm() : projected.norm();
        worst = std::max(worst, deviation);
      }
    }
  }
  if (checked == 0) outcome.fail("no medium-decoherent pure sets were generated");
  if (worst > 1e-9) outcome.fail("record guarantee violated: " + std::to_string(worst));

  // the canonical interference example must refuse, with the normalized
  // overlap 0.25 / (0.5 * 0.5) = 1 from the 2x2 oracle
  const BranchRecordsResult refusal = branch_records(xz_grid(), 1e-8);
  if (refusal.records) outcome.fail("canonical set wrongly produced records");
  const double oracle_overlap = 0.25 / (0.5 * 0.5);
  if (std::abs(refusal.max_overlap - oracle_overlap) > 1e-12) {
    outcome.fail("refusal overlap != 0.25/(0.5*0.5)");
  }
  std::ostringstream note;
  note << checked << " record sets, worst guarantee deviation " << worst
       << "; canonical refusal overlap " << refusal.max_overlap;
  outcome.note(note.str());
  return outcome;
}

int run_cli(const Options& options, const std::string& args, const fs::path& stdout_path) {
  const std::string command =
      "\"" + options.cli + "\" " + args + " > \"" + stdout_path.string() + "\" 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion8_cli(const Options& options) {
  Outcome outcome;
  fs::create_directories(options.scratch);

  const struct {
    const char* name;
    bool decoherent;
  } presets[] = {
      {"qubit-xz", false},
      {"qubit-trivial", true},
      {"lattice-hop-2", true},
      {"lattice-ring-4", false},
  };
  for (const auto& preset : presets) {
    const fs::path config = options.presets / (std::string(preset.name) + ".json");
    const fs::path report_path = options.scratch / (std::string(preset.name) + ".report.json");
    const fs::path log = options.scratch / (std::string(preset.name) + ".log");
    const int code = run_cli(options,
                             "analyze \"" + config.string() + "\" --out \"" +
                                 report_path.string() + "\"",
                             log);
    const int expected = preset.decoherent ? 0 : 2;
    if (code != expected) {
      outcome.fail(std::string(preset.name) + " exited " + std::to_string(code) + ", expected " +
                   std::to_string(expected));
      continue;
    }
    // byte-exact JSON round trip through the parsed representation
    const std::string emitted = read_file(report_path);
    try {
      const AnalysisReport reloaded = AnalysisReport::from_json(json::parse(emitted));
      if (reloaded.to_json_text() != emitted) {
        outcome.fail(std::string(preset.name) + " report fails the byte round trip");
      }
      if (!reloaded.axioms.pass) outcome.fail(std::string(preset.name) + " axioms fail");
      if (reloaded.verdict.decoherent != preset.decoherent) {
        outcome.fail(std::string(preset.name) + " verdict mismatch in the report");
      }
    } catch (const std::exception& e) {
      outcome.fail(std::string(preset.name) + " report unreadable: " + e.what());
    }
  }

  // error exit code: an invalid config must yield 1
  const fs::path broken = options.scratch / "broken.json";
  std::ofstream(broken) << "{\"model\": {\"kind\": \"qutrit\"}}";
  const int error_code =
      run_cli(options, "analyze \"" + broken.string() + "\"", options.scratch / "broken.log");
  if (error_code != 1) {
    outcome.fail("invalid config exited " + std::to_string(error_code) + ", expected 1");
  }
  const int validate_code =
      run_cli(options, "validate \"" + broken.string() + "\"", options.scratch / "validate.log");
  if (validate_code != 1) outcome.fail("validate on a broken config must exit 1");
  const int list_code = run_cli(options, "list-models", options.scratch / "list.log");
  if (list_code != 0) outcome.fail("list-models must exit 0");
  const int oracle_code =
      run_cli(options, "oracle lattice-ring-4", options.scratch / "oracle.log");
  if (oracle_code != 0) outcome.fail("oracle on lattice-ring-4 must exit 0");

  outcome.note("four presets, exit codes 0/2/1, byte-exact reports");
  return outcome;
}

}  // namespace

int main(int argc, char** argv) {
  Options options;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") options.cli = argv[i + 1];
    if (flag == "--presets") options.presets = argv[i + 1];
    if (flag == "--scratch") options.scratch = argv[i + 1];
  }
  if (options.cli.empty() || options.presets.empty() || options.scratch.empty()) {
    std::cerr << "usage: dechist_acceptance --cli <binary> --presets <dir> --scratch <dir>\n";
    return 1;
  }

  Suite suite;
  struct Row {
    std::string title;
    Outcome outcome;
  };
  std::vector<Row> rows;
  rows.push_back({"1 axiom suite (100 random grids, residuals <= 1e-10, < 30 s)",
                  criterion1_axioms(suite)});
  rows.push_back({"2 superposition equality (5 random maps per grid, <= 1e-10)",
                  criterion2_superposition(suite)});
  rows.push_back({"3 canonical interference example (0.250 +/- 1e-12, coarse p = {1, 0})",
                  criterion3_canonical(suite)});
  rows.push_back({"4 single-time Born rule (diagonal to 1e-12, p = Tr(P rho))",
                  criterion4_born(suite)});
  rows.push_back({"5 path-sum/operator equivalence (50 lattices, <= 1e-9, < 60 s)",
                  criterion5_equivalence()});
  rows.push_back({"6 criterion hierarchy and row-sum identity (<= 1e-10)",
                  criterion6_hierarchy(suite)});
  rows.push_back({"7 branch records (guarantee to 1e-9; canonical refusal)",
                  criterion7_records()});
  rows.push_back({"8 end-to-end CLI (presets, exit codes, byte-exact reports)",
                  criterion8_cli(options)});

  bool all_pass = true;
  for (const auto& row : rows) {
    all_pass = all_pass && row.outcome.pass;
    std::cout << (row.outcome.pass ? "[PASS] " : "[FAIL] ") << "criterion " << row.title;
    if (!row.outcome.detail.empty()) std::cout << "  -- " << row.outcome.detail;
    std::cout << "\n";
  }
  std::cout << (all_pass ? "acceptance: all criteria pass\n" : "acceptance: FAILURES above\n");
  return all_pass ? 0 : 1;
}
