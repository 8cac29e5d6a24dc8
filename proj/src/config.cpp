#include "dechist/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

using nlohmann::json;

namespace dechist {

namespace {

struct Violations {
  std::vector<std::string> list;
  void add(const std::string& path, const std::string& what) { list.push_back(path + " " + what); }
  bool ok() const { return list.empty(); }
};

bool require_object(const json& j, const std::string& path, Violations& v) {
  if (!j.is_object()) {
    v.add(path, "must be an object");
    return false;
  }
  return true;
}

std::optional<double> get_number(const json& j, const std::string& path, Violations& v) {
  if (!j.is_number()) {
    v.add(path, "must be a number");
    return std::nullopt;
  }
  return j.get<double>();
}

std::optional<int> get_int(const json& j, const std::string& path, Violations& v) {
  if (!j.is_number_integer()) {
    v.add(path, "must be an integer");
    return std::nullopt;
  }
  return j.get<int>();
}

std::optional<std::string> get_string(const json& j, const std::string& path, Violations& v) {
  if (!j.is_string()) {
    v.add(path, "must be a string");
    return std::nullopt;
  }
  return j.get<std::string>();
}

std::optional<Matrix> parse_complex_matrix(const json& j, const std::string& path, Violations& v) {
  if (!j.is_array() || j.empty()) {
    v.add(path, "must be a nonempty array of rows");
    return std::nullopt;
  }
  const std::size_t rows = j.size();
  Matrix m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != rows) {
      v.add(path, "must be square: row " + std::to_string(r) + " has the wrong length");
      return std::nullopt;
    }
    for (std::size_t c = 0; c < rows; ++c) {
      const json& cell = row[c];
      if (cell.is_number()) {
        m(r, c) = Complex(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number()) {
        m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
      } else {
        v.add(path, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                        ") must be a number or an [re, im] pair");
        return std::nullopt;
      }
    }
  }
  return m;
}

/// Density matrix of a single-qubit ket, with exact half entries so that
/// downstream probabilities like 1/2 and 1/4 come out bit-exact.
Matrix qubit_ket_density(char c) {
  Matrix m(2, 2);
  switch (c) {
    case '0': m << 1, 0, 0, 0; break;
    case '1': m << 0, 0, 0, 1; break;
    case '+': m << 0.5, 0.5, 0.5, 0.5; break;
    case '-': m << 0.5, -0.5, -0.5, 0.5; break;
    default: throw usage_error("unknown ket symbol");
  }
  return m;
}

Matrix pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw usage_error("unknown Pauli axis");
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int model_dimension(const std::string& kind, int sites) {
  if (kind == "qubit") return 2;
  if (kind == "spin-pair") return 4;
  return sites;
}

std::optional<Matrix> parse_hamiltonian(const json& j, const std::string& kind, int dim,
                                        Violations& v) {
  const std::string path = "model.hamiltonian";
  if (!require_object(j, path, v)) return std::nullopt;
  if (j.contains("zero")) {
    return Matrix::Zero(dim, dim);
  }
  if (j.contains("pauli")) {
    if (kind != "qubit") {
      v.add(path + ".pauli", "only applies to qubit models");
      return std::nullopt;
    }
    const json& p = j["pauli"];
    if (!require_object(p, path + ".pauli", v)) return std::nullopt;
    Matrix h = Matrix::Zero(2, 2);
    for (const char axis : {'x', 'y', 'z'}) {
      const std::string key(1, axis);
      if (!p.contains(key)) continue;
      auto coeff = get_number(p[key], path + ".pauli." + key, v);
      if (!coeff) return std::nullopt;
      h += *coeff * pauli(axis);
    }
    return h;
  }
  if (j.contains("heisenberg")) {
    if (kind != "spin-pair") {
      v.add(path + ".heisenberg", "only applies to spin-pair models");
      return std::nullopt;
    }
    auto coupling = get_number(j["heisenberg"], path + ".heisenberg", v);
    if (!coupling) return std::nullopt;
    Matrix h = Matrix::Zero(4, 4);
    for (const char axis : {'x', 'y', 'z'}) {
      h += *coupling * kron(pauli(axis), pauli(axis));
    }
    return h;
  }
  if (j.contains("hopping")) {
    if (kind != "lattice-particle") {
      v.add(path + ".hopping", "only applies to lattice-particle models");
      return std::nullopt;
    }
    auto amplitude = get_number(j["hopping"], path + ".hopping", v);
    if (!amplitude) return std::nullopt;
    std::string topology = "chain";
    if (j.contains("topology")) {
      auto t = get_string(j["topology"], path + ".topology", v);
      if (!t) return std::nullopt;
      topology = *t;
      if (topology != "ring" && topology != "chain") {
        v.add(path + ".topology", "must be 'ring' or 'chain'");
        return std::nullopt;
      }
    }
    Matrix h = Matrix::Zero(dim, dim);
    std::set<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < dim; ++i) bonds.insert({i, i + 1});
    if (topology == "ring" && dim > 1) bonds.insert({0, dim - 1});
    for (const auto& [i, jj] : bonds) {
      h(i, jj) += *amplitude;
      h(jj, i) += *amplitude;
    }
    return h;
  }
  if (j.contains("matrix")) {
    auto m = parse_complex_matrix(j["matrix"], path + ".matrix", v);
    if (!m) return std::nullopt;
    if (m->rows() != dim) {
      v.add(path + ".matrix", "has dimension " + std::to_string(m->rows()) + ", expected " +
                                  std::to_string(dim));
      return std::nullopt;
    }
    return m;
  }
  v.add(path, "must give one of: zero, pauli, heisenberg, hopping, matrix");
  return std::nullopt;
}

std::optional<Matrix> parse_initial_state(const json& j, const std::string& kind, int dim,
                                          Violations& v) {
  const std::string path = "model.initial_state";
  if (!require_object(j, path, v)) return std::nullopt;
  if (j.contains("ket")) {
    auto ket = get_string(j["ket"], path + ".ket", v);
    if (!ket) return std::nullopt;
    if (kind == "qubit") {
      if (ket->size() != 1 || std::string("01+-").find((*ket)[0]) == std::string::npos) {
        v.add(path + ".ket", "must be one of 0, 1, +, - for qubit models");
        return std::nullopt;
      }
      return qubit_ket_density((*ket)[0]);
    }
    if (kind == "spin-pair") {
      if (*ket == "phi+" || *ket == "phi-" || *ket == "psi+" || *ket == "psi-") {
        const double sign = ket->back() == '+' ? 1.0 : -1.0;
        Matrix rho = Matrix::Zero(4, 4);
        const int first = ((*ket)[0] == 'p' && (*ket)[1] == 'h') ? 0 : 1;  // phi: |00>, psi: |01>
        const int second = first == 0 ? 3 : 2;
        rho(first, first) = rho(second, second) = Complex(0.5, 0.0);
        rho(first, second) = rho(second, first) = Complex(sign * 0.5, 0.0);
        return rho;
      }
      if (ket->size() == 2 && std::string("01+-").find((*ket)[0]) != std::string::npos &&
          std::string("01+-").find((*ket)[1]) != std::string::npos) {
        return kron(qubit_ket_density((*ket)[0]), qubit_ket_density((*ket)[1]));
      }
      v.add(path + ".ket", "must be two of 0/1/+/- or one of phi+, phi-, psi+, psi-");
      return std::nullopt;
    }
    v.add(path + ".ket", "does not apply to lattice-particle models (use site)");
    return std::nullopt;
  }
  if (j.contains("site")) {
    if (kind != "lattice-particle") {
      v.add(path + ".site", "only applies to lattice-particle models");
      return std::nullopt;
    }
    auto site = get_int(j["site"], path + ".site", v);
    if (!site) return std::nullopt;
    if (*site < 0 || *site >= dim) {
      v.add(path + ".site", "must lie in [0, " + std::to_string(dim) + ")");
      return std::nullopt;
    }
    Matrix rho = Matrix::Zero(dim, dim);
    rho(*site, *site) = Complex(1.0, 0.0);
    return rho;
  }
  if (j.contains("maximally_mixed")) {
    return Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
  }
  if (j.contains("matrix")) {
    auto m = parse_complex_matrix(j["matrix"], path + ".matrix", v);
    if (!m) return std::nullopt;
    if (m->rows() != dim) {
      v.add(path + ".matrix", "has dimension " + std::to_string(m->rows()) + ", expected " +
                                  std::to_string(dim));
      return std::nullopt;
    }
    return m;
  }
  v.add(path, "must give one of: ket, site, maximally_mixed, matrix");
  return std::nullopt;
}

std::optional<ProjectionFamily> parse_family(const json& j, const std::string& path,
                                             const std::string& kind, int dim, Violations& v) {
  if (!require_object(j, path, v)) return std::nullopt;
  if (j.contains("basis")) {
    auto basis = get_string(j["basis"], path + ".basis", v);
    if (!basis) return std::nullopt;
    if (*basis == "z" || *basis == "site" || *basis == "zz") {
      if ((*basis == "z" && kind != "qubit") || (*basis == "zz" && kind != "spin-pair")) {
        v.add(path + ".basis", "'" + *basis + "' does not apply to " + kind + " models");
        return std::nullopt;
      }
      std::vector<Projector> members;
      for (int k = 0; k < dim; ++k) {
        Matrix p = Matrix::Zero(dim, dim);
        p(k, k) = Complex(1.0, 0.0);
        members.emplace_back(std::move(p), *basis + std::to_string(k));
      }
      return ProjectionFamily(std::move(members));
    }
    if (*basis == "x" || *basis == "y") {
      if (kind != "qubit") {
        v.add(path + ".basis", "'" + *basis + "' only applies to qubit models");
        return std::nullopt;
      }
      Matrix plus(2, 2), minus(2, 2);
      if (*basis == "x") {
        plus << 0.5, 0.5, 0.5, 0.5;
        minus << 0.5, -0.5, -0.5, 0.5;
      } else {
        plus << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
        minus << Complex(0.5, 0), Complex(0, 0.5), Complex(0, -0.5), Complex(0.5, 0);
      }
      std::vector<Projector> members;
      members.push_back(Projector(plus, *basis + "+"));
      members.push_back(Projector(minus, *basis + "-"));
      return ProjectionFamily(std::move(members));
    }
    v.add(path + ".basis", "must be one of z, x, y, zz, site");
    return std::nullopt;
  }
  if (j.contains("regions")) {
    const json& regions = j["regions"];
    if (!regions.is_array() || regions.empty()) {
      v.add(path + ".regions", "must be a nonempty array of index groups");
      return std::nullopt;
    }
    std::set<int> seen;
    std::vector<Projector> members;
    for (std::size_t g = 0; g < regions.size(); ++g) {
      const json& group = regions[g];
      if (!group.is_array()) {
        v.add(path + ".regions", "group " + std::to_string(g) + " must be an array");
        return std::nullopt;
      }
      Matrix p = Matrix::Zero(dim, dim);
      for (const json& idx : group) {
        auto k = get_int(idx, path + ".regions", v);
        if (!k) return std::nullopt;
        if (*k < 0 || *k >= dim) {
          v.add(path + ".regions", "index " + std::to_string(*k) + " out of range [0, " +
                                       std::to_string(dim) + ")");
          return std::nullopt;
        }
        if (!seen.insert(*k).second) {
          v.add(path + ".regions", "index " + std::to_string(*k) + " appears twice");
          return std::nullopt;
        }
        p(*k, *k) = Complex(1.0, 0.0);
      }
      members.emplace_back(std::move(p), "R" + std::to_string(g));
    }
    if (static_cast<int>(seen.size()) != dim) {
      v.add(path + ".regions", "must cover every basis index (got " +
                                   std::to_string(seen.size()) + " of " + std::to_string(dim) +
                                   ")");
      return std::nullopt;
    }
    return ProjectionFamily(std::move(members));
  }
  if (j.contains("projectors")) {
    const json& list = j["projectors"];
    if (!list.is_array() || list.empty()) {
      v.add(path + ".projectors", "must be a nonempty array of matrices");
      return std::nullopt;
    }
    std::vector<Projector> members;
    for (std::size_t k = 0; k < list.size(); ++k) {
      auto m = parse_complex_matrix(list[k], path + ".projectors[" + std::to_string(k) + "]", v);
      if (!m) return std::nullopt;
      if (m->rows() != dim) {
        v.add(path + ".projectors[" + std::to_string(k) + "]", "has the wrong dimension");
        return std::nullopt;
      }
      members.emplace_back(std::move(*m), "P" + std::to_string(k));
    }
    return ProjectionFamily(std::move(members));
  }
  v.add(path, "must give one of: basis, regions, projectors");
  return std::nullopt;
}

}  // namespace

AnalysisConfig load_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what(), {e.what()});
  }

  Violations v;
  if (!doc.is_object()) {
    throw config_error("config must be a JSON object", {"(root) must be an object"});
  }

  // ---- model ----
  std::string kind;
  int dim = 0;
  std::optional<Matrix> h_matrix;
  std::optional<Matrix> rho_matrix;
  if (!doc.contains("model")) {
    v.add("model", "is required");
  } else if (require_object(doc["model"], "model", v)) {
    const json& model = doc["model"];
    if (!model.contains("kind")) {
      v.add("model.kind", "is required");
    } else if (auto k = get_string(model["kind"], "model.kind", v)) {
      kind = *k;
      if (kind != "qubit" && kind != "spin-pair" && kind != "lattice-particle") {
        v.add("model.kind", "must be one of qubit, spin-pair, lattice-particle");
        kind.clear();
      }
    }
    int sites = 0;
    if (!kind.empty()) {
      if (kind == "lattice-particle") {
        if (!model.contains("sites")) {
          v.add("model.sites", "is required for lattice-particle models");
        } else if (auto s = get_int(model["sites"], "model.sites", v)) {
          if (*s < 2 || *s > kMaxDimension) {
            v.add("model.sites", "must lie in [2, " + std::to_string(kMaxDimension) + "]");
          } else {
            sites = *s;
          }
        }
      } else if (model.contains("sites")) {
        v.add("model.sites", "only applies to lattice-particle models");
      }
    }
    if (!kind.empty() && (kind != "lattice-particle" || sites > 0)) {
      dim = model_dimension(kind, sites);
      if (!model.contains("hamiltonian")) {
        v.add("model.hamiltonian", "is required");
      } else {
        h_matrix = parse_hamiltonian(model["hamiltonian"], kind, dim, v);
      }
      if (!model.contains("initial_state")) {
        v.add("model.initial_state", "is required");
      } else {
        rho_matrix = parse_initial_state(model["initial_state"], kind, dim, v);
      }
    }
  }

  // ---- histories xor paths ----
  const bool has_histories = doc.contains("histories");
  const bool has_paths = doc.contains("paths");
  if (has_histories == has_paths) {
    v.add("(root)", "must give exactly one of histories, paths");
  }
  if (has_paths && !kind.empty() && kind != "lattice-particle") {
    v.add("paths", "requires a lattice-particle model");
  }

  std::vector<double> times;
  std::vector<ProjectionFamily> families;
  json coarse_spec;
  if (has_histories && !has_paths && require_object(doc["histories"], "histories", v)) {
    const json& hist = doc["histories"];
    if (!hist.contains("times") || !hist["times"].is_array() || hist["times"].empty()) {
      v.add("histories.times", "must be a nonempty array of times");
    } else {
      for (std::size_t i = 0; i < hist["times"].size(); ++i) {
        auto t = get_number(hist["times"][i], "histories.times[" + std::to_string(i) + "]", v);
        if (t) times.push_back(*t);
      }
      for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
          v.add("histories.times", "must be strictly increasing");
          break;
        }
      }
    }
    if (!hist.contains("families") || !hist["families"].is_array()) {
      v.add("histories.families", "must be an array with one family per time");
    } else if (hist["families"].size() != hist["times"].size()) {
      v.add("histories.families", "must have the same length as histories.times");
    } else if (dim > 0) {
      for (std::size_t i = 0; i < hist["families"].size(); ++i) {
        auto fam = parse_family(hist["families"][i], "histories.families[" + std::to_string(i) + "]",
                                kind, dim, v);
        if (fam) families.push_back(std::move(*fam));
      }
    }
    if (hist.contains("coarse_grain")) coarse_spec = hist["coarse_grain"];
  }

  int slices = -1;
  double dt = 0.0;
  json partition_spec;
  if (has_paths && !has_histories && require_object(doc["paths"], "paths", v)) {
    const json& paths = doc["paths"];
    if (!paths.contains("slices")) {
      v.add("paths.slices", "is required");
    } else if (auto s = get_int(paths["slices"], "paths.slices", v)) {
      if (*s < 0) {
        v.add("paths.slices", "must be >= 0");
      } else {
        slices = *s;
      }
    }
    if (!paths.contains("dt")) {
      v.add("paths.dt", "is required");
    } else if (auto d = get_number(paths["dt"], "paths.dt", v)) {
      if (!(*d > 0.0)) {
        v.add("paths.dt", "must be > 0");
      } else {
        dt = *d;
      }
    }
    if (!paths.contains("partition")) {
      v.add("paths.partition", "is required");
    } else {
      partition_spec = paths["partition"];
      if (!partition_spec.is_object() ||
          (!partition_spec.contains("regions") && !partition_spec.contains("final_site"))) {
        v.add("paths.partition", "must give one of: regions, final_site");
      }
    }
  }

  // ---- analysis ----
  Criterion criterion = Criterion::medium;
  double epsilon = 1e-8;
  if (doc.contains("analysis") && require_object(doc["analysis"], "analysis", v)) {
    const json& analysis = doc["analysis"];
    if (analysis.contains("criterion")) {
      if (auto name = get_string(analysis["criterion"], "analysis.criterion", v)) {
        try {
          criterion = criterion_from_string(*name);
        } catch (const usage_error&) {
          v.add("analysis.criterion", "must be one of medium, weak, lp");
        }
      }
    }
    if (analysis.contains("epsilon")) {
      if (auto e = get_number(analysis["epsilon"], "analysis.epsilon", v)) {
        if (!(*e > 0.0)) {
          v.add("analysis.epsilon", "must be > 0");
        } else {
          epsilon = *e;
        }
      }
    }
  }

  // ---- output ----
  std::string output_format = "json";
  std::string output_path;
  if (doc.contains("output") && require_object(doc["output"], "output", v)) {
    const json& output = doc["output"];
    if (output.contains("format")) {
      if (auto f = get_string(output["format"], "output.format", v)) {
        if (*f != "json" && *f != "csv") {
          v.add("output.format", "must be 'json' or 'csv'");
        } else {
          output_format = *f;
        }
      }
    }
    if (output.contains("path")) {
      if (auto p = get_string(output["path"], "output.path", v)) output_path = *p;
    }
  }

  if (!v.ok()) {
    std::ostringstream os;
    os << "config has " << v.list.size() << " schema violation"
       << (v.list.size() == 1 ? "" : "s") << ":";
    for (const auto& s : v.list) os << "\n  " << s;
    throw config_error(os.str(), v.list);
  }

  // ---- build model objects; structural failures carry config context ----
  AnalysisConfig out;
  out.model_kind = kind;
  out.criterion = criterion;
  out.epsilon = epsilon;
  out.output_format = output_format;
  out.output_path = output_path;

  if (kind == "spin-pair") {
    out.space.emplace(4, std::vector<std::string>{"00", "01", "10", "11"});
  } else {
    out.space.emplace(dim);  // basis labels "0", "1", ...
  }

  Hamiltonian h = [&] {
    try {
      return Hamiltonian(*h_matrix);
    } catch (const error& e) {
      throw config_error(std::string("model.hamiltonian: ") + e.what(),
                         {std::string("model.hamiltonian ") + e.what()});
    }
  }();
  DensityState rho = [&] {
    try {
      return DensityState(*rho_matrix);
    } catch (const error& e) {
      throw config_error(std::string("model.initial_state: ") + e.what(),
                         {std::string("model.initial_state ") + e.what()});
    }
  }();

  if (has_histories) {
    try {
      out.grid.emplace(times, families, h, rho);
    } catch (const error& e) {
      throw config_error(std::string("histories: ") + e.what(),
                         {std::string("histories ") + e.what()});
    }
    if (!coarse_spec.is_null()) {
      if (coarse_spec.contains("by_slot")) {
        Violations cv;
        auto slot = get_int(coarse_spec["by_slot"], "histories.coarse_grain.by_slot", cv);
        if (!slot || *slot < 0 || static_cast<std::size_t>(*slot) >= times.size()) {
          throw config_error("histories.coarse_grain.by_slot must name a time slot",
                             {"histories.coarse_grain.by_slot must lie in [0, " +
                              std::to_string(times.size()) + ")"});
        }
        out.coarse_grain = CoarseGrainingMap::by_slot(*out.grid, static_cast<std::size_t>(*slot));
      } else if (coarse_spec.contains("cells")) {
        const json& cells = coarse_spec["cells"];
        if (!cells.is_object() || cells.empty()) {
          throw config_error("histories.coarse_grain.cells must be a nonempty object",
                             {"histories.coarse_grain.cells must map labels to index lists"});
        }
        std::vector<std::pair<std::string, std::vector<HistoryIndex>>> parsed;
        for (const auto& [label, list] : cells.items()) {
          std::vector<HistoryIndex> members;
          if (!list.is_array()) {
            throw config_error("histories.coarse_grain.cells entries must be arrays",
                               {"histories.coarse_grain.cells." + label + " must be an array"});
          }
          for (const json& tuple : list) {
            HistoryIndex a;
            for (const json& x : tuple) a.alphas.push_back(x.get<int>());
            members.push_back(std::move(a));
          }
          parsed.emplace_back(label, std::move(members));
        }
        out.coarse_grain = CoarseGrainingMap::from_cells(*out.grid, parsed);
      } else {
        throw config_error("histories.coarse_grain must give one of: by_slot, cells",
                           {"histories.coarse_grain must give one of: by_slot, cells"});
      }
    }
  } else {
    try {
      out.lattice.emplace(h, slices, dt, rho);
    } catch (const error& e) {
      throw config_error(std::string("paths: ") + e.what(),
                         {std::string("paths ") + e.what()});
    }
    if (partition_spec.contains("final_site")) {
      RegionSets regions;
      std::vector<std::vector<int>> groups;
      for (int s = 0; s < dim; ++s) groups.push_back({s});
      regions.emplace(slices, std::move(groups));
      out.region_sets = regions;
      out.region_based = true;
      out.partition = region_partition(*out.lattice, regions);
    } else {
      const json& regions_spec = partition_spec["regions"];
      if (!regions_spec.is_object() || regions_spec.empty()) {
        throw config_error("paths.partition.regions must be a nonempty object",
                           {"paths.partition.regions must map slice indices to site groups"});
      }
      RegionSets regions;
      for (const auto& [key, groups_json] : regions_spec.items()) {
        int slice = 0;
        try {
          std::size_t consumed = 0;
          slice = std::stoi(key, &consumed);
          if (consumed != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw config_error("paths.partition.regions keys must be slice indices",
                             {"paths.partition.regions key '" + key + "' is not an integer"});
        }
        std::vector<std::vector<int>> groups;
        if (!groups_json.is_array()) {
          throw config_error("paths.partition.regions values must be arrays of site groups",
                             {"paths.partition.regions." + key + " must be an array"});
        }
        for (const json& group : groups_json) {
          std::vector<int> sites_group;
          for (const json& s : group) sites_group.push_back(s.get<int>());
          groups.push_back(std::move(sites_group));
        }
        regions.emplace(slice, std::move(groups));
      }
      out.region_sets = regions;
      out.region_based = true;
      try {
        out.partition = region_partition(*out.lattice, regions);
      } catch (const error& e) {
        throw config_error(std::string("paths.partition.regions: ") + e.what(),
                           {std::string("paths.partition.regions ") + e.what()});
      }
    }
  }

  // normalized echo with resolved defaults
  json echo = doc;
  echo["analysis"]["criterion"] = to_string(criterion);
  echo["analysis"]["epsilon"] = epsilon;
  echo["output"]["format"] = output_format;
  if (!output_path.empty()) echo["output"]["path"] = output_path;
  out.document = std::move(echo);
  return out;
}

std::vector<std::string> validate_config(const std::string& text) {
  try {
    load_config(text);
    return {};
  } catch (const config_error& e) {
    return e.violations();
  } catch (const error& e) {
    return {std::string("(build) ") + e.what()};
  }
}

}  // namespace dechist
