#include "dechist/histories.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dechist {

std::string HistoryIndex::to_label() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (j) os << ",";
    os << alphas[j];
  }
  os << ")";
  return os.str();
}

HistoryGrid::HistoryGrid(std::vector<double> times, std::vector<ProjectionFamily> families,
                         Hamiltonian h, DensityState state, Tolerances tol)
    : HistoryGrid(std::move(times), std::move(families), std::move(h), std::move(state), tol,
                  true) {}

HistoryGrid HistoryGrid::with_unchecked_families(std::vector<double> times,
                                                 std::vector<ProjectionFamily> families,
                                                 Hamiltonian h, DensityState state,
                                                 Tolerances tol) {
  return HistoryGrid(std::move(times), std::move(families), std::move(h), std::move(state), tol,
                     false);
}

HistoryGrid::HistoryGrid(std::vector<double> times, std::vector<ProjectionFamily> families,
                         Hamiltonian h, DensityState state, Tolerances tol, bool check_families)
    : times_(std::move(times)),
      families_(std::move(families)),
      hamiltonian_(std::move(h)),
      state_(std::move(state)),
      tol_(tol) {
  tol_.require_valid();
  if (times_.empty()) throw dimension_error("HistoryGrid needs at least one time");
  if (times_.size() != families_.size()) {
    throw dimension_error("HistoryGrid needs exactly one family per time");
  }
  for (std::size_t j = 1; j < times_.size(); ++j) {
    if (!(times_[j] > times_[j - 1])) {
      std::ostringstream os;
      os << "times must be strictly increasing; t[" << j - 1 << "] = " << times_[j - 1]
         << " >= t[" << j << "] = " << times_[j];
      throw structural_error(os.str());
    }
  }
  const int dim = hamiltonian_.dimension();
  if (state_.dimension() != dim) {
    throw dimension_error("state dimension does not match Hamiltonian dimension");
  }
  for (std::size_t j = 0; j < families_.size(); ++j) {
    if (families_[j].dimension() != dim) {
      std::ostringstream os;
      os << "family " << j << " dimension " << families_[j].dimension()
         << " does not match grid dimension " << dim;
      throw dimension_error(os.str());
    }
    if (check_families) {
      const FamilyReport report = validate_family(families_[j], tol_);
      if (!report.pass) {
        std::ostringstream os;
        os << "family " << j << " fails validation: completeness residual "
           << report.completeness_residual << ", exclusivity residual "
           << report.exclusivity_residual;
        throw structural_error(os.str());
      }
    }
  }
  heisenberg_.reserve(families_.size());
  for (std::size_t j = 0; j < families_.size(); ++j) {
    const Matrix u = evolution_operator(hamiltonian_, times_[j], tol_);
    std::vector<Matrix> slot;
    slot.reserve(families_[j].size());
    for (const auto& p : families_[j].members()) {
      slot.push_back(u.adjoint() * p.matrix() * u);
    }
    heisenberg_.push_back(std::move(slot));
  }
}

std::uint64_t HistoryGrid::history_count() const {
  std::uint64_t count = 1;
  for (const auto& f : families_) {
    count *= static_cast<std::uint64_t>(f.size());
    if (count > kMaxEnumeration) return count;  // saturating enough for the cap check
  }
  return count;
}

bool HistoryGrid::valid_index(const HistoryIndex& a) const {
  if (a.alphas.size() != families_.size()) return false;
  for (std::size_t j = 0; j < families_.size(); ++j) {
    if (a.alphas[j] < 0 || a.alphas[j] >= static_cast<int>(families_[j].size())) return false;
  }
  return true;
}

const std::vector<Matrix>& HistoryGrid::heisenberg_family(std::size_t j) const {
  return heisenberg_.at(j);
}

std::vector<HistoryIndex> enumerate_histories(const HistoryGrid& g) {
  const std::uint64_t count = g.history_count();
  if (count > kMaxEnumeration) {
    std::ostringstream os;
    os << "history enumeration of size " << count << " exceeds the cap of " << kMaxEnumeration;
    throw enumeration_overflow(os.str());
  }
  std::vector<HistoryIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  const std::size_t n = g.slot_count();
  HistoryIndex current{std::vector<int>(n, 0)};
  // odometer with the last slot fastest: lexicographic order
  while (true) {
    out.push_back(current);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++current.alphas[j] < static_cast<int>(g.family(j).size())) break;
      current.alphas[j] = 0;
      if (j == 0) return out;
    }
  }
}

Matrix class_operator(const HistoryGrid& g, const HistoryIndex& a) {
  if (!g.valid_index(a)) {
    std::ostringstream os;
    os << "history index " << a.to_label() << " is not valid for this grid";
    throw index_error(os.str());
  }
  const std::size_t n = g.slot_count();
  Matrix c = g.heisenberg_family(n - 1).at(static_cast<std::size_t>(a.alphas[n - 1]));
  for (std::size_t j = n - 1; j > 0; --j) {
    c = c * g.heisenberg_family(j - 1).at(static_cast<std::size_t>(a.alphas[j - 1]));
  }
  return c;
}

double completeness_check(const HistoryGrid& g) {
  const int dim = g.dimension();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& a : enumerate_histories(g)) {
    sum += class_operator(g, a);
  }
  return max_abs(sum - Matrix::Identity(dim, dim));
}

CoarseGrainingMap CoarseGrainingMap::from_labels(std::vector<std::string> domain,
                                                 const std::vector<std::string>& assigned) {
  if (domain.size() != assigned.size()) {
    throw coverage_error("assignment must cover the domain exactly");
  }
  if (assigned.empty()) throw coverage_error("coarse graining needs a nonempty domain");
  CoarseGrainingMap m;
  m.domain_ = std::move(domain);
  m.cell_of_.reserve(assigned.size());
  std::map<std::string, int> seen;
  for (const auto& label : assigned) {
    auto it = seen.find(label);
    if (it == seen.end()) {
      it = seen.emplace(label, static_cast<int>(m.cell_labels_.size())).first;
      m.cell_labels_.push_back(label);
    }
    m.cell_of_.push_back(it->second);
  }
  return m;
}

CoarseGrainingMap CoarseGrainingMap::from_function(
    const HistoryGrid& g, const std::function<std::string(const HistoryIndex&)>& f) {
  std::vector<std::string> domain;
  std::vector<std::string> assigned;
  for (const auto& a : enumerate_histories(g)) {
    domain.push_back(a.to_label());
    assigned.push_back(f(a));
  }
  return from_labels(std::move(domain), assigned);
}

CoarseGrainingMap CoarseGrainingMap::from_cells(
    const HistoryGrid& g,
    const std::vector<std::pair<std::string, std::vector<HistoryIndex>>>& cells) {
  std::map<std::string, std::string> assignment;  // index label -> bar label
  std::vector<std::string> problems;
  for (const auto& [bar, members] : cells) {
    for (const auto& a : members) {
      if (!g.valid_index(a)) {
        problems.push_back("index " + a.to_label() + " is not valid for the grid");
        continue;
      }
      auto [it, inserted] = assignment.emplace(a.to_label(), bar);
      if (!inserted && it->second != bar) {
        problems.push_back("index " + a.to_label() + " assigned to both '" + it->second +
                           "' and '" + bar + "'");
      }
    }
  }
  std::vector<std::string> domain;
  std::vector<std::string> assigned;
  for (const auto& a : enumerate_histories(g)) {
    const std::string label = a.to_label();
    auto it = assignment.find(label);
    if (it == assignment.end()) {
      problems.push_back("index " + label + " is unassigned");
      continue;
    }
    domain.push_back(label);
    assigned.push_back(it->second);
  }
  if (!problems.empty()) {
    std::ostringstream os;
    os << "coarse-graining map does not partition the history set:";
    for (const auto& p : problems) os << "\n  " << p;
    throw coverage_error(os.str());
  }
  return from_labels(std::move(domain), assigned);
}

CoarseGrainingMap CoarseGrainingMap::identity(const HistoryGrid& g) {
  return from_function(g, [](const HistoryIndex& a) { return a.to_label(); });
}

CoarseGrainingMap CoarseGrainingMap::identity(std::vector<std::string> domain) {
  const std::vector<std::string> assigned = domain;
  return from_labels(std::move(domain), assigned);
}

CoarseGrainingMap CoarseGrainingMap::all_to_one(const HistoryGrid& g, const std::string& label) {
  return from_function(g, [&label](const HistoryIndex&) { return label; });
}

CoarseGrainingMap CoarseGrainingMap::all_to_one(std::vector<std::string> domain,
                                                const std::string& label) {
  const std::vector<std::string> assigned(domain.size(), label);
  return from_labels(std::move(domain), assigned);
}

CoarseGrainingMap CoarseGrainingMap::by_slot(const HistoryGrid& g, std::size_t slot) {
  if (slot >= g.slot_count()) throw index_error("slot index out of range");
  return from_function(g, [slot](const HistoryIndex& a) {
    return "(" + std::to_string(a.alphas[slot]) + ")";
  });
}

std::vector<std::vector<std::size_t>> CoarseGrainingMap::preimages() const {
  std::vector<std::vector<std::size_t>> out(cell_labels_.size());
  for (std::size_t pos = 0; pos < cell_of_.size(); ++pos) {
    out[static_cast<std::size_t>(cell_of_[pos])].push_back(pos);
  }
  return out;
}

CoarseGrainingMap CoarseGrainingMap::then(const std::map<std::string, std::string>& relabel) const {
  std::vector<std::string> assigned;
  assigned.reserve(domain_.size());
  for (std::size_t pos = 0; pos < domain_.size(); ++pos) {
    const std::string& cell = label_of(pos);
    auto it = relabel.find(cell);
    if (it == relabel.end()) {
      throw coverage_error("composition relabelling is missing cell '" + cell + "'");
    }
    assigned.push_back(it->second);
  }
  std::vector<std::string> domain = domain_;
  return from_labels(std::move(domain), assigned);
}

namespace {

void require_map_matches_grid(const HistoryGrid& g, const CoarseGrainingMap& m) {
  const auto histories = enumerate_histories(g);
  if (m.domain().size() == histories.size()) {
    bool match = true;
    for (std::size_t i = 0; i < histories.size(); ++i) {
      if (m.domain()[i] != histories[i].to_label()) {
        match = false;
        break;
      }
    }
    if (match) return;
  }
  std::ostringstream os;
  os << "coarse-graining map domain does not cover the grid's history enumeration;";
  std::vector<std::string> missing;
  std::map<std::string, bool> have;
  for (const auto& d : m.domain()) have[d] = true;
  for (const auto& a : histories) {
    if (!have.count(a.to_label())) missing.push_back(a.to_label());
  }
  os << " unassigned indices:";
  for (const auto& s : missing) os << " " << s;
  throw coverage_error(os.str());
}

}  // namespace

CoarseOperators coarse_grain_operators(const HistoryGrid& g, const CoarseGrainingMap& m) {
  require_map_matches_grid(g, m);
  const auto histories = enumerate_histories(g);
  const int dim = g.dimension();
  CoarseOperators out;
  out.labels = m.cell_labels();
  out.operators.assign(out.labels.size(), Matrix::Zero(dim, dim));
  // lexicographic summation order within each cell
  for (std::size_t pos = 0; pos < histories.size(); ++pos) {
    out.operators[static_cast<std::size_t>(m.cell_of(pos))] += class_operator(g, histories[pos]);
  }
  return out;
}

}  // namespace dechist
