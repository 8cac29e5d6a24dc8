#include "dechist/pathsum.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dechist {

LatticeModel::LatticeModel(Hamiltonian h, int slice_count, double dt, DensityState initial_state,
                           Tolerances tol)
    : hamiltonian_(std::move(h)),
      slice_count_(slice_count),
      dt_(dt),
      initial_state_(std::move(initial_state)),
      tol_(tol) {
  tol_.require_valid();
  if (slice_count_ < 0) throw dimension_error("slice count must be >= 0");
  if (!(dt_ > 0.0)) throw structural_error("time step dt must be > 0");
  if (initial_state_.dimension() != hamiltonian_.dimension()) {
    throw dimension_error("initial state dimension does not match the Hamiltonian");
  }
  propagator_ = evolution_operator(hamiltonian_, dt_, tol_);
  const double unitarity =
      max_abs(propagator_.adjoint() * propagator_ - Matrix::Identity(sites(), sites()));
  if (unitarity > tol_.structural_tol) {
    std::ostringstream os;
    os << "propagator is not unitary: ||K^dag K - I||_max = " << unitarity;
    throw structural_error(os.str());
  }
}

std::uint64_t LatticeModel::path_count() const {
  std::uint64_t count = 1;
  for (int k = 0; k <= slice_count_; ++k) {
    count *= static_cast<std::uint64_t>(sites());
    if (count > kMaxEnumeration) return count;
  }
  return count;
}

PathPartition::PathPartition(std::vector<std::string> labels,
                             std::vector<std::int32_t> class_of_rank,
                             std::vector<HistoryIndex> indices)
    : labels_(std::move(labels)),
      class_of_rank_(std::move(class_of_rank)),
      indices_(std::move(indices)) {
  if (labels_.empty()) throw partition_error("partition needs at least one class");
  if (!indices_.empty() && indices_.size() != labels_.size()) {
    throw dimension_error("index tuples, when given, must match the class count");
  }
  for (const auto c : class_of_rank_) {
    if (c < 0 || static_cast<std::size_t>(c) >= labels_.size()) {
      throw partition_error("class id out of range");
    }
  }
}

Complex path_amplitude(const LatticeModel& m, const FinePath& p) {
  if (static_cast<int>(p.sites_at_slices.size()) != m.slice_count() + 1) {
    std::ostringstream os;
    os << "path has " << p.sites_at_slices.size() << " slices, expected " << m.slice_count() + 1;
    throw dimension_error(os.str());
  }
  for (const int q : p.sites_at_slices) {
    if (q < 0 || q >= m.sites()) {
      std::ostringstream os;
      os << "site index " << q << " out of range [0, " << m.sites() << ")";
      throw index_error(os.str());
    }
  }
  Complex amplitude(1.0, 0.0);
  for (int k = 0; k < m.slice_count(); ++k) {
    amplitude *= m.propagator()(p.sites_at_slices[static_cast<std::size_t>(k) + 1],
                                p.sites_at_slices[static_cast<std::size_t>(k)]);
  }
  return amplitude;
}

namespace {

void require_enumerable(const LatticeModel& m) {
  const std::uint64_t count = m.path_count();
  if (count > kMaxEnumeration) {
    std::ostringstream os;
    os << "path enumeration of size " << count << " exceeds the cap of " << kMaxEnumeration;
    throw enumeration_overflow(os.str());
  }
}

/// Visit all paths in lexicographic order (slice 0 most significant).
template <typename Fn>
void for_each_path(const LatticeModel& m, Fn&& fn) {
  require_enumerable(m);
  const int slots = m.slice_count() + 1;
  std::vector<int> sites(static_cast<std::size_t>(slots), 0);
  std::uint64_t rank = 0;
  while (true) {
    fn(rank, sites);
    ++rank;
    int j = slots;
    while (j > 0) {
      --j;
      if (++sites[static_cast<std::size_t>(j)] < m.sites()) break;
      sites[static_cast<std::size_t>(j)] = 0;
      if (j == 0) return;
    }
  }
}

}  // namespace

std::vector<FinePath> enumerate_paths(const LatticeModel& m) {
  std::vector<FinePath> out;
  out.reserve(static_cast<std::size_t>(m.path_count()));
  for_each_path(m, [&out](std::uint64_t, const std::vector<int>& sites) {
    out.push_back(FinePath{sites});
  });
  return out;
}

namespace {

void validate_region_sets(const LatticeModel& m, const RegionSets& region_sets) {
  for (const auto& [slice, groups] : region_sets) {
    if (slice < 0 || slice > m.slice_count()) {
      std::ostringstream os;
      os << "constrained slice " << slice << " out of range [0, " << m.slice_count() << "]";
      throw partition_error(os.str());
    }
    std::set<int> seen;
    for (const auto& group : groups) {
      for (const int site : group) {
        if (site < 0 || site >= m.sites()) {
          std::ostringstream os;
          os << "slice " << slice << ": site " << site << " out of range [0, " << m.sites() << ")";
          throw partition_error(os.str());
        }
        if (!seen.insert(site).second) {
          std::ostringstream os;
          os << "slice " << slice << ": site " << site << " appears in more than one region";
          throw partition_error(os.str());
        }
      }
    }
    if (static_cast<int>(seen.size()) != m.sites()) {
      std::ostringstream os;
      os << "slice " << slice << ": regions cover " << seen.size() << " of " << m.sites()
         << " sites";
      throw partition_error(os.str());
    }
  }
}

}  // namespace

PathPartition region_partition(const LatticeModel& m, const RegionSets& region_sets) {
  validate_region_sets(m, region_sets);
  // region index per (slice, site)
  std::map<int, std::vector<int>> region_of_site;
  for (const auto& [slice, groups] : region_sets) {
    std::vector<int> lookup(static_cast<std::size_t>(m.sites()), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const int site : groups[g]) lookup[static_cast<std::size_t>(site)] = static_cast<int>(g);
    }
    region_of_site.emplace(slice, std::move(lookup));
  }

  // Enumerate the class tuples lexicographically so path-sum matrices line
  // up with the equivalent history grid's enumeration.
  std::vector<HistoryIndex> tuples;
  {
    std::vector<std::size_t> sizes;
    for (const auto& [slice, groups] : region_sets) sizes.push_back(groups.size());
    HistoryIndex current{std::vector<int>(sizes.size(), 0)};
    if (sizes.empty()) {
      tuples.push_back(current);
    } else {
      while (true) {
        tuples.push_back(current);
        std::size_t j = sizes.size();
        bool done = false;
        while (j > 0) {
          --j;
          if (++current.alphas[j] < static_cast<int>(sizes[j])) break;
          current.alphas[j] = 0;
          if (j == 0) done = true;
        }
        if (done) break;
      }
    }
  }
  std::map<std::string, std::int32_t> class_id;
  std::vector<std::string> labels;
  for (const auto& t : tuples) {
    class_id.emplace(t.to_label(), static_cast<std::int32_t>(labels.size()));
    labels.push_back(t.to_label());
  }

  std::vector<std::int32_t> class_of_rank(static_cast<std::size_t>(m.path_count()));
  for_each_path(m, [&](std::uint64_t rank, const std::vector<int>& sites) {
    HistoryIndex tuple;
    tuple.alphas.reserve(region_of_site.size());
    for (const auto& [slice, lookup] : region_of_site) {
      tuple.alphas.push_back(lookup[static_cast<std::size_t>(sites[static_cast<std::size_t>(slice)])]);
    }
    class_of_rank[static_cast<std::size_t>(rank)] = class_id.at(tuple.to_label());
  });
  return PathPartition(std::move(labels), std::move(class_of_rank), std::move(tuples));
}

PathPartition predicate_partition(const LatticeModel& m,
                                  const std::function<std::string(const FinePath&)>& labeler) {
  std::vector<std::string> labels;
  std::map<std::string, std::int32_t> class_id;
  std::vector<std::int32_t> class_of_rank(static_cast<std::size_t>(m.path_count()));
  for_each_path(m, [&](std::uint64_t rank, const std::vector<int>& sites) {
    const std::string label = labeler(FinePath{sites});
    auto it = class_id.find(label);
    if (it == class_id.end()) {
      it = class_id.emplace(label, static_cast<std::int32_t>(labels.size())).first;
      labels.push_back(label);
    }
    class_of_rank[static_cast<std::size_t>(rank)] = it->second;
  });
  return PathPartition(std::move(labels), std::move(class_of_rank));
}

DecoherenceMatrix build_D_pathsum(const LatticeModel& m, const PathPartition& partition) {
  require_enumerable(m);
  if (partition.path_count() != m.path_count()) {
    throw dimension_error("partition was built for a different path count");
  }
  const int sites = m.sites();
  const std::size_t classes = partition.class_count();

  // Per-class transfer sums T_c(q_N, q_0) = sum of A[q] over the class's
  // paths from q_0 to q_N, accumulated in lexicographic path order. The
  // double path sum then contracts against rho with the final-point
  // identification: D(c, c') = Tr(T_c rho T_c'^dag).
  std::vector<Matrix> transfer(classes, Matrix::Zero(sites, sites));
  const Matrix& k = m.propagator();
  const int steps = m.slice_count();
  for_each_path(m, [&](std::uint64_t rank, const std::vector<int>& path_sites) {
    Complex amplitude(1.0, 0.0);
    for (int s = 0; s < steps; ++s) {
      amplitude *= k(path_sites[static_cast<std::size_t>(s) + 1],
                     path_sites[static_cast<std::size_t>(s)]);
    }
    transfer[static_cast<std::size_t>(partition.class_of(rank))](
        path_sites.back(), path_sites.front()) += amplitude;
  });

  Matrix d(classes, classes);
  const Matrix& rho = m.initial_state().matrix();
  for (std::size_t a = 0; a < classes; ++a) {
    const Matrix t_rho = transfer[a] * rho;
    for (std::size_t b = 0; b < classes; ++b) {
      d(a, b) = (t_rho.array() * transfer[b].array().conjugate()).sum();
    }
  }
  return DecoherenceMatrix(std::move(d), partition.labels(), Provenance::path_sum,
                           partition.indices());
}

PathPartition coarsen(const PathPartition& partition, const CoarseGrainingMap& m) {
  if (m.domain() != partition.labels()) {
    throw coverage_error("coarse-graining map domain does not match the partition labels");
  }
  std::vector<std::int32_t> class_of_rank(static_cast<std::size_t>(partition.path_count()));
  for (std::uint64_t rank = 0; rank < partition.path_count(); ++rank) {
    class_of_rank[static_cast<std::size_t>(rank)] =
        m.cell_of(static_cast<std::size_t>(partition.class_of(rank)));
  }
  return PathPartition(m.cell_labels(), std::move(class_of_rank));
}

HistoryGrid lattice_history_grid(const LatticeModel& m, const RegionSets& region_sets) {
  validate_region_sets(m, region_sets);
  const int sites = m.sites();
  std::vector<double> times;
  std::vector<ProjectionFamily> families;
  for (const auto& [slice, groups] : region_sets) {
    times.push_back(m.dt() * slice);
    std::vector<Projector> members;
    members.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Matrix p = Matrix::Zero(sites, sites);
      for (const int site : groups[g]) p(site, site) = Complex(1.0, 0.0);
      members.emplace_back(std::move(p), "R" + std::to_string(g), m.tolerances());
    }
    families.emplace_back(std::move(members));
  }
  if (times.empty()) {
    times.push_back(0.0);
    families.push_back(ProjectionFamily({Projector::identity(sites)}));
  }
  return HistoryGrid(std::move(times), std::move(families), m.hamiltonian(), m.initial_state(),
                     m.tolerances());
}

double operator_equivalence_oracle(const LatticeModel& m, const RegionSets& region_sets) {
  const PathPartition partition = region_partition(m, region_sets);
  const DecoherenceMatrix from_paths = build_D_pathsum(m, partition);
  const HistoryGrid grid = lattice_history_grid(m, region_sets);
  const DecoherenceMatrix from_operators = build_decoherence_functional(grid);
  if (from_paths.size() != from_operators.size()) {
    throw dimension_error("path-sum and operator matrices have different history counts");
  }
  return max_abs(from_paths.entries() - from_operators.entries());
}

double pathsum_superposition_residual(const LatticeModel& m, const PathPartition& partition,
                                      std::span<const CoarseGrainingMap> maps) {
  const DecoherenceMatrix fine = build_D_pathsum(m, partition);
  double residual = 0.0;
  for (const auto& map : maps) {
    const DecoherenceMatrix summed = coarse_grain_D(fine, map);
    const DecoherenceMatrix rebuilt = build_D_pathsum(m, coarsen(partition, map));
    residual = std::max(residual, max_abs(summed.entries() - rebuilt.entries()));
  }
  return residual;
}

}  // namespace dechist
