#include "dechist/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dechist {

std::string to_string(Provenance p) {
  return p == Provenance::operator_form ? "operator-form" : "path-sum";
}

Criterion criterion_from_string(const std::string& name) {
  if (name == "medium") return Criterion::medium;
  if (name == "weak") return Criterion::weak;
  if (name == "lp" || name == "linear-positivity") return Criterion::linear_positivity;
  throw usage_error("unknown criterion '" + name + "' (expected medium, weak, or lp)");
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::medium: return "medium";
    case Criterion::weak: return "weak";
    case Criterion::linear_positivity: return "lp";
  }
  throw usage_error("unreachable criterion value");
}

DecoherenceMatrix::DecoherenceMatrix(Matrix entries, std::vector<std::string> labels,
                                     Provenance provenance, std::vector<HistoryIndex> indices)
    : entries_(std::move(entries)),
      labels_(std::move(labels)),
      provenance_(provenance),
      indices_(std::move(indices)) {
  if (entries_.rows() != entries_.cols()) {
    throw dimension_error("DecoherenceMatrix must be square");
  }
  if (static_cast<std::size_t>(entries_.rows()) != labels_.size()) {
    throw dimension_error("DecoherenceMatrix needs one label per history");
  }
  if (!indices_.empty() && indices_.size() != labels_.size()) {
    throw dimension_error("index tuples, when given, must match the label count");
  }
}

double DecoherenceMatrix::hermiticity_residual() const {
  return hermiticity_residual_of(entries_);
}

namespace {

Matrix functional_entries(const std::vector<Matrix>& ops, const Matrix& rho) {
  const std::size_t n = ops.size();
  Matrix d(n, n);
  std::vector<Matrix> c_rho;
  c_rho.reserve(n);
  for (const auto& c : ops) c_rho.push_back(c * rho);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // Tr(C_a rho C_b^dag) = sum_ij (C_a rho)_ij conj(C_b)_ij
      d(a, b) = (c_rho[a].array() * ops[b].array().conjugate()).sum();
    }
  }
  return d;
}

}  // namespace

DecoherenceMatrix decoherence_from_operators(const std::vector<Matrix>& ops,
                                             const std::vector<std::string>& labels,
                                             const DensityState& state, Provenance provenance,
                                             std::vector<HistoryIndex> indices) {
  if (ops.size() != labels.size()) {
    throw dimension_error("need one label per operator");
  }
  for (const auto& c : ops) {
    if (c.rows() != state.dimension() || c.cols() != state.dimension()) {
      throw dimension_error("operator dimension does not match the state");
    }
  }
  return DecoherenceMatrix(functional_entries(ops, state.matrix()), labels, provenance,
                           std::move(indices));
}

DecoherenceMatrix build_decoherence_functional(const HistoryGrid& g) {
  const double completeness = completeness_check(g);
  if (completeness > g.tolerances().structural_tol) {
    std::ostringstream os;
    os << "grid is incomplete: ||sum C - I||_max = " << completeness;
    throw structural_error(os.str());
  }
  const auto histories = enumerate_histories(g);
  std::vector<Matrix> ops;
  std::vector<std::string> labels;
  ops.reserve(histories.size());
  labels.reserve(histories.size());
  for (const auto& a : histories) {
    ops.push_back(class_operator(g, a));
    labels.push_back(a.to_label());
  }
  return decoherence_from_operators(ops, labels, g.state(), Provenance::operator_form, histories);
}

namespace {

AxiomReport matrix_axioms(const DecoherenceMatrix& d) {
  AxiomReport report;
  report.hermiticity_residual = d.hermiticity_residual();
  report.normalization_residual = std::abs(d.entries().sum() - Complex(1.0, 0.0));
  double min_diag = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < d.size(); ++a) {
    min_diag = std::min(min_diag, d.entries()(a, a).real());
  }
  report.positivity_min_diagonal = min_diag;
  return report;
}

void finalize_pass(AxiomReport& report, const Tolerances& tol) {
  report.pass = report.hermiticity_residual <= tol.structural_tol &&
                report.normalization_residual <= tol.structural_tol &&
                report.positivity_min_diagonal >= -tol.structural_tol &&
                report.superposition_residual <= tol.structural_tol;
}

}  // namespace

AxiomReport check_axioms(const DecoherenceMatrix& d, const Tolerances& tol) {
  AxiomReport report = matrix_axioms(d);
  report.superposition_residual = 0.0;
  finalize_pass(report, tol);
  return report;
}

AxiomReport check_axioms(const DecoherenceMatrix& d, const HistoryGrid& g,
                         std::span<const CoarseGrainingMap> extra_maps, const Tolerances& tol) {
  AxiomReport report = matrix_axioms(d);

  std::vector<CoarseGrainingMap> battery;
  battery.push_back(CoarseGrainingMap::identity(g));
  battery.push_back(CoarseGrainingMap::all_to_one(g));
  for (std::size_t slot = 0; slot < g.slot_count(); ++slot) {
    battery.push_back(CoarseGrainingMap::by_slot(g, slot));
  }
  battery.insert(battery.end(), extra_maps.begin(), extra_maps.end());

  double residual = 0.0;
  for (const auto& m : battery) {
    const DecoherenceMatrix summed = coarse_grain_D(d, m);
    const CoarseOperators coarse = coarse_grain_operators(g, m);
    const DecoherenceMatrix rebuilt =
        decoherence_from_operators(coarse.operators, coarse.labels, g.state(), d.provenance());
    residual = std::max(residual, max_abs(summed.entries() - rebuilt.entries()));
  }
  report.superposition_residual = residual;
  finalize_pass(report, tol);
  return report;
}

DecoherenceMatrix coarse_grain_D(const DecoherenceMatrix& d, const CoarseGrainingMap& m) {
  if (m.domain() != d.labels()) {
    std::ostringstream os;
    os << "coarse-graining map domain does not match the matrix labels;";
    std::vector<std::string> have(m.domain().begin(), m.domain().end());
    os << " unassigned labels:";
    bool any = false;
    for (const auto& label : d.labels()) {
      if (std::find(have.begin(), have.end(), label) == have.end()) {
        os << " " << label;
        any = true;
      }
    }
    if (!any) os << " (none; domains differ in order or have extras)";
    throw coverage_error(os.str());
  }
  const std::size_t cells = m.cell_count();
  Matrix out = Matrix::Zero(cells, cells);
  // double sum in domain order, cell by cell
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t b = 0; b < d.size(); ++b) {
      out(m.cell_of(a), m.cell_of(b)) += d.entries()(a, b);
    }
  }
  return DecoherenceMatrix(std::move(out), m.cell_labels(), d.provenance());
}

namespace {

DecoherenceVerdict verdict_from_candidates(const DecoherenceMatrix& d, Criterion criterion,
                                           double epsilon, double max_violation,
                                           std::vector<double> candidates) {
  DecoherenceVerdict v;
  v.criterion = criterion;
  v.epsilon = epsilon;
  v.max_violation = max_violation;
  v.decoherent = max_violation <= epsilon;
  v.labels = d.labels();
  if (v.decoherent) v.probabilities = std::move(candidates);
  return v;
}

}  // namespace

DecoherenceVerdict decide(const DecoherenceMatrix& d, Criterion criterion, double epsilon,
                          const Tolerances& tol) {
  if (!(epsilon > 0.0)) throw usage_error("epsilon must be > 0");
  const double herm = d.hermiticity_residual();
  if (herm > tol.structural_tol) {
    std::ostringstream os;
    os << "decoherence matrix is not Hermitian: residual " << herm;
    throw structural_error(os.str());
  }
  const std::size_t n = d.size();
  if (criterion == Criterion::linear_positivity) {
    std::vector<double> p(n);
    double min_p = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      p[a] = d.entries().row(a).sum().real();
      min_p = std::min(min_p, p[a]);
    }
    const double violation = std::max(0.0, -min_p);
    return verdict_from_candidates(d, criterion, epsilon, violation, std::move(p));
  }
  double violation = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const Complex off = d.entries()(a, b);
      const double magnitude =
          criterion == Criterion::medium ? std::abs(off) : std::abs(off.real());
      violation = std::max(violation, magnitude);
    }
  }
  std::vector<double> p(n);
  for (std::size_t a = 0; a < n; ++a) p[a] = d.entries()(a, a).real();
  return verdict_from_candidates(d, criterion, epsilon, violation, std::move(p));
}

DecoherenceVerdict linear_positivity_probs(const HistoryGrid& g, double epsilon) {
  if (!(epsilon > 0.0)) throw usage_error("epsilon must be > 0");
  const double completeness = completeness_check(g);
  if (completeness > g.tolerances().structural_tol) {
    std::ostringstream os;
    os << "grid is incomplete: ||sum C - I||_max = " << completeness;
    throw structural_error(os.str());
  }
  const auto histories = enumerate_histories(g);
  DecoherenceVerdict v;
  v.criterion = Criterion::linear_positivity;
  v.epsilon = epsilon;
  std::vector<double> p;
  p.reserve(histories.size());
  double min_p = std::numeric_limits<double>::infinity();
  for (const auto& a : histories) {
    v.labels.push_back(a.to_label());
    const double candidate = (class_operator(g, a) * g.state().matrix()).trace().real();
    p.push_back(candidate);
    min_p = std::min(min_p, candidate);
  }
  v.max_violation = std::max(0.0, -min_p);
  v.decoherent = v.max_violation <= epsilon;
  if (v.decoherent) v.probabilities = std::move(p);
  return v;
}

BranchRecordsResult branch_records(const HistoryGrid& g, double epsilon, const Tolerances& tol) {
  if (!(epsilon > 0.0)) throw usage_error("epsilon must be > 0");
  const Vector psi = g.state().pure_vector(tol);  // throws unsupported_state_error if mixed
  const auto histories = enumerate_histories(g);
  const std::size_t n = histories.size();

  std::vector<Vector> branches;
  branches.reserve(n);
  BranchRecordsResult result;
  for (const auto& a : histories) {
    result.labels.push_back(a.to_label());
    branches.push_back(class_operator(g, a) * psi);
  }

  // Normalized pairwise overlaps; branches at or below structural_tol in
  // norm are null and orthogonal by convention.
  double max_overlap = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double na = branches[a].norm();
    if (na <= tol.structural_tol) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double nb = branches[b].norm();
      if (nb <= tol.structural_tol) continue;
      const double overlap = std::abs(branches[a].dot(branches[b])) / (na * nb);
      max_overlap = std::max(max_overlap, overlap);
    }
  }
  result.max_overlap = max_overlap;
  if (max_overlap > epsilon) return result;  // refusal: records absent

  std::vector<Projector> records;
  records.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (branches[a].norm() <= tol.structural_tol) {
      records.push_back(Projector::zero(g.dimension(), "R" + histories[a].to_label()));
    } else {
      records.push_back(Projector::onto(branches[a], "R" + histories[a].to_label()));
    }
  }
  result.records = std::move(records);
  return result;
}

}  // namespace dechist
